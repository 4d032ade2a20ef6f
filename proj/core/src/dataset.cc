/*
 * Copyright 2026 The securedl Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "securedl/dataset.h"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <numeric>
#include <random>

#include "securedl/errors.h"
#include "securedl/rng.h"

namespace securedl {
namespace {

constexpr std::uint32_t kImageMagic = 0x00000803;
constexpr std::uint32_t kLabelMagic = 0x00000801;

std::vector<std::uint8_t> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t BigEndian32(const std::vector<std::uint8_t>& buf,
                          std::size_t offset, const std::string& path) {
  if (offset + 4 > buf.size()) {
    throw ParseError("'" + path + "': truncated header", offset);
  }
  return (std::uint32_t{buf[offset]} << 24) |
         (std::uint32_t{buf[offset + 1]} << 16) |
         (std::uint32_t{buf[offset + 2]} << 8) | std::uint32_t{buf[offset + 3]};
}

void PutBigEndian32(std::ofstream& out, std::uint32_t v) {
  const char bytes[4] = {static_cast<char>(v >> 24), static_cast<char>(v >> 16),
                         static_cast<char>(v >> 8), static_cast<char>(v)};
  out.write(bytes, 4);
}

}  // namespace

void Dataset::Validate() const {
  if (num_classes < 1) throw ConfigError("dataset: no classes");
  if (features.size() != labels.size() * feature_dim) {
    throw ConfigError("dataset: feature matrix does not match label count");
  }
  for (int l : labels) {
    if (l < 0 || l >= num_classes) {
      throw ConfigError("dataset: label " + std::to_string(l) +
                        " outside [0, " + std::to_string(num_classes) + ")");
    }
  }
}

Dataset Dataset::Subset(std::span<const std::size_t> indices) const {
  Dataset out;
  out.feature_dim = feature_dim;
  out.num_classes = num_classes;
  out.features.reserve(indices.size() * feature_dim);
  out.labels.reserve(indices.size());
  for (std::size_t i : indices) {
    const auto r = row(i);
    out.features.insert(out.features.end(), r.begin(), r.end());
    out.labels.push_back(labels[i]);
  }
  return out;
}

std::vector<float> ReadIdxImages(const std::string& path, std::size_t* count,
                                 std::size_t* rows, std::size_t* cols) {
  const std::vector<std::uint8_t> buf = ReadFile(path);
  const std::uint32_t magic = BigEndian32(buf, 0, path);
  if (magic != kImageMagic) {
    throw ParseError("'" + path + "': bad image magic", 0);
  }
  const std::size_t n = BigEndian32(buf, 4, path);
  const std::size_t r = BigEndian32(buf, 8, path);
  const std::size_t c = BigEndian32(buf, 12, path);
  // Header dimensions are untrusted; the product can exceed 64 bits.
  const unsigned __int128 wide = static_cast<unsigned __int128>(n) * r * c;
  if (wide > buf.size() - 16) {
    throw ParseError("'" + path + "': truncated pixel data", buf.size());
  }
  const auto payload = static_cast<std::size_t>(wide);
  std::vector<float> out(payload);
  for (std::size_t i = 0; i < payload; ++i) {
    out[i] = static_cast<float>(buf[16 + i]) / 255.0f;
  }
  *count = n;
  *rows = r;
  *cols = c;
  return out;
}

std::vector<int> ReadIdxLabels(const std::string& path) {
  const std::vector<std::uint8_t> buf = ReadFile(path);
  const std::uint32_t magic = BigEndian32(buf, 0, path);
  if (magic != kLabelMagic) {
    throw ParseError("'" + path + "': bad label magic", 0);
  }
  const std::size_t n = BigEndian32(buf, 4, path);
  if (buf.size() < 8 + n) {
    throw ParseError("'" + path + "': truncated label data", buf.size());
  }
  return std::vector<int>(buf.begin() + 8, buf.begin() + 8 + static_cast<long>(n));
}

Dataset LoadIdx(const std::string& images_path, const std::string& labels_path,
                int num_classes) {
  std::size_t n = 0, r = 0, c = 0;
  Dataset out;
  out.features = ReadIdxImages(images_path, &n, &r, &c);
  out.labels = ReadIdxLabels(labels_path);
  if (out.labels.size() != n) {
    throw ConfigError("IDX image/label counts differ: " + std::to_string(n) +
                      " vs " + std::to_string(out.labels.size()));
  }
  out.feature_dim = r * c;
  out.num_classes = num_classes;
  out.Validate();
  return out;
}

void WriteIdxImages(const std::string& path,
                    std::span<const std::uint8_t> pixels, std::size_t count,
                    std::size_t rows, std::size_t cols) {
  if (pixels.size() != count * rows * cols) {
    throw ConfigError("IDX writer: pixel count mismatch");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  PutBigEndian32(out, kImageMagic);
  PutBigEndian32(out, static_cast<std::uint32_t>(count));
  PutBigEndian32(out, static_cast<std::uint32_t>(rows));
  PutBigEndian32(out, static_cast<std::uint32_t>(cols));
  out.write(reinterpret_cast<const char*>(pixels.data()),
            static_cast<std::streamsize>(pixels.size()));
}

void WriteIdxLabels(const std::string& path,
                    std::span<const std::uint8_t> labels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  PutBigEndian32(out, kLabelMagic);
  PutBigEndian32(out, static_cast<std::uint32_t>(labels.size()));
  out.write(reinterpret_cast<const char*>(labels.data()),
            static_cast<std::streamsize>(labels.size()));
}

Dataset SynthBlobs(std::size_t n_samples, std::size_t dim, int num_classes,
                   std::uint64_t seed, double separation) {
  if (dim == 0 || num_classes < 1) {
    throw ConfigError("synth blobs: need dim >= 1 and at least one class");
  }
  Rng center_rng = DeriveRng(seed, {Tag(Stream::kDataset), 0});
  Rng sample_rng = DeriveRng(seed, {Tag(Stream::kDataset), 1});
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> centers(static_cast<std::size_t>(num_classes) * dim);
  for (double& c : centers) c = separation * gauss(center_rng);

  Dataset out;
  out.feature_dim = dim;
  out.num_classes = num_classes;
  out.features.resize(n_samples * dim);
  out.labels.resize(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const int label = static_cast<int>(i % static_cast<std::size_t>(num_classes));
    out.labels[i] = label;
    const double* center = centers.data() + static_cast<std::size_t>(label) * dim;
    for (std::size_t k = 0; k < dim; ++k) {
      out.features[i * dim + k] =
          static_cast<float>(center[k] + gauss(sample_rng));
    }
  }
  return out;
}

std::vector<Dataset> IidPartition(const Dataset& data, int shards,
                                  std::uint64_t seed) {
  if (shards < 1) throw ConfigError("partition: need at least one shard");
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng = DeriveRng(seed, {Tag(Stream::kPartition)});
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Dataset> out;
  out.reserve(static_cast<std::size_t>(shards));
  const std::size_t base = data.size() / static_cast<std::size_t>(shards);
  const std::size_t extra = data.size() % static_cast<std::size_t>(shards);
  std::size_t begin = 0;
  for (int s = 0; s < shards; ++s) {
    const std::size_t len =
        base + (static_cast<std::size_t>(s) < extra ? 1 : 0);
    out.push_back(data.Subset(std::span(order).subspan(begin, len)));
    begin += len;
  }
  return out;
}

Dataset RandomSubset(const Dataset& data, std::size_t count,
                     std::uint64_t seed) {
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng = DeriveRng(seed, {Tag(Stream::kDataset), 2});
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(std::min(count, order.size()));
  return data.Subset(order);
}

}  // namespace securedl
