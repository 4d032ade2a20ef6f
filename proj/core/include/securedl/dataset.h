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

#ifndef SECUREDL_DATASET_H_
#define SECUREDL_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace securedl {

// Row-major samples with integer labels in [0, num_classes).
struct Dataset {
  std::size_t feature_dim = 0;
  int num_classes = 0;
  std::vector<float> features;
  std::vector<int> labels;

  std::size_t size() const { return labels.size(); }
  std::span<const float> row(std::size_t i) const {
    return {features.data() + i * feature_dim, feature_dim};
  }
  void Validate() const;
  Dataset Subset(std::span<const std::size_t> indices) const;
};

// IDX parsing. Images (magic 0x00000803) are scaled to [0, 1].
std::vector<float> ReadIdxImages(const std::string& path, std::size_t* count,
                                 std::size_t* rows, std::size_t* cols);
std::vector<int> ReadIdxLabels(const std::string& path);
Dataset LoadIdx(const std::string& images_path, const std::string& labels_path,
                int num_classes = 10);

void WriteIdxImages(const std::string& path, std::span<const std::uint8_t> pixels,
                    std::size_t count, std::size_t rows, std::size_t cols);
void WriteIdxLabels(const std::string& path, std::span<const std::uint8_t> labels);

// Gaussian blobs: class centers drawn once from `seed`, samples are center
// plus unit-variance noise. Labels are balanced round-robin.
Dataset SynthBlobs(std::size_t n_samples, std::size_t dim, int num_classes,
                   std::uint64_t seed, double separation = 1.0);

// Disjoint random shards whose sizes differ by at most one.
std::vector<Dataset> IidPartition(const Dataset& data, int shards,
                                  std::uint64_t seed);

// The first `count` samples of a seeded permutation.
Dataset RandomSubset(const Dataset& data, std::size_t count,
                     std::uint64_t seed);

}  // namespace securedl

#endif  // SECUREDL_DATASET_H_
