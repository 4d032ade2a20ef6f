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

#include "securedl/learning.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "securedl/errors.h"

namespace securedl {
namespace {

constexpr std::size_t kEvalChunk = 1024;

double Sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Activations of every layer for a batch; acts[0] is the input.
struct Activations {
  std::vector<std::vector<double>> acts;
};

Activations Propagate(const MlpArchitecture& arch,
                      std::span<const double> params,
                      std::span<const float> features, std::size_t rows) {
  const auto& sizes = arch.layer_sizes;
  Activations a;
  a.acts.resize(sizes.size());
  a.acts[0].assign(features.begin(),
                   features.begin() + static_cast<long>(rows * sizes[0]));
  std::size_t offset = 0;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const std::size_t in = sizes[l];
    const std::size_t out = sizes[l + 1];
    const double* w = params.data() + offset;
    const double* b = w + in * out;
    offset += in * out + out;
    const std::vector<double>& x = a.acts[l];
    std::vector<double>& y = a.acts[l + 1];
    y.assign(rows * out, 0.0);
    const bool last = l + 2 == sizes.size();
    for (std::size_t r = 0; r < rows; ++r) {
      const double* xr = x.data() + r * in;
      double* yr = y.data() + r * out;
      for (std::size_t o = 0; o < out; ++o) {
        const double* wo = w + o * in;
        double z = b[o];
        for (std::size_t i = 0; i < in; ++i) z += wo[i] * xr[i];
        yr[o] = z;
      }
      if (last) {
        const double m = *std::max_element(yr, yr + out);
        double s = 0.0;
        for (std::size_t o = 0; o < out; ++o) {
          yr[o] = std::exp(yr[o] - m);
          s += yr[o];
        }
        for (std::size_t o = 0; o < out; ++o) yr[o] /= s;
      } else {
        for (std::size_t o = 0; o < out; ++o) yr[o] = Sigmoid(yr[o]);
      }
    }
  }
  return a;
}

void CheckShapes(const MlpArchitecture& arch, std::span<const double> params,
                 std::span<const float> features, std::size_t rows) {
  if (params.size() != arch.ParamCount()) {
    throw ConfigError("mlp: parameter vector has " +
                      std::to_string(params.size()) + " entries, expected " +
                      std::to_string(arch.ParamCount()));
  }
  if (features.size() != rows * arch.inputs()) {
    throw ConfigError("mlp: feature matrix shape mismatch");
  }
}

}  // namespace

std::size_t MlpArchitecture::ParamCount() const {
  std::size_t d = 0;
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    d += layer_sizes[l] * layer_sizes[l + 1] + layer_sizes[l + 1];
  }
  return d;
}

void MlpArchitecture::Validate() const {
  if (layer_sizes.size() < 2) throw ConfigError("mlp: need >= 2 layers");
  for (std::size_t s : layer_sizes) {
    if (s == 0) throw ConfigError("mlp: empty layer");
  }
  if (classes() < 2) throw ConfigError("mlp: need >= 2 output classes");
}

void Hyperparams::Validate() const {
  if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be > 0");
  if (batch_size < 1) throw ConfigError("batch size must be >= 1");
  if (local_epochs < 1) throw ConfigError("local epochs must be >= 1");
  if (!(clip_bound > 0.0)) throw ConfigError("clip bound must be > 0");
  if (rounds < 1) throw ConfigError("rounds must be >= 1");
  if (global_learning_rate != 1.0) {
    throw ConfigError("global learning rate is fixed at 1.0");
  }
}

std::vector<double> InitParams(const MlpArchitecture& arch, Rng& rng) {
  arch.Validate();
  std::vector<double> params(arch.ParamCount(), 0.0);
  std::size_t offset = 0;
  for (std::size_t l = 0; l + 1 < arch.layer_sizes.size(); ++l) {
    const std::size_t in = arch.layer_sizes[l];
    const std::size_t out = arch.layer_sizes[l + 1];
    const double limit = std::sqrt(6.0 / static_cast<double>(in + out));
    std::uniform_real_distribution<double> dist(-limit, limit);
    for (std::size_t k = 0; k < in * out; ++k) params[offset + k] = dist(rng);
    offset += in * out + out;
  }
  return params;
}

std::vector<double> Forward(const MlpArchitecture& arch,
                            std::span<const double> params,
                            std::span<const float> features,
                            std::size_t rows) {
  CheckShapes(arch, params, features, rows);
  return std::move(Propagate(arch, params, features, rows).acts.back());
}

LossGrad LossAndGrad(const MlpArchitecture& arch,
                     std::span<const double> params,
                     std::span<const float> features,
                     std::span<const int> labels) {
  const std::size_t rows = labels.size();
  CheckShapes(arch, params, features, rows);
  if (rows == 0) throw ConfigError("mlp: empty batch");
  const auto& sizes = arch.layer_sizes;
  const std::size_t classes = arch.classes();
  Activations a = Propagate(arch, params, features, rows);

  LossGrad out;
  out.grad.assign(params.size(), 0.0);
  const double inv_rows = 1.0 / static_cast<double>(rows);

  // delta = dLoss/dz for the current layer, rows x out.
  std::vector<double> delta = a.acts.back();
  for (std::size_t r = 0; r < rows; ++r) {
    const int y = labels[r];
    out.loss -= std::log(std::max(delta[r * classes + y], 1e-300));
    delta[r * classes + y] -= 1.0;
  }
  out.loss *= inv_rows;
  for (double& v : delta) v *= inv_rows;

  std::vector<std::size_t> offsets(sizes.size() - 1);
  std::size_t offset = 0;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    offsets[l] = offset;
    offset += sizes[l] * sizes[l + 1] + sizes[l + 1];
  }

  for (std::size_t l = sizes.size() - 1; l-- > 0;) {
    const std::size_t in = sizes[l];
    const std::size_t outw = sizes[l + 1];
    const double* w = params.data() + offsets[l];
    double* gw = out.grad.data() + offsets[l];
    double* gb = gw + in * outw;
    const std::vector<double>& x = a.acts[l];
    for (std::size_t r = 0; r < rows; ++r) {
      const double* xr = x.data() + r * in;
      const double* dr = delta.data() + r * outw;
      for (std::size_t o = 0; o < outw; ++o) {
        const double d = dr[o];
        if (d == 0.0) continue;
        gb[o] += d;
        double* go = gw + o * in;
        for (std::size_t i = 0; i < in; ++i) go[i] += d * xr[i];
      }
    }
    if (l == 0) break;
    std::vector<double> prev(rows * in, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
      const double* dr = delta.data() + r * outw;
      double* pr = prev.data() + r * in;
      for (std::size_t o = 0; o < outw; ++o) {
        const double d = dr[o];
        const double* wo = w + o * in;
        for (std::size_t i = 0; i < in; ++i) pr[i] += d * wo[i];
      }
      const double* xr = x.data() + r * in;
      for (std::size_t i = 0; i < in; ++i) pr[i] *= xr[i] * (1.0 - xr[i]);
    }
    delta = std::move(prev);
  }
  return out;
}

double Loss(const MlpArchitecture& arch, std::span<const double> params,
            std::span<const float> features, std::span<const int> labels) {
  const std::size_t rows = labels.size();
  const std::vector<double> probs = Forward(arch, params, features, rows);
  const std::size_t classes = arch.classes();
  double loss = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    loss -= std::log(std::max(probs[r * classes + labels[r]], 1e-300));
  }
  return rows == 0 ? 0.0 : loss / static_cast<double>(rows);
}

void ClipInfNorm(std::span<double> v, double bound) {
  for (double& x : v) x = std::clamp(x, -bound, bound);
}

std::vector<double> LocalUpdate(const MlpArchitecture& arch,
                                std::span<const double> params,
                                const Dataset& shard,
                                const Hyperparams& hyper, Rng& rng) {
  std::vector<double> w(params.begin(), params.end());
  if (shard.feature_dim != arch.inputs()) {
    throw ConfigError("local update: dataset width does not match the model");
  }
  std::vector<std::size_t> order(shard.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<float> xb;
  std::vector<int> yb;
  for (int epoch = 0; epoch < hyper.local_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t begin = 0; begin < order.size();
         begin += hyper.batch_size) {
      const std::size_t end = std::min(order.size(), begin + hyper.batch_size);
      xb.clear();
      yb.clear();
      for (std::size_t k = begin; k < end; ++k) {
        const auto r = shard.row(order[k]);
        xb.insert(xb.end(), r.begin(), r.end());
        yb.push_back(shard.labels[order[k]]);
      }
      const LossGrad lg = LossAndGrad(arch, w, xb, yb);
      for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] -= hyper.learning_rate * lg.grad[i];
      }
    }
  }
  ClipInfNorm(w, hyper.clip_bound);
  return w;
}

Evaluation Evaluate(const MlpArchitecture& arch,
                    std::span<const double> params, const Dataset& data) {
  Evaluation ev;
  if (data.size() == 0) return ev;
  const std::size_t classes = arch.classes();
  std::size_t correct = 0;
  double loss = 0.0;
  for (std::size_t begin = 0; begin < data.size(); begin += kEvalChunk) {
    const std::size_t rows = std::min(kEvalChunk, data.size() - begin);
    const std::span<const float> x(
        data.features.data() + begin * data.feature_dim,
        rows * data.feature_dim);
    const std::vector<double> probs = Forward(arch, params, x, rows);
    for (std::size_t r = 0; r < rows; ++r) {
      const double* p = probs.data() + r * classes;
      const auto pred = static_cast<int>(std::max_element(p, p + classes) - p);
      const int y = data.labels[begin + r];
      if (pred == y) ++correct;
      loss -= std::log(std::max(p[y], 1e-300));
    }
  }
  ev.accuracy = static_cast<double>(correct) / static_cast<double>(data.size());
  ev.loss = loss / static_cast<double>(data.size());
  return ev;
}

}  // namespace securedl
