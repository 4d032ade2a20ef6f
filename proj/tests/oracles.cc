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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace securedl::oracle {

std::int64_t Fixed::Enc(double x) const {
  return static_cast<std::int64_t>(std::llround(std::ldexp(x, frac_bits)));
}

double Fixed::Dec(std::int64_t v) const {
  return std::ldexp(static_cast<double>(v), -frac_bits);
}

std::int64_t Fixed::Mul(std::int64_t a, std::int64_t b) const {
  const __int128 p = static_cast<__int128>(a) * b;
  // Arithmetic shift is floor division for negative products too.
  return static_cast<std::int64_t>(p >> frac_bits);
}

std::int64_t Fixed::Inverse(std::int64_t x, double c, int iterations) const {
  std::int64_t b = Enc(1.0 / c);
  const std::int64_t two = Enc(2.0);
  for (int s = 0; s < iterations; ++s) {
    const std::int64_t m = Mul(b, x);
    b = Mul(b, two - m);
  }
  return b;
}

std::int64_t Fixed::Sqrt(std::int64_t y, double x0, double inverse_bound,
                         int iterations, int inverse_iterations) const {
  std::int64_t x = Enc(x0);
  const std::int64_t half = Enc(0.5);
  for (int n = 0; n < iterations; ++n) {
    const std::int64_t q = Mul(y, Inverse(x, inverse_bound, inverse_iterations));
    x = Mul(x + q, half);
  }
  return x;
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double Norm(std::span<const double> a) { return std::sqrt(Dot(a, a)); }

double Cosine(std::span<const double> a, std::span<const double> b) {
  return Dot(a, b) / (Norm(a) * Norm(b));
}

namespace {

double Dist2(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

// Minimum subset sum over all size-k subsets of `values`, by enumeration.
double MinSubsetSum(const std::vector<double>& values, int k) {
  const int m = static_cast<int>(values.size());
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    double s = 0.0;
    for (int j = 0; j < m; ++j) {
      if (mask & (1u << j)) s += values[static_cast<std::size_t>(j)];
    }
    best = std::min(best, s);
  }
  return best;
}

}  // namespace

std::size_t KrumBruteForce(const std::vector<Vec>& updates, int f) {
  const int n = static_cast<int>(updates.size());
  std::size_t best = 0;
  double best_score = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    std::vector<double> d;
    for (int j = 0; j < n; ++j) {
      if (j != i) {
        d.push_back(Dist2(updates[static_cast<std::size_t>(i)],
                          updates[static_cast<std::size_t>(j)]));
      }
    }
    const double score = MinSubsetSum(d, n - f - 2);
    if (score < best_score) {
      best_score = score;
      best = static_cast<std::size_t>(i);
    }
  }
  return best;
}

Vec MedianBySort(const std::vector<Vec>& updates) {
  const std::size_t n = updates.size();
  Vec out(updates[0].size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::vector<double> col;
    for (const Vec& u : updates) col.push_back(u[i]);
    std::sort(col.begin(), col.end());
    out[i] = n % 2 == 1 ? col[n / 2] : (col[n / 2 - 1] + col[n / 2]) / 2.0;
  }
  return out;
}

Vec TrimmedMeanBySort(const std::vector<Vec>& updates, int k) {
  const std::size_t n = updates.size();
  Vec out(updates[0].size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::vector<double> col;
    for (const Vec& u : updates) col.push_back(u[i]);
    std::sort(col.begin(), col.end());
    double s = 0.0;
    for (std::size_t j = static_cast<std::size_t>(k);
         j < n - static_cast<std::size_t>(k); ++j) {
      s += col[j];
    }
    out[i] = s / static_cast<double>(n - 2 * static_cast<std::size_t>(k));
  }
  return out;
}

Vec MoziReference(const Vec& own, const std::vector<Vec>& received,
                  const std::function<double(const Vec&)>& loss, double rho) {
  const std::size_t m = received.size();
  std::vector<std::pair<double, std::size_t>> by_distance;
  for (std::size_t j = 0; j < m; ++j) {
    by_distance.emplace_back(Dist2(own, received[j]), j);
  }
  std::sort(by_distance.begin(), by_distance.end());
  std::size_t keep = static_cast<std::size_t>(std::ceil(rho * m - 1e-12));
  keep = std::max<std::size_t>(1, std::min(keep, m));
  const double own_loss = loss(own);
  std::vector<std::size_t> survivors;
  std::size_t best = by_distance[0].second;
  double best_loss = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < keep; ++k) {
    const std::size_t j = by_distance[k].second;
    const double l = loss(received[j]);
    if (l <= own_loss) survivors.push_back(j);
    if (l < best_loss) {
      best_loss = l;
      best = j;
    }
  }
  if (survivors.empty()) survivors.push_back(best);
  Vec out = own;
  for (std::size_t j : survivors) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += received[j][i];
  }
  for (double& v : out) v /= static_cast<double>(survivors.size() + 1);
  return out;
}

SecureDlDecision SecureDlReference(const Vec& own,
                                   const std::vector<Vec>& received,
                                   double tau, double norm_floor,
                                   bool divide_by_accepted) {
  SecureDlDecision d;
  Vec sum = own;
  const double own_norm = Norm(own);
  int accepted = 0;
  for (const Vec& u : received) {
    const double u_norm = Norm(u);
    const bool ok = own_norm >= norm_floor && u_norm >= norm_floor &&
                    Cosine(own, u) >= tau;
    d.accepted.push_back(ok);
    if (!ok) continue;
    ++accepted;
    for (std::size_t i = 0; i < u.size(); ++i) sum[i] += u[i] * own_norm / u_norm;
  }
  const double divisor = divide_by_accepted
                             ? accepted + 1.0
                             : static_cast<double>(received.size() + 1);
  for (double& v : sum) v /= divisor;
  d.aggregate = std::move(sum);
  return d;
}

namespace {

// Regularized lower incomplete gamma P(a, x) by its power series.
double GammaPSeries(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 10000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by Lentz's continued fraction.
double GammaQFraction(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double ChiSquareSurvival(double statistic, double dof) {
  const double a = dof / 2.0;
  const double x = statistic / 2.0;
  if (x <= 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - GammaPSeries(a, x);
  return GammaQFraction(a, x);
}

Vec FiniteDifferenceGradient(const std::function<double(const Vec&)>& f,
                             const Vec& x, double h) {
  Vec g(x.size());
  Vec probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = f(probe);
    probe[i] = x[i] - h;
    const double down = f(probe);
    probe[i] = x[i];
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

}  // namespace securedl::oracle
