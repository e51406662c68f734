// Copyright 2026 The leakmin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
#ifndef LEAKMIN_MAJORIZATION_HPP_
#define LEAKMIN_MAJORIZATION_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "leakmin/entropy.hpp"
#include "leakmin/sampling.hpp"

namespace leakmin {

// A vector kept in non-increasing order.
class SortedVec {
 public:
  SortedVec() = default;
  explicit SortedVec(std::span<const double> v) : values_(v.begin(), v.end()) {
    std::sort(values_.begin(), values_.end(), std::greater<>());
  }
  SortedVec(std::initializer_list<double> v)
      : SortedVec(std::span<const double>(v.begin(), v.size())) {}

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const {
    return i < values_.size() ? values_[i] : 0.0;
  }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
};

struct MajorizationResult {
  bool holds = false;
  std::string diagnostic;
  explicit operator bool() const { return holds; }
};

// a majorizes b: equal totals and every prefix sum of sorted a dominates
// sorted b. The shorter vector is zero-padded.
inline MajorizationResult majorization_check(std::span<const double> a,
                                             std::span<const double> b,
                                             double total_tol = 1e-9,
                                             double slack = 1e-12) {
  const SortedVec sa(a);
  const SortedVec sb(b);
  const std::size_t n = std::max(sa.size(), sb.size());
  double ta = 0.0;
  double tb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ta += sa[i];
    tb += sb[i];
  }
  if (std::abs(ta - tb) > total_tol) {
    return {false, "totals differ: " + std::to_string(ta) + " vs " +
                       std::to_string(tb)};
  }
  double pa = 0.0;
  double pb = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    pa += sa[j];
    pb += sb[j];
    if (pa < pb - slack) {
      return {false, "prefix " + std::to_string(j + 1) + ": " +
                         std::to_string(pa) + " < " + std::to_string(pb)};
    }
  }
  return {true, {}};
}

inline bool majorizes(std::span<const double> a, std::span<const double> b) {
  return majorization_check(a, b).holds;
}

// Returns a vector majorized by v: a random T-transform (Robin Hood move)
// pulls two entries toward their average.
inline std::vector<double> random_flattening(Rng& rng,
                                             std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  if (out.size() < 2) return out;
  std::uniform_int_distribution<std::size_t> pick(0, out.size() - 1);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  std::size_t i = pick(rng);
  std::size_t j = pick(rng);
  while (j == i) j = pick(rng);
  const double lambda = frac(rng);
  const double a = out[i];
  const double b = out[j];
  out[i] = lambda * a + (1.0 - lambda) * b;
  out[j] = lambda * b + (1.0 - lambda) * a;
  return out;
}

struct SchurViolation {
  std::vector<double> majorizing;  // a
  std::vector<double> majorized;   // b, with a majorizing b
  double h_majorizing = 0.0;
  double h_majorized = 0.0;
};

// Draws pairs a majorizing b and reports those where h(a) > h(b) + tol.
// An empty result is evidence h is Schur-concave.
inline std::vector<SchurViolation> schur_concavity_probe(
    const std::function<double(std::span<const double>)>& h,
    std::size_t trials, std::uint64_t seed = 7, double tol = 1e-9,
    std::size_t max_dim = 8) {
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> dim(2, max_dim);
  std::uniform_int_distribution<int> steps(1, 4);
  std::vector<SchurViolation> found;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto a = random_simplex(rng, dim(rng), 0.5);
    auto b = a;
    for (int s = steps(rng); s > 0; --s) b = random_flattening(rng, b);
    const double ha = h(a);
    const double hb = h(b);
    if (ha > hb + tol) found.push_back({a, b, ha, hb});
  }
  return found;
}

inline std::vector<SchurViolation> schur_concavity_probe(
    const EntropyMeasure& m, std::size_t trials, std::uint64_t seed = 7) {
  return schur_concavity_probe(
      [&m](std::span<const double> p) { return entropy(m, p); }, trials, seed);
}

}  // namespace leakmin

#endif  // LEAKMIN_MAJORIZATION_HPP_
