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
#ifndef LEAKMIN_SAMPLING_HPP_
#define LEAKMIN_SAMPLING_HPP_

// Seeded random distributions and channels for property tests and oracles.
// Everything draws from std::mt19937_64 so a seed reproduces a run exactly
// on a given standard library.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "leakmin/probcore.hpp"

namespace leakmin {

using Rng = std::mt19937_64;

// Flat Dirichlet draw, scaled by a concentration that skews or flattens it.
// Entries are strictly positive.
inline std::vector<double> random_simplex(Rng& rng, std::size_t n,
                                          double concentration = 1.0) {
  std::gamma_distribution<double> gamma(concentration, 1.0);
  std::vector<double> v(n);
  double total = 0.0;
  for (;;) {
    total = 0.0;
    for (auto& x : v) {
      x = gamma(rng);
      total += x;
    }
    if (total > 0.0 &&
        std::all_of(v.begin(), v.end(), [&](double x) { return x / total > 1e-300; })) {
      break;
    }
  }
  for (auto& x : v) x /= total;
  // Push the rounding residue into the largest entry so the sum is 1 to
  // within an ulp or two.
  double s = 0.0;
  for (double x : v) s += x;
  *std::max_element(v.begin(), v.end()) += 1.0 - s;
  return v;
}

// A random prior whose shape varies between near-uniform and very skewed.
inline Prior random_prior(Rng& rng, std::size_t n) {
  static constexpr double kShapes[] = {0.3, 1.0, 4.0};
  std::uniform_int_distribution<int> pick(0, 2);
  return Prior(random_simplex(rng, n, kShapes[pick(rng)]));
}

// Dense random channel; every entry strictly positive.
inline Channel random_channel(Rng& rng, std::size_t n, std::size_t m) {
  std::vector<std::vector<double>> rows;
  rows.reserve(n);
  for (std::size_t x = 0; x < n; ++x) rows.push_back(random_simplex(rng, m));
  return Channel::from_rows(rows);
}

// Random channel with some structural zeros, so supports and output usage
// vary. Every row keeps at least one nonzero entry.
inline Channel random_sparse_channel(Rng& rng, std::size_t n, std::size_t m) {
  std::bernoulli_distribution keep(0.6);
  std::uniform_int_distribution<std::size_t> col(0, m - 1);
  std::vector<std::vector<double>> rows;
  for (std::size_t x = 0; x < n; ++x) {
    auto r = random_simplex(rng, m);
    for (auto& v : r) {
      if (!keep(rng)) v = 0.0;
    }
    double s = 0.0;
    for (double v : r) s += v;
    if (s == 0.0) {
      std::fill(r.begin(), r.end(), 0.0);
      r[col(rng)] = 1.0;
    } else {
      for (auto& v : r) v /= s;
    }
    rows.push_back(std::move(r));
  }
  return Channel::from_rows(rows);
}

// Uniformly random k-subset of {0..n-1}.
inline SubsetLabel random_subset(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> d(i, n - 1);
    std::swap(all[i], all[d(rng)]);
  }
  all.resize(k);
  return SubsetLabel(std::move(all));
}

// Diagonal gains in (0, 1]; each entry is zero with probability zero_prob,
// keeping at least one positive.
inline std::vector<double> random_gains(Rng& rng, std::size_t n,
                                        double zero_prob = 0.0) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::bernoulli_distribution drop(zero_prob);
  std::vector<double> g(n);
  bool any = false;
  for (auto& v : g) {
    v = drop(rng) ? 0.0 : 1.0 - unit(rng);
    any = any || v > 0.0;
  }
  if (!any) g[0] = 1.0;
  return g;
}

}  // namespace leakmin

#endif  // LEAKMIN_SAMPLING_HPP_
