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
#ifndef LEAKMIN_GAIN_HPP_
#define LEAKMIN_GAIN_HPP_

// Gain-weighted entropies. With gain matrix G,
//
//   H_g(X)   = eta( ||Gp||_1 F(Gp / ||Gp||_1) )
//   H_g(X|Y) = eta( sum_y p(y) ||G p_{X|y}||_1 F(G p_{X|y} / ||G p_{X|y}||_1) )
//
// Evaluation accepts any G with Gp elementwise non-negative. Optimal design
// is only available for diagonal G = diag(gamma).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "leakmin/designer.hpp"
#include "leakmin/entropy.hpp"
#include "leakmin/errors.hpp"
#include "leakmin/probcore.hpp"

namespace leakmin {

class GainSpec {
 public:
  // gamma_i >= 0, at least one positive.
  static GainSpec diagonal(std::vector<double> gamma) {
    if (gamma.empty()) throw ValidationError("gain vector is empty");
    double top = 0.0;
    for (double g : gamma) {
      if (!std::isfinite(g) || g < 0.0) {
        throw ValidationError("gains must be finite and non-negative");
      }
      top = std::max(top, g);
    }
    if (!(top > 0.0)) throw ValidationError("at least one gain must be positive");
    GainSpec s;
    s.rows_ = s.cols_ = gamma.size();
    s.gamma_ = std::move(gamma);
    s.diagonal_ = true;
    return s;
  }

  static GainSpec ones(std::size_t n) {
    return diagonal(std::vector<double>(n, 1.0));
  }

  // General |W| x n gain matrix g(w, x), row-major.
  static GainSpec matrix(const std::vector<std::vector<double>>& g) {
    if (g.empty() || g.front().empty()) {
      throw ValidationError("gain matrix is empty");
    }
    GainSpec s;
    s.rows_ = g.size();
    s.cols_ = g.front().size();
    for (const auto& r : g) {
      if (r.size() != s.cols_) throw ValidationError("ragged gain matrix");
      for (double v : r) {
        if (!std::isfinite(v)) throw ValidationError("gain entries must be finite");
      }
      s.matrix_.insert(s.matrix_.end(), r.begin(), r.end());
    }
    s.diagonal_ = false;
    return s;
  }

  bool is_diagonal() const { return diagonal_; }
  std::size_t inputs() const { return cols_; }
  const std::vector<double>& gamma() const {
    if (!diagonal_) throw ValidationError("gain matrix is not diagonal");
    return gamma_;
  }

  // Gp. Throws when an entry is negative, since Gp/||Gp||_1 must be a
  // distribution.
  std::vector<double> apply(std::span<const double> p) const {
    if (p.size() != cols_) {
      throw ValidationError("gain expects " + std::to_string(cols_) +
                            " inputs, got " + std::to_string(p.size()));
    }
    std::vector<double> out(rows_, 0.0);
    if (diagonal_) {
      for (std::size_t i = 0; i < cols_; ++i) out[i] = gamma_[i] * p[i];
      return out;
    }
    for (std::size_t w = 0; w < rows_; ++w) {
      double acc = 0.0;
      for (std::size_t x = 0; x < cols_; ++x) acc += matrix_[w * cols_ + x] * p[x];
      if (acc < 0.0) {
        throw ValidationError("Gp has a negative entry; G is not admissible "
                              "for this distribution");
      }
      out[w] = acc;
    }
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  bool diagonal_ = true;
  std::vector<double> gamma_;
  std::vector<double> matrix_;
};

// eta(s F(v / s)) with s = ||v||_1; the building block of both gain forms.
inline double scaled_core(const EntropyMeasure& m, std::span<const double> v) {
  const double s = std::accumulate(v.begin(), v.end(), 0.0);
  if (!(s > 0.0)) return 0.0;
  std::vector<double> normalized(v.begin(), v.end());
  for (double& x : normalized) x /= s;
  return s * m.core(normalized);
}

// p aligned with the gain's input order.
inline double g_entropy(const EntropyMeasure& m, std::span<const double> p,
                        const GainSpec& g) {
  const auto gp = g.apply(p);
  const double s = std::accumulate(gp.begin(), gp.end(), 0.0);
  if (!(s > 0.0)) throw ValidationError("Gp is identically zero");
  return m.eta(scaled_core(m, gp));
}

// Outputs whose posterior carries no gain contribute nothing.
inline double g_conditional_entropy(const EntropyMeasure& m,
                                    std::span<const double> p,
                                    const Channel& ch, const GainSpec& g) {
  const auto table = posteriors(p, ch);
  double acc = 0.0;
  for (std::size_t idx = 0; idx < table.outputs.size(); ++idx) {
    const auto gp = g.apply(table.dense(idx));
    acc += table.outputs[idx].mass * scaled_core(m, gp);
  }
  return m.eta(acc);
}

inline double g_leakage(const EntropyMeasure& m, std::span<const double> p,
                        const Channel& ch, const GainSpec& g) {
  return g_entropy(m, p, g) - g_conditional_entropy(m, p, ch, g);
}

// Upper bound on H_g(X|Y) under cap k: eta(||pi||_1 F(pi / ||pi||_1)).
inline double g_optimal_conditional(const EntropyMeasure& m,
                                    std::span<const double> pi) {
  return m.eta(scaled_core(m, pi));
}

// The optimal design run on Gp instead of p. Gains are aligned with the prior's
// original labels. The result's channel rows follow decreasing gamma_i p(i)
// (ties by original label), with zero-gain inputs last; permutation maps
// rows back to original labels. pi is unnormalized: it sums to ||Gp||_1.
//
// Zero-gain inputs never affect H_g, so each group of at most k of them is
// sent to a private output. If fewer than k inputs carry gain, pi is those
// gains padded with zeros and a single output covers them all.
inline DesignResult design_with_gain(const Prior& p, std::size_t k,
                                     const GainSpec& g) {
  if (!g.is_diagonal()) {
    throw ValidationError("optimal design needs a diagonal gain matrix");
  }
  const auto probs = p.original();
  const std::size_t n = probs.size();
  if (g.inputs() != n) {
    throw ValidationError("gain vector has " + std::to_string(g.inputs()) +
                          " entries, prior has " + std::to_string(n));
  }
  if (k < 1 || k > n) {
    throw ValidationError("pre-image cap k = " + std::to_string(k) +
                          " must satisfy 1 <= k <= n = " + std::to_string(n));
  }
  const auto gp = g.apply(probs);
  // Same ordering rule as Prior, so unit gains reproduce design() exactly.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return gp[a] > gp[b]; });
  std::vector<double> positive;
  for (std::size_t i : order) {
    if (gp[i] > 0.0) positive.push_back(gp[i]);
  }
  const std::size_t live = positive.size();
  if (live == 0) throw ValidationError("Gp is identically zero");

  DesignResult out = design_sorted(positive, std::min(k, live));
  if (k > live) {
    out.jstar = live + 1;
    out.pi = positive;
    out.pi.resize(k, 0.0);
  }
  out.permutation = order;
  out.original_size = n;

  const std::size_t dead = n - live;
  if (dead > 0) {
    const Channel& base = out.channel;
    const std::size_t groups = (dead + k - 1) / k;
    const std::size_t m = base.outputs() + groups;
    std::vector<double> data(n * m, 0.0);
    for (std::size_t x = 0; x < live; ++x) {
      for (std::size_t y = 0; y < base.outputs(); ++y) {
        data[x * m + y] = base(x, y);
      }
    }
    std::vector<SubsetLabel> labels = base.labels();
    for (std::size_t gidx = 0; gidx < groups; ++gidx) {
      std::vector<std::size_t> members;
      for (std::size_t x = live + gidx * k; x < std::min(n, live + (gidx + 1) * k);
           ++x) {
        members.push_back(x);
        data[x * m + base.outputs() + gidx] = 1.0;
      }
      labels.emplace_back(std::move(members));
    }
    out.channel = Channel(n, m, std::move(data), std::move(labels));
  }
  return out;
}

}  // namespace leakmin

#endif  // LEAKMIN_GAIN_HPP_
