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
#ifndef LEAKMIN_DESIGNER_HPP_
#define LEAKMIN_DESIGNER_HPP_

// Leakage-minimal channels under a pre-image size cap k.
//
// For a prior sorted as p(1) >= ... >= p(n) > 0, the first j*-1 inputs
// ("giants") are too likely to be flattened and appear in every output; the
// remaining tail mass is spread evenly over the other k-j*+1 slots of each
// pre-image. Every realized output then has the same posterior pi, and no
// channel respecting the cap can do better under any symmetric, expansible,
// core-concave entropy.
//
// All functions below take the weights in sorted order. They only use
// ratios, so the weights need not sum to one; the gain-weighted design feeds
// unnormalized gamma_i p(i) through the same path.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "leakmin/entropy.hpp"
#include "leakmin/errors.hpp"
#include "leakmin/probcore.hpp"

namespace leakmin {

using WeightMap = std::map<SubsetLabel, double>;

struct DesignResult {
  std::size_t jstar = 1;          // 1-based; inputs 0..jstar-2 are giants
  std::vector<double> pi;         // length k
  WeightMap weights;              // v_M keyed by sorted-order input subsets
  Channel channel;                // rows in sorted order
  std::vector<std::size_t> permutation;  // sorted index -> original label
  std::size_t original_size = 0;

  std::size_t giants() const { return jstar - 1; }

  // The channel with rows in original label order. Inputs that were
  // stripped as zero-probability each get a private output.
  Channel channel_in_original_labels() const {
    const std::size_t n = channel.inputs();
    if (original_size == n) return channel.relabel_inputs(permutation, n);
    std::vector<bool> seen(original_size, false);
    for (std::size_t l : permutation) seen[l] = true;
    std::vector<std::size_t> missing;
    for (std::size_t i = 0; i < original_size; ++i) {
      if (!seen[i]) missing.push_back(i);
    }
    const std::size_t m = channel.outputs() + missing.size();
    std::vector<double> data(original_size * m, 0.0);
    std::vector<SubsetLabel> labels;
    for (std::size_t y = 0; y < channel.outputs(); ++y) {
      std::vector<std::size_t> mapped;
      for (std::size_t x : channel.label(y).members()) {
        mapped.push_back(permutation[x]);
      }
      labels.emplace_back(std::move(mapped));
    }
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < channel.outputs(); ++y) {
        data[permutation[x] * m + y] = channel(x, y);
      }
    }
    for (std::size_t i = 0; i < missing.size(); ++i) {
      data[missing[i] * m + channel.outputs() + i] = 1.0;
      labels.push_back(SubsetLabel{missing[i]});
    }
    return Channel(original_size, m, std::move(data), std::move(labels));
  }
};

namespace detail {

inline void check_sorted_weights(std::span<const double> w, std::size_t k) {
  if (w.empty()) throw ValidationError("empty weight vector");
  if (k < 1 || k > w.size()) {
    throw ValidationError("pre-image cap k = " + std::to_string(k) +
                          " must satisfy 1 <= k <= n = " +
                          std::to_string(w.size()));
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(w[i] > 0.0) || !std::isfinite(w[i])) {
      throw ValidationError("weights must be finite and strictly positive");
    }
    if (i > 0 && w[i] > w[i - 1]) {
      throw ValidationError("weights must be sorted non-increasingly");
    }
  }
}

// suffix[j] = w[j] + ... + w[n-1], accumulated from the small end.
inline std::vector<double> suffix_sums(std::span<const double> w) {
  std::vector<double> s(w.size() + 1, 0.0);
  for (std::size_t i = w.size(); i-- > 0;) s[i] = s[i + 1] + w[i];
  return s;
}

// Rounding in the greedy leaves absolute errors near eps * max(w) in each
// tail row sum, which is large relative to a tiny w(i). A least-squares
// correction on the chosen subsets makes every row sum accurate relative to
// its own weight. The correction is dropped if it would make a weight
// non-positive.
inline void refine_weights(std::span<const double> w, std::size_t giants,
                           std::map<SubsetLabel, double>& weights) {
  const std::size_t t = w.size() - giants;
  const std::size_t m = weights.size();
  if (m == 0 || t == 0) return;
  using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  Mat a = Mat::Zero(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(m));
  Vec v(static_cast<Eigen::Index>(m));
  Eigen::Index col = 0;
  for (const auto& [label, value] : weights) {
    for (std::size_t x : label.members()) {
      if (x >= giants) a(static_cast<Eigen::Index>(x - giants), col) = 1.0L;
    }
    v(col++) = value;
  }
  // Rows scaled by 1/w(i) so the fit is relative per input.
  const Vec target = Vec::Ones(static_cast<Eigen::Index>(t));
  for (std::size_t i = 0; i < t; ++i) {
    a.row(static_cast<Eigen::Index>(i)) /= static_cast<long double>(w[giants + i]);
  }
  const Eigen::CompleteOrthogonalDecomposition<Mat> cod(a);
  for (int round = 0; round < 2; ++round) {
    const Vec next = v + cod.solve(Vec(target - a * v));
    if ((next.array() <= 0.0L).any()) return;
    v = next;
  }
  col = 0;
  for (auto& [label, value] : weights) value = static_cast<double>(v(col++));
}

}  // namespace detail

// Smallest j in 1..k with w(j) <= (w(j) + ... + w(n)) / (k - j + 1). Always
// exists because j = k satisfies it. Plain <= on doubles: at exact equality
// both neighbouring choices give the same pi.
inline std::size_t compute_jstar(std::span<const double> w, std::size_t k) {
  detail::check_sorted_weights(w, k);
  const auto suffix = detail::suffix_sums(w);
  for (std::size_t j = 1; j <= k; ++j) {
    if (w[j - 1] <= suffix[j - 1] / static_cast<double>(k - j + 1)) return j;
  }
  throw InvariantError("no admissible j* found");
}
inline std::size_t compute_jstar(const Prior& p, std::size_t k) {
  return compute_jstar(p.sorted(), k);
}

inline std::vector<double> build_pi(std::span<const double> w, std::size_t k,
                                    std::size_t jstar) {
  detail::check_sorted_weights(w, k);
  if (jstar < 1 || jstar > k) throw ValidationError("j* out of range");
  const auto suffix = detail::suffix_sums(w);
  std::vector<double> pi(k);
  for (std::size_t l = 0; l + 1 < jstar; ++l) pi[l] = w[l];
  const double level = suffix[jstar - 1] / static_cast<double>(k - jstar + 1);
  for (std::size_t l = jstar - 1; l < k; ++l) pi[l] = level;
  return pi;
}
inline std::vector<double> build_pi(std::span<const double> w, std::size_t k) {
  return build_pi(w, k, compute_jstar(w, k));
}
inline std::vector<double> build_pi(const Prior& p, std::size_t k) {
  return build_pi(p.sorted(), k);
}

struct DecompositionStats {
  std::size_t iterations = 0;
  // max over iterations of (max residual - residual sum / u); <= 0 when the
  // feasibility invariant holds.
  double worst_invariant_slack = -std::numeric_limits<double>::infinity();
};

// Writes the tail w(j*), ..., w(n) as a non-negative combination of k-subsets
// that all contain the giants: sum_{M containing i} v_M = w(i) for every tail
// input i.
//
// Greedy extreme-point peeling. With u = k - j* + 1 and residual r (sum S),
// take the u largest residuals and remove the largest amount that keeps
// max(r) <= S/u, namely min(r_[u], S/u - r_[u+1]). Each step either zeroes
// r_[u] or pulls r_[u+1] into the top group, so at most n - j* + 1 steps are
// needed.
inline WeightMap decompose_residual(std::span<const double> w, std::size_t k,
                                    std::size_t jstar,
                                    DecompositionStats* stats = nullptr) {
  detail::check_sorted_weights(w, k);
  if (jstar != compute_jstar(w, k)) {
    throw ValidationError("decompose_residual: jstar does not match weights");
  }
  const std::size_t n = w.size();
  const std::size_t giants = jstar - 1;
  const std::size_t t = n - giants;
  const std::size_t u = k - giants;

  std::vector<double> r(w.begin() + static_cast<std::ptrdiff_t>(giants),
                        w.end());
  const double initial = std::accumulate(r.begin(), r.end(), 0.0);
  // Step arithmetic happens at the scale of the whole residual, so leftovers
  // below this are rounding noise. Inputs that are genuinely this small are
  // placed after the loop.
  const double snap = 4.0 * static_cast<double>(t) *
                      std::numeric_limits<double>::epsilon() * initial;

  std::vector<std::size_t> giant_members(giants);
  std::iota(giant_members.begin(), giant_members.end(), std::size_t{0});

  WeightMap weights;
  std::vector<std::size_t> order;
  DecompositionStats local;
  const std::size_t max_iterations = 4 * t + 8;
  for (;;) {
    order.clear();
    double sum = 0.0;
    for (std::size_t i = 0; i < t; ++i) {
      if (r[i] > 0.0) {
        order.push_back(i);
        sum += r[i];
      }
    }
    if (order.size() < u) {
      if (sum > 1e-12 * initial) {
        throw InvariantError("decomposition stalled with residual mass " +
                             std::to_string(sum));
      }
      break;
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return r[a] > r[b]; });
    const double level = sum / static_cast<double>(u);
    local.worst_invariant_slack =
        std::max(local.worst_invariant_slack, r[order.front()] - level);
    const double ru = r[order[u - 1]];
    const double next = order.size() > u ? r[order[u]] : 0.0;
    const double step = std::min(ru, level - next);
    if (!(step > 0.0)) {
      throw InvariantError("decomposition produced a non-positive step");
    }
    if (++local.iterations > max_iterations) {
      throw InvariantError("decomposition did not terminate");
    }
    std::vector<std::size_t> members = giant_members;
    for (std::size_t s = 0; s < u; ++s) {
      const std::size_t i = order[s];
      members.push_back(giants + i);
      r[i] = (r[i] - step > snap) ? r[i] - step : 0.0;
    }
    weights[SubsetLabel(std::move(members))] += step;
  }
  // Fewer than u inputs kept a rounding-level residual. Each gets its own
  // subset padded with the heaviest other tail inputs; refinement below
  // rebalances their rows.
  for (std::size_t i = 0; i < t; ++i) {
    if (!(r[i] > 0.0)) continue;
    std::vector<std::size_t> members = giant_members;
    members.push_back(giants + i);
    for (std::size_t f = 0; members.size() < k; ++f) {
      if (f != i) members.push_back(giants + f);
    }
    weights[SubsetLabel(std::move(members))] += r[i];
    r[i] = 0.0;
  }
  detail::refine_weights(w, giants, weights);
  if (stats) *stats = local;
  return weights;
}

inline WeightMap decompose_residual(const Prior& p, std::size_t k,
                                    std::size_t jstar,
                                    DecompositionStats* stats = nullptr) {
  return decompose_residual(p.sorted(), k, jstar, stats);
}

// One output per subset with positive weight. Tail input i sends v_M / w(i)
// to y_M; giants send v_M u / (tail mass). Rows are renormalized to absorb
// rounding.
inline Channel assemble_channel(std::span<const double> w, std::size_t k,
                                std::size_t jstar, const WeightMap& weights) {
  detail::check_sorted_weights(w, k);
  const std::size_t n = w.size();
  const std::size_t giants = jstar - 1;
  const double u = static_cast<double>(k - giants);
  const double tail = detail::suffix_sums(w)[giants];

  std::vector<SubsetLabel> labels;
  std::vector<double> mass;
  for (const auto& [label, v] : weights) {
    if (v <= 0.0) continue;
    if (label.size() != k) {
      throw InvariantError("weight subset {" + label.to_string() +
                           "} does not have size k");
    }
    for (std::size_t g = 0; g < giants; ++g) {
      if (!label.contains(g)) {
        throw InvariantError("weight subset {" + label.to_string() +
                             "} misses a giant");
      }
    }
    labels.push_back(label);
    mass.push_back(v);
  }
  if (labels.empty()) throw InvariantError("no outputs to assemble");
  const std::size_t m = labels.size();
  std::vector<double> data(n * m, 0.0);
  for (std::size_t y = 0; y < m; ++y) {
    for (std::size_t x : labels[y].members()) {
      data[x * m + y] = x < giants ? mass[y] * u / tail : mass[y] / w[x];
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    double s = 0.0;
    for (std::size_t y = 0; y < m; ++y) s += data[x * m + y];
    if (!(s > 0.0)) {
      throw InvariantError("input " + std::to_string(x) + " has no output");
    }
    for (std::size_t y = 0; y < m; ++y) data[x * m + y] /= s;
  }
  return Channel(n, m, std::move(data), std::move(labels));
}

// j*, pi, weights and channel for already-sorted positive weights.
inline DesignResult design_sorted(std::span<const double> w, std::size_t k) {
  DesignResult out;
  out.jstar = compute_jstar(w, k);
  out.pi = build_pi(w, k, out.jstar);
  out.weights = decompose_residual(w, k, out.jstar);
  out.channel = assemble_channel(w, k, out.jstar, out.weights);
  out.permutation.resize(w.size());
  std::iota(out.permutation.begin(), out.permutation.end(), std::size_t{0});
  out.original_size = w.size();
  return out;
}

inline DesignResult design(const Prior& p, std::size_t k) {
  auto out = design_sorted(p.sorted(), k);
  out.permutation = p.permutation();
  out.original_size = p.original_size();
  return out;
}

// H(p) - H(pi): the least leakage any channel with cap k can achieve.
inline double min_leakage_closed_form(const EntropyMeasure& m, const Prior& p,
                                      std::size_t k) {
  return entropy(m, p) - entropy(m, build_pi(p, k));
}

// Largest achievable posterior min-entropy: -log max(1/k, p[1]).
inline double closed_form_min_entropy(const Prior& p, std::size_t k,
                                    Units u = Units::kNats) {
  if (k < 1 || k > p.size()) throw ValidationError("k out of range");
  return -detail::log_in(std::max(1.0 / static_cast<double>(k), p[0]), u);
}

// Largest achievable posterior l-guess error:
// 1 - max_{0<=j<=l} { P_j + (1 - P_j)(l - j)/(k - j) }, P_j = p[1]+...+p[j].
inline double closed_form_lguess(const Prior& p, std::size_t k, std::size_t l) {
  if (k < 1 || k > p.size()) throw ValidationError("k out of range");
  if (l < 1 || l > k) throw ValidationError("l must satisfy 1 <= l <= k");
  double best = -std::numeric_limits<double>::infinity();
  double prefix = 0.0;
  for (std::size_t j = 0; j <= l; ++j) {
    if (j > 0) prefix += p[j - 1];
    const double spread =
        j == k ? 0.0
               : static_cast<double>(l - j) / static_cast<double>(k - j);
    best = std::max(best, prefix + (1.0 - prefix) * spread);
  }
  return 1.0 - best;
}

// Largest achievable posterior guesswork:
// min_{1<=j<=k} { sum_{i<j} i p[i] + (1 - P_{j-1})(k + j)/2 }.
inline double closed_form_guesswork(const Prior& p, std::size_t k) {
  if (k < 1 || k > p.size()) throw ValidationError("k out of range");
  double best = std::numeric_limits<double>::infinity();
  double weighted = 0.0;
  double prefix = 0.0;
  for (std::size_t j = 1; j <= k; ++j) {
    if (j > 1) {
      weighted += static_cast<double>(j - 1) * p[j - 2];
      prefix += p[j - 2];
    }
    best = std::min(best, weighted + (1.0 - prefix) *
                                         static_cast<double>(k + j) / 2.0);
  }
  return best;
}

}  // namespace leakmin

#endif  // LEAKMIN_DESIGNER_HPP_
