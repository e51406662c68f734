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
#ifndef LEAKMIN_ORACLE_HPP_
#define LEAKMIN_ORACLE_HPP_

// Checks that do not go through the designer: posterior comparison, random
// feasible channels for the upper bound, a brute-force grid optimizer for
// tiny instances, the asymmetric-constraint counterexample, and the uniform
// baseline and ignorant-adversary analyses.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "leakmin/designer.hpp"
#include "leakmin/entropy.hpp"
#include "leakmin/errors.hpp"
#include "leakmin/majorization.hpp"
#include "leakmin/probcore.hpp"
#include "leakmin/sampling.hpp"

namespace leakmin {

struct ReportLine {
  std::string name;
  double achieved = 0.0;
  double bound = 0.0;
  double violation = 0.0;
};

struct VerificationReport {
  std::string instance;
  std::vector<ReportLine> lines;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool pass = false;

  void add(ReportLine line) {
    max_violation = std::max(max_violation, line.violation);
    lines.push_back(std::move(line));
  }
  void finish() { pass = max_violation <= tolerance; }
};

// Every realized output's sorted posterior must equal sorted pi.
inline VerificationReport verify_posteriors_equal_pi(
    std::span<const double> p, const Channel& ch, std::span<const double> pi,
    double tolerance = tol::kAnalytical) {
  VerificationReport report;
  report.instance = "posteriors vs pi";
  report.tolerance = tolerance;
  const SortedVec target(pi);
  for (const auto& o : posteriors(p, ch).outputs) {
    const SortedVec post(o.posterior);
    const std::size_t len = std::max(post.size(), target.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
      worst = std::max(worst, std::abs(post[i] - target[i]));
    }
    report.add({"output " + std::to_string(o.output) + " {" +
                    ch.label(o.output).to_string() + "}",
                post[0], target[0], worst});
  }
  report.finish();
  return report;
}

// Conditional entropy of ch against H(pi) for each measure; also fails if
// the channel is infeasible at the given tolerance.
inline VerificationReport verify_channel_optimality(
    const Prior& p, const Channel& ch, std::size_t k,
    const std::vector<EntropyMeasure>& measures,
    double tolerance = tol::kAnalytical) {
  VerificationReport report;
  report.instance = "channel optimality, k = " + std::to_string(k);
  report.tolerance = tolerance;
  const auto check = validate_channel(ch, k, tolerance);
  if (!check.ok) {
    for (const auto& d : check.diagnostics) {
      report.add({"feasibility: " + d, 0.0, 0.0,
                  std::numeric_limits<double>::infinity()});
    }
  }
  const auto pi = build_pi(p, k);
  const auto table = posteriors(p.original(), ch);
  for (const auto& m : measures) {
    const double achieved = conditional_entropy(m, table);
    const double bound = entropy(m, pi);
    report.add({describe(m), achieved, bound, std::abs(achieved - bound)});
  }
  report.finish();
  return report;
}

// Random channels obeying the pre-image cap. Each output slot carries a
// random k-subset label; each input spreads its mass over between 1 and 3
// slots whose label contains it. Unused slots are dropped.
class FeasibleChannelStream {
 public:
  FeasibleChannelStream(std::size_t n, std::size_t k, std::uint64_t seed)
      : n_(n), k_(k), rng_(seed) {
    if (n == 0 || k == 0 || k > n) {
      throw ValidationError("feasible channel stream needs 1 <= k <= n");
    }
  }

  Channel next() {
    std::uniform_int_distribution<std::size_t> slot_count(1, 2 * n_);
    std::vector<SubsetLabel> slots;
    for (std::size_t s = slot_count(rng_); s > 0; --s) {
      slots.push_back(random_subset(rng_, n_, k_));
    }
    std::uniform_int_distribution<int> fanout(1, 3);
    static constexpr double kShapes[] = {0.2, 1.0, 5.0};
    std::uniform_int_distribution<int> shape(0, 2);
    std::vector<std::vector<std::pair<std::size_t, double>>> rows(n_);
    for (std::size_t x = 0; x < n_; ++x) {
      std::vector<std::size_t> options;
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if (slots[s].contains(x)) options.push_back(s);
      }
      if (options.empty()) {
        auto others = random_subset(rng_, n_ - 1, k_ - 1).members();
        std::vector<std::size_t> members{x};
        for (std::size_t o : others) members.push_back(o >= x ? o + 1 : o);
        slots.emplace_back(std::move(members));
        options.push_back(slots.size() - 1);
      }
      std::shuffle(options.begin(), options.end(), rng_);
      const std::size_t use =
          std::min<std::size_t>(static_cast<std::size_t>(fanout(rng_)),
                                options.size());
      const auto mass = random_simplex(rng_, use, kShapes[shape(rng_)]);
      for (std::size_t i = 0; i < use; ++i) rows[x].push_back({options[i], mass[i]});
    }
    std::vector<std::size_t> column(slots.size(), SIZE_MAX);
    std::vector<SubsetLabel> labels;
    for (const auto& r : rows) {
      for (const auto& [s, v] : r) {
        if (column[s] == SIZE_MAX) {
          column[s] = labels.size();
          labels.push_back(slots[s]);
        }
      }
    }
    const std::size_t m = labels.size();
    std::vector<double> data(n_ * m, 0.0);
    for (std::size_t x = 0; x < n_; ++x) {
      for (const auto& [s, v] : rows[x]) data[x * m + column[s]] += v;
    }
    return Channel(n_, m, std::move(data), std::move(labels));
  }

 private:
  std::size_t n_;
  std::size_t k_;
  Rng rng_;
};

inline std::vector<Channel> sample_feasible_channels(std::size_t n,
                                                     std::size_t k,
                                                     std::size_t count,
                                                     std::uint64_t seed) {
  std::vector<Channel> out;
  if (count == 0) return out;
  FeasibleChannelStream stream(n, k, seed);
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(stream.next());
  return out;
}

struct BoundSweep {
  std::size_t channels = 0;
  std::size_t violations = 0;
  double worst_excess = -std::numeric_limits<double>::infinity();
  std::string worst_measure;
};

// Draws `count` feasible channels and counts measures whose conditional
// entropy exceeds H(pi) + tolerance.
inline BoundSweep bound_sweep(const Prior& p, std::size_t k,
                              const std::vector<EntropyMeasure>& measures,
                              std::size_t count, std::uint64_t seed,
                              double tolerance = tol::kAnalytical) {
  const auto pi = build_pi(p, k);
  std::vector<double> bounds;
  for (const auto& m : measures) bounds.push_back(entropy(m, pi));
  BoundSweep sweep;
  FeasibleChannelStream stream(p.size(), k, seed);
  for (std::size_t c = 0; c < count; ++c) {
    const auto table = posteriors(p, stream.next());
    ++sweep.channels;
    for (std::size_t i = 0; i < measures.size(); ++i) {
      const double excess = conditional_entropy(measures[i], table) - bounds[i];
      if (excess > sweep.worst_excess) {
        sweep.worst_excess = excess;
        sweep.worst_measure = describe(measures[i]);
      }
      if (excess > tolerance) ++sweep.violations;
    }
  }
  return sweep;
}

// ---------------------------------------------------------------------------
// Brute-force optimum for tiny instances.

namespace detail {

// All ways to write `total` as an ordered sum of `parts` non-negative ints.
inline void compositions(std::size_t total, std::size_t parts,
                         std::vector<std::size_t>& cur,
                         std::vector<std::vector<std::size_t>>& out) {
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (std::size_t v = 0; v <= total; ++v) {
    cur.push_back(v);
    compositions(total - v, parts - 1, cur, out);
    cur.pop_back();
  }
}

inline std::vector<SubsetLabel> all_subsets(std::size_t n, std::size_t k) {
  std::vector<SubsetLabel> out;
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask[i]) members.push_back(i);
    }
    out.emplace_back(std::move(members));
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

}  // namespace detail

// Best conditional entropy over channels whose outputs are the k-subsets and
// whose rows put multiples of 1/grid on the subsets containing each input.
// Outputs with smaller pre-images are covered because grid points may be 0.
inline double exhaustive_small_optimum(const EntropyMeasure& m,
                                       const Prior& p, std::size_t k,
                                       std::size_t grid_resolution,
                                       unsigned threads = 0) {
  const std::size_t n = p.size();
  if (n > 4 || k < 1 || k > 3 || k > n) {
    throw ValidationError("exhaustive_small_optimum supports n <= 4, k <= 3");
  }
  if (grid_resolution == 0) throw ValidationError("grid resolution must be >= 1");
  const auto outputs = detail::all_subsets(n, k);
  const std::size_t mo = outputs.size();
  std::vector<std::vector<std::size_t>> slots(n);
  for (std::size_t y = 0; y < mo; ++y) {
    for (std::size_t x : outputs[y].members()) slots[x].push_back(y);
  }
  std::vector<std::vector<std::vector<std::size_t>>> choices(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<std::size_t> cur;
    detail::compositions(grid_resolution, slots[x].size(), cur, choices[x]);
  }
  const double step = 1.0 / static_cast<double>(grid_resolution);

  auto evaluate_from = [&](std::size_t first_choice) {
    std::vector<double> joint(n * mo, 0.0);
    std::vector<double> post(n);
    std::vector<std::size_t> idx(n, 0);
    idx[0] = first_choice;
    double best = -std::numeric_limits<double>::infinity();
    for (;;) {
      std::fill(joint.begin(), joint.end(), 0.0);
      for (std::size_t x = 0; x < n; ++x) {
        const auto& c = choices[x][idx[x]];
        for (std::size_t s = 0; s < c.size(); ++s) {
          joint[x * mo + slots[x][s]] = p[x] * static_cast<double>(c[s]) * step;
        }
      }
      double acc = 0.0;
      for (std::size_t y = 0; y < mo; ++y) {
        double mass = 0.0;
        for (std::size_t x = 0; x < n; ++x) mass += joint[x * mo + y];
        if (mass <= 0.0) continue;
        for (std::size_t x = 0; x < n; ++x) post[x] = joint[x * mo + y] / mass;
        acc += mass * m.core(post);
      }
      best = std::max(best, m.eta(acc));
      // Odometer over rows 1..n-1; row 0 is fixed per worker.
      std::size_t x = 1;
      while (x < n) {
        if (++idx[x] < choices[x].size()) break;
        idx[x] = 0;
        ++x;
      }
      if (x == n) break;
    }
    return best;
  };

  const std::size_t firsts = choices[0].size();
  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, firsts));
  std::vector<double> best(workers, -std::numeric_limits<double>::infinity());
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t f = w; f < firsts; f += workers) {
        best[w] = std::max(best[w], evaluate_from(f));
      }
    });
  }
  for (auto& t : pool) t.join();
  return *std::max_element(best.begin(), best.end());
}

// ---------------------------------------------------------------------------
// One-dimensional maximization.

// Golden-section search for a maximizer of f on [lo, hi], stopping when the
// bracket is narrower than tol. Values within a relative 1e-14 count as a
// tie and keep the left part, so on a plateau it converges to the plateau's
// left end.
inline double golden_section_maximize(const std::function<double(double)>& f,
                                      double lo, double hi,
                                      double tol = 1e-6) {
  if (!(lo <= hi)) throw ValidationError("golden section: empty bracket");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    const double scale = 1.0 + std::max(std::abs(fc), std::abs(fd));
    if (fc >= fd - 1e-14 * scale) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Four secrets, outputs {a, b}; secret 1 may only show a, secrets 3 and 4
// only b, secret 2 either. The single free variable is x = p_2 * P(b | 2).
struct Counterexample {
  // The prior is not part of the constraint model; this default yields the
  // reference maximizers 0.1518, 0.2573 and 0.2998.
  std::vector<double> prior{0.19993, 0.49868, 0.15180, 0.14959};

  Channel channel_at(double x) const {
    const double p2 = prior[1];
    const double to_b = p2 > 0.0 ? x / p2 : 0.0;
    return Channel(4, 2, {1.0, 0.0, 1.0 - to_b, to_b, 0.0, 1.0, 0.0, 1.0},
                   {SubsetLabel{0, 1}, SubsetLabel{1, 2, 3}});
  }

  double conditional_entropy_at(const EntropyMeasure& m, double x) const {
    return conditional_entropy(m, prior, channel_at(x));
  }
};

inline double counterexample_optimize(const EntropyMeasure& m,
                                      const Counterexample& inst = {},
                                      double tol = 1e-6) {
  if (inst.prior.size() != 4) {
    throw ValidationError("counterexample prior must have 4 entries");
  }
  Prior check(inst.prior);  // validates
  (void)check;
  return golden_section_maximize(
      [&](double x) { return inst.conditional_entropy_at(m, x); }, 0.0,
      inst.prior[1], tol);
}

// ---------------------------------------------------------------------------
// Uniform baseline: every k-subset is an output and each input picks one of
// the C(n-1, k-1) subsets containing it uniformly.

// C(a, k-1) / C(n-1, k-1) as a running product.
inline double binomial_ratio(std::size_t a, std::size_t n_minus_1,
                             std::size_t r) {
  if (a < r) return 0.0;
  double v = 1.0;
  for (std::size_t t = 0; t < r; ++t) {
    v *= static_cast<double>(a - t) / static_cast<double>(n_minus_1 - t);
  }
  return v;
}

// Posterior vulnerability sum_i p(i) C(n-i, k-1)/C(n-1, k-1): the subsets
// whose most likely member is input i.
inline double baseline_vulnerability(const Prior& p, std::size_t k) {
  const std::size_t n = p.size();
  if (k < 1 || k > n) throw ValidationError("k out of range");
  double v = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    v += p[i] * binomial_ratio(n - 1 - i, n - 1, k - 1);
  }
  return v;
}

inline double baseline_uniform_leakage(const Prior& p, std::size_t k,
                                       Units u = Units::kNats) {
  return detail::log_in(baseline_vulnerability(p, k), u) -
         detail::log_in(p[0], u);
}

inline Channel baseline_channel(std::size_t n, std::size_t k) {
  if (k < 1 || k > n) throw ValidationError("k out of range");
  const auto outputs = detail::all_subsets(n, k);
  std::size_t per_input = 0;
  for (const auto& s : outputs) per_input += s.contains(0) ? 1 : 0;
  const std::size_t m = outputs.size();
  std::vector<double> data(n * m, 0.0);
  for (std::size_t y = 0; y < m; ++y) {
    for (std::size_t x : outputs[y].members()) {
      data[x * m + y] = 1.0 / static_cast<double>(per_input);
    }
  }
  return Channel(n, m, std::move(data), outputs);
}

// Same quantity by building the baseline channel explicitly. Keep n small.
inline double baseline_uniform_leakage_enumerated(const Prior& p,
                                                  std::size_t k,
                                                  Units u = Units::kNats) {
  if (p.size() > 16) {
    throw ValidationError("enumeration is limited to n <= 16");
  }
  return leakage(min_entropy(u), p, baseline_channel(p.size(), k));
}

// ---------------------------------------------------------------------------
// Informed vs ignorant adversary on the optimal channel.

struct AdversaryComparison {
  double informed_reward = 0.0;  // sum_y p(y) max_x p(x|y)
  double ignorant_reward = 0.0;  // uniform guess inside the pre-image
  double informed_entropy = 0.0;  // -log of the rewards
  double ignorant_entropy = 0.0;
};

inline AdversaryComparison adversary_comparison(const Prior& p, std::size_t k,
                                                Units u = Units::kNats) {
  const auto result = design(p, k);
  AdversaryComparison out;
  for (const auto& o : posteriors(p, result.channel).outputs) {
    out.informed_reward +=
        o.mass * *std::max_element(o.posterior.begin(), o.posterior.end());
    out.ignorant_reward += o.mass / static_cast<double>(o.support.size());
  }
  out.informed_entropy = -detail::log_in(out.informed_reward, u);
  out.ignorant_entropy = -detail::log_in(out.ignorant_reward, u);
  return out;
}

}  // namespace leakmin

#endif  // LEAKMIN_ORACLE_HPP_
