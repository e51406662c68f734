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
// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "leakmin/leakmin.hpp"

using namespace leakmin;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Instance {
  Prior prior;
};

// Shared by criteria 3 and 4.
std::vector<Prior> random_priors(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> dim(2, 10);
  std::vector<Prior> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_prior(rng, dim(rng)));
  return out;
}

double max_abs_diff(const Channel& ch, const std::vector<std::vector<double>>& rows) {
  if (ch.inputs() != rows.size() || ch.outputs() != rows.front().size()) return INFINITY;
  double worst = 0.0;
  for (std::size_t x = 0; x < rows.size(); ++x) {
    for (std::size_t y = 0; y < rows[x].size(); ++y) {
      worst = std::max(worst, std::abs(ch(x, y) - rows[x][y]));
    }
  }
  return worst;
}

Outcome c1_worked_examples() {
  struct Case {
    std::vector<double> p;
    std::size_t jstar;
    std::vector<double> pi;
    std::vector<std::vector<double>> matrix;
  };
  const std::vector<Case> cases{
      {{0.3, 0.28, 0.22, 0.2}, 1, {1.0 / 3, 1.0 / 3, 1.0 / 3},
       {{0.4444, 0.3778, 0.1778, 0}, {0.4762, 0.4048, 0, 0.1190},
        {0.6061, 0, 0.2424, 0.1515}, {0, 0.5667, 0.2667, 0.1667}}},
      {{0.36, 0.3, 0.2, 0.14}, 2, {0.36, 0.32, 0.32},
       {{0.5625, 0.375, 0.0625}, {0.6, 0.4, 0}, {0.9, 0, 0.1},
        {0, 0.8571, 0.1429}}},
      {{0.4, 0.35, 0.15, 0.1}, 3, {0.40, 0.35, 0.25},
       {{0.6, 0.4}, {0.6, 0.4}, {1, 0}, {0, 1}}}};
  Outcome o;
  double worst = 0.0;
  for (const auto& c : cases) {
    const auto r = design(Prior(c.p), 3);
    if (r.jstar != c.jstar) o.pass = false;
    for (std::size_t i = 0; i < 3; ++i) {
      if (std::abs(r.pi[i] - c.pi[i]) > 1e-12) o.pass = false;
    }
    worst = std::max(worst, max_abs_diff(r.channel, c.matrix));
  }
  if (worst > 1e-3) o.pass = false;
  o.detail = "max matrix deviation " + fmt("%.2e", worst);
  return o;
}

Outcome c2_joint_constancy() {
  const Prior p({0.3, 0.28, 0.22, 0.2});
  const auto r = design(p, 3);
  const std::vector<double> expected{0.1333, 0.1133, 0.0533, 0.0333};
  std::vector<double> got;
  // Each output's joint p(x, y) is the same for every member of its label.
  double spread = 0.0;
  for (std::size_t y = 0; y < r.channel.outputs(); ++y) {
    double lo = INFINITY;
    double hi = -INFINITY;
    for (std::size_t x : r.channel.label(y).members()) {
      const double j = p[x] * r.channel(x, y);
      lo = std::min(lo, j);
      hi = std::max(hi, j);
    }
    spread = std::max(spread, hi - lo);
    got.push_back(hi);
  }
  std::sort(got.begin(), got.end(), std::greater<>());
  Outcome o;
  double worst = got.size() == 4 ? 0.0 : INFINITY;
  for (std::size_t i = 0; i < got.size() && i < 4; ++i) {
    worst = std::max(worst, std::abs(got[i] - expected[i]));
  }
  o.pass = worst <= 1e-3 && spread <= 1e-12;
  o.detail = "max deviation " + fmt("%.2e", worst) + ", within-output spread " +
             fmt("%.1e", spread);
  return o;
}

Outcome c3_metric_invariance(const std::vector<Prior>& priors) {
  double worst = 0.0;
  std::size_t checks = 0;
  for (const auto& p : priors) {
    for (std::size_t k = 1; k <= p.size(); ++k) {
      const auto r = design(p, k);
      const auto table = posteriors(p, r.channel);
      for (const auto& m : reference_measures(k)) {
        worst = std::max(worst, std::abs(conditional_entropy(m, table) -
                                         entropy(m, r.pi)));
        ++checks;
      }
    }
  }
  return {worst <= 1e-9, std::to_string(checks) + " checks, max |H(X|Y) - H(pi)| " +
                             fmt("%.2e", worst)};
}

Outcome c4_optimality(const std::vector<Prior>& priors) {
  std::size_t violations = 0;
  std::size_t channels = 0;
  double worst = -INFINITY;
  for (std::size_t i = 0; i < priors.size(); ++i) {
    const auto& p = priors[i];
    for (std::size_t k = 1; k <= p.size(); ++k) {
      const auto s = bound_sweep(p, k, reference_measures(k), 1000, 1000 * i + k);
      violations += s.violations;
      channels += s.channels;
      worst = std::max(worst, s.worst_excess);
    }
  }
  return {violations == 0, std::to_string(channels) + " channels, " +
                               std::to_string(violations) +
                               " violations, max excess " + fmt("%.2e", worst)};
}

Outcome c5_closed_forms() {
  Rng rng(5);
  std::uniform_int_distribution<std::size_t> dim(1, 12);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const auto p = random_prior(rng, dim(rng));
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, p.size())(rng);
    const std::size_t l = std::uniform_int_distribution<std::size_t>(1, k)(rng);
    const auto pi = build_pi(p, k);
    worst = std::max({worst,
                      std::abs(closed_form_min_entropy(p, k) - entropy(min_entropy(), pi)),
                      std::abs(closed_form_lguess(p, k, l) - entropy(l_guess(l), pi)),
                      std::abs(closed_form_guesswork(p, k) - entropy(guesswork(), pi))});
  }
  return {worst <= 1e-12, "max deviation " + fmt("%.2e", worst)};
}

Outcome c6_leakage_curve() {
  const auto p = Prior::linear_decay(30);
  Outcome o;
  std::vector<std::string> notes;
  for (std::size_t k = 1; k <= 30; ++k) {
    const double me = min_leakage_closed_form(min_entropy(), p, k);
    const double sh = min_leakage_closed_form(shannon(), p, k);
    if (k >= 16 ? me != 0.0 : !(me > 0.0)) {
      o.pass = false;
      notes.push_back("min-entropy at k=" + std::to_string(k));
    }
    if (k <= 29 ? !(sh > 0.0) : sh != 0.0) {
      o.pass = false;
      notes.push_back("shannon at k=" + std::to_string(k));
    }
  }
  for (const auto& m : {shannon(), log_guesswork(), min_entropy()}) {
    for (std::size_t k = 2; k <= 30; ++k) {
      if (min_leakage_closed_form(m, p, k) > min_leakage_closed_form(m, p, k - 1)) {
        o.pass = false;
        notes.push_back(describe(m) + " increases at k=" + std::to_string(k));
      }
    }
  }
  o.detail = notes.empty() ? "min-entropy zero from k=16, shannon zero only at k=30, "
                             "curves non-increasing"
                           : notes.front();
  return o;
}

Outcome c7_counterexample() {
  const double g = counterexample_optimize(guesswork());
  const double r = counterexample_optimize(renyi_arimoto(2.0));
  const double s = counterexample_optimize(shannon());
  const bool ok = std::abs(g - 0.1518) <= 1e-3 && std::abs(r - 0.2573) <= 1e-3 &&
                  std::abs(s - 0.2998) <= 1e-3;
  return {ok, "guesswork " + fmt("%.4f", g) + ", renyi-2 " + fmt("%.4f", r) +
                  ", shannon " + fmt("%.4f", s)};
}

Outcome c8_dpi() {
  Rng rng(8);
  std::uniform_int_distribution<std::size_t> dim(2, 6);
  std::size_t violations = 0;
  double worst = 0.0;
  const auto measures = reference_measures(4);
  for (const auto& m : measures) {
    for (int t = 0; t < 1000; ++t) {
      const std::size_t n = dim(rng);
      const std::size_t a = dim(rng);
      const auto p = random_simplex(rng, n, 0.7);
      const auto xy = t % 2 ? random_sparse_channel(rng, n, a)
                            : random_channel(rng, n, a);
      const auto yz = random_sparse_channel(rng, a, dim(rng));
      const auto xz = compose(xy, yz);
      const double hy = conditional_entropy(m, p, xy);
      const double hz = conditional_entropy(m, p, xz);
      const double gap = std::max(hy - hz, -leakage(m, p, xy));
      worst = std::max(worst, gap);
      if (hz < hy - 1e-9 || leakage(m, p, xy) < -1e-9) ++violations;
    }
  }
  return {violations == 0, std::to_string(measures.size()) + " measures x 1000, " +
                               std::to_string(violations) + " violations, worst " +
                               fmt("%.2e", worst)};
}

Outcome c9_cre() {
  Outcome o;
  const struct {
    const char* name;
    RenyiConditional v;
    double alpha;
  } variants[] = {{"a", RenyiConditional::kAveraged, 2.0},
                  {"b", RenyiConditional::kJointMinusOutput, 2.0},
                  {"c", RenyiConditional::kWorstCase, 0.5}};
  for (const auto& v : variants) {
    const auto hit = find_cre_violation(v.v, v.alpha, 100000);
    if (!hit) {
      o.pass = false;
      o.detail += std::string(v.name) + ": none; ";
    } else {
      o.detail += std::string(v.name) + ": trial " + std::to_string(hit->trial) +
                  " excess " + fmt("%.3g", hit->conditional - hit->unconditional) +
                  "; ";
    }
  }
  return o;
}

Outcome c10_gain() {
  Rng rng(10);
  std::uniform_int_distribution<std::size_t> dim(2, 8);
  Outcome o;
  double worst_leak = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = dim(rng);
    const auto p = random_simplex(rng, n);
    const auto ch = random_sparse_channel(rng, n, dim(rng));
    const auto gamma = random_gains(rng, n, 0.2);
    const auto g = GainSpec::diagonal(gamma);
    for (const auto& m : reference_measures(3)) {
      const double scale = std::max(1.0, std::abs(g_entropy(m, p, g)));
      worst_leak = std::min(worst_leak, g_leakage(m, p, ch, g) / scale);
    }
  }
  if (worst_leak < -1e-9) o.pass = false;

  bool identical = true;
  for (int t = 0; t < 200; ++t) {
    const auto p = random_prior(rng, dim(rng));
    for (std::size_t k = 1; k <= p.size(); ++k) {
      const auto a = design(p, k);
      const auto b = design_with_gain(p, k, GainSpec::ones(p.size()));
      identical = identical && a.jstar == b.jstar && a.pi == b.pi &&
                  a.channel.data() == b.channel.data() &&
                  a.permutation == b.permutation && a.weights == b.weights;
    }
  }
  if (!identical) o.pass = false;

  double worst_form = 0.0;
  double worst_excess = -INFINITY;
  for (int t = 0; t < 20; ++t) {
    const auto p = random_prior(rng, dim(rng));
    const auto gamma = random_gains(rng, p.size(), 0.25);
    const auto g = GainSpec::diagonal(gamma);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, p.size())(rng);
    const auto r = design_with_gain(p, k, g);
    const auto ch = r.channel_in_original_labels();
    const auto probs = p.original();
    const auto measures = reference_measures(k);
    std::vector<double> achieved;
    // Deviations are measured relative to max(1, |H|): small gains push
    // some measures far from unit scale.
    std::vector<double> scale;
    for (const auto& m : measures) {
      achieved.push_back(g_conditional_entropy(m, probs, ch, g));
      scale.push_back(std::max(1.0, std::abs(achieved.back())));
      worst_form = std::max(worst_form,
                            std::abs(achieved.back() - g_optimal_conditional(m, r.pi)) /
                                scale.back());
    }
    FeasibleChannelStream stream(p.size(), k, 500 + t);
    for (int c = 0; c < 1000; ++c) {
      const auto s = stream.next();
      for (std::size_t i = 0; i < measures.size(); ++i) {
        worst_excess = std::max(worst_excess,
                                (g_conditional_entropy(measures[i], probs, s, g) -
                                 achieved[i]) / scale[i]);
      }
    }
  }
  if (worst_form > 1e-9 || worst_excess > 1e-9 || !validate_channel(
          design_with_gain(Prior({0.5, 0.3, 0.2}), 2, GainSpec::diagonal({0, 1, 1}))
              .channel_in_original_labels(), 2).ok) {
    o.pass = false;
  }
  o.detail = "min relative g-leakage " + fmt("%.2e", worst_leak) + ", unit gains " +
             (identical ? "identical" : "DIFFER") + ", closed form " +
             fmt("%.2e", worst_form) + ", max excess over design " +
             fmt("%.2e", worst_excess);
  return o;
}

Outcome c11_exhaustive() {
  const std::size_t grid = 8;
  const std::vector<std::vector<double>> priors{{0.4, 0.35, 0.15, 0.1},
                                                {0.36, 0.3, 0.2, 0.14},
                                                {0.5, 0.3, 0.2}};
  Outcome o;
  double worst_gap = 0.0;
  double worst_over = -INFINITY;
  for (const auto& v : priors) {
    const Prior p(v);
    for (std::size_t k = 2; k <= std::min<std::size_t>(3, p.size()); ++k) {
      for (const auto& m : {shannon(), min_entropy(), guesswork()}) {
        const double best = exhaustive_small_optimum(m, p, k, grid);
        const double bound = entropy(m, build_pi(p, k));
        worst_gap = std::max(worst_gap, bound - best);
        worst_over = std::max(worst_over, best - bound);
      }
    }
  }
  o.pass = worst_gap <= 2.0 / grid && worst_over <= 1e-9;
  o.detail = "grid " + std::to_string(grid) + ", max gap " + fmt("%.3g", worst_gap) +
             ", max excess " + fmt("%.2e", worst_over);
  return o;
}

Outcome c12_baseline() {
  Rng rng(12);
  double worst = 0.0;
  for (std::size_t n = 1; n <= 12; ++n) {
    for (const auto& p : {random_prior(rng, n), Prior::linear_decay(n)}) {
      for (std::size_t k = 1; k <= n; ++k) {
        worst = std::max(worst, std::abs(baseline_uniform_leakage(p, k) -
                                         baseline_uniform_leakage_enumerated(p, k)));
      }
    }
  }
  const auto pv = Prior::linear_decay(30);
  bool dominated = true;
  for (std::size_t k = 1; k <= 30; ++k) {
    dominated = dominated && min_leakage_closed_form(min_entropy(), pv, k) <=
                                 baseline_uniform_leakage(pv, k) + 1e-12;
  }
  return {worst <= 1e-10 && dominated,
          "analytic vs enumeration " + fmt("%.2e", worst) +
              (dominated ? ", optimal <= baseline for k=1..30"
                         : ", optimal exceeds baseline")};
}

}  // namespace

int main() {
  const auto priors = random_priors(500, 2026);
  struct Criterion {
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"1 worked examples", 1.0, c1_worked_examples},
      {"2 joint constancy", 0.0, c2_joint_constancy},
      {"3 metric invariance", 60.0, [&] { return c3_metric_invariance(priors); }},
      {"4 optimality bound", 300.0, [&] { return c4_optimality(priors); }},
      {"5 closed forms", 0.0, c5_closed_forms},
      {"6 leakage curve", 0.0, c6_leakage_curve},
      {"7 counterexample", 0.0, c7_counterexample},
      {"8 data processing", 0.0, c8_dpi},
      {"9 legacy renyi violations", 0.0, c9_cre},
      {"10 gain extension", 0.0, c10_gain},
      {"11 exhaustive small instances", 0.0, c11_exhaustive},
      {"12 baseline formula", 0.0, c12_baseline},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_seconds > 0.0 && secs > c.limit_seconds) {
      o.pass = false;
      o.detail += " (over time limit " + fmt("%.0f", c.limit_seconds) + " s)";
    }
    if (!o.pass) ++failed;
    std::printf("%s  criterion %-32s %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed;
}
