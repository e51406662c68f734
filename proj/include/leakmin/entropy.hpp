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
#ifndef LEAKMIN_ENTROPY_HPP_
#define LEAKMIN_ENTROPY_HPP_

// Generalized entropies of the form
//
//   H(X)   = eta(F(p))
//   H(X|Y) = eta( sum_{y : p(y) > 0} p(y) F(p_{X|y}) )
//
// where F is symmetric and expansible, and (eta, F) is either
// (increasing, concave) or (decreasing, convex). Every concrete measure in
// the catalog below is one such pair.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "leakmin/errors.hpp"
#include "leakmin/probcore.hpp"
#include "leakmin/sampling.hpp"

namespace leakmin {

enum class Monotonicity { kIncreasing, kDecreasing };
enum class Curvature { kConcave, kConvex };

// Logarithm base for the log-based measures.
enum class Units { kNats, kBits };

namespace detail {

inline double log_in(double x, Units u) {
  return u == Units::kBits ? std::log2(x) : std::log(x);
}
inline double exp_in(double x, Units u) {
  return u == Units::kBits ? std::exp2(x) : std::exp(x);
}

inline std::vector<double> sorted_desc(std::span<const double> p) {
  std::vector<double> v(p.begin(), p.end());
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

inline void check_alpha(double alpha, const char* who) {
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha == 1.0) {
    throw ValidationError(std::string(who) +
                          ": alpha must be positive, finite and != 1 "
                          "(use the Shannon constructor for alpha = 1)");
  }
}

}  // namespace detail

// ||p||_alpha, computed relative to max(p) so large alpha does not underflow.
inline double lp_norm(std::span<const double> p, double alpha) {
  double top = 0.0;
  for (double x : p) top = std::max(top, x);
  if (top == 0.0) return 0.0;
  double s = 0.0;
  for (double x : p) {
    if (x > 0.0) s += std::pow(x / top, alpha);
  }
  return top * std::pow(s, 1.0 / alpha);
}

// sum_i p_i^alpha over the support (0^alpha = 0).
inline double power_sum(std::span<const double> p, double alpha) {
  double s = 0.0;
  for (double x : p) {
    if (x > 0.0) s += std::pow(x, alpha);
  }
  return s;
}

// An (eta, F) pair. Immutable; copying is cheap enough for the catalog sizes
// used here.
class EntropyMeasure {
 public:
  using ScalarFn = std::function<double(double)>;
  using CoreFn = std::function<double(std::span<const double>)>;

  EntropyMeasure(std::string name, std::vector<double> params, ScalarFn eta,
                 Monotonicity eta_direction, CoreFn core, Curvature curvature,
                 ScalarFn eta_inverse = {})
      : name_(std::move(name)),
        params_(std::move(params)),
        eta_(std::move(eta)),
        eta_inverse_(std::move(eta_inverse)),
        core_(std::move(core)),
        direction_(eta_direction),
        curvature_(curvature) {
    const bool core_concave =
        (direction_ == Monotonicity::kIncreasing &&
         curvature_ == Curvature::kConcave) ||
        (direction_ == Monotonicity::kDecreasing &&
         curvature_ == Curvature::kConvex);
    if (!core_concave) {
      throw ValidationError(name_ +
                            ": (eta, F) must be (increasing, concave) or "
                            "(decreasing, convex)");
    }
    if (!eta_ || !core_) throw ValidationError(name_ + ": missing eta or F");
  }

  const std::string& name() const { return name_; }
  const std::vector<double>& params() const { return params_; }
  Monotonicity eta_direction() const { return direction_; }
  Curvature curvature() const { return curvature_; }

  double eta(double x) const { return eta_(x); }
  double core(std::span<const double> p) const { return core_(p); }

  bool invertible() const { return static_cast<bool>(eta_inverse_); }
  double eta_inverse(double h) const {
    if (!eta_inverse_) throw ValidationError(name_ + ": eta is not invertible");
    return eta_inverse_(h);
  }

 private:
  std::string name_;
  std::vector<double> params_;
  ScalarFn eta_;
  ScalarFn eta_inverse_;
  CoreFn core_;
  Monotonicity direction_;
  Curvature curvature_;
};

// ---------------------------------------------------------------------------
// Catalog

inline EntropyMeasure shannon(Units u = Units::kNats) {
  return EntropyMeasure(
      "shannon", {}, [](double x) { return x; }, Monotonicity::kIncreasing,
      [u](std::span<const double> p) {
        double h = 0.0;
        for (double x : p) {
          if (x > 0.0) h -= x * detail::log_in(x, u);
        }
        return h;
      },
      Curvature::kConcave, [](double h) { return h; });
}

// -log ||p||_inf
inline EntropyMeasure min_entropy(Units u = Units::kNats) {
  return EntropyMeasure(
      "min", {}, [u](double x) { return -detail::log_in(x, u); },
      Monotonicity::kDecreasing,
      [](std::span<const double> p) {
        double top = 0.0;
        for (double x : p) top = std::max(top, x);
        return top;
      },
      Curvature::kConvex, [u](double h) { return detail::exp_in(-h, u); });
}

// Probability that none of the l best guesses is right: 1 - sum_{i<=l} p[i].
inline EntropyMeasure l_guess(std::size_t l) {
  if (l == 0) throw ValidationError("lguess: l must be >= 1");
  return EntropyMeasure(
      "lguess", {static_cast<double>(l)}, [](double x) { return x; },
      Monotonicity::kIncreasing,
      [l](std::span<const double> p) {
        auto v = detail::sorted_desc(p);
        double top = 0.0;
        for (std::size_t i = 0; i < std::min(l, v.size()); ++i) top += v[i];
        return 1.0 - top;
      },
      Curvature::kConcave, [](double h) { return h; });
}

// Expected number of guesses: sum_i i * p[i].
inline EntropyMeasure guesswork() {
  return EntropyMeasure(
      "guesswork", {}, [](double x) { return x; }, Monotonicity::kIncreasing,
      [](std::span<const double> p) {
        auto v = detail::sorted_desc(p);
        double g = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
          g += static_cast<double>(i + 1) * v[i];
        }
        return g;
      },
      Curvature::kConcave, [](double h) { return h; });
}

// log(guesswork), used to put guesswork on the same scale as the log-based
// measures.
inline EntropyMeasure log_guesswork(Units u = Units::kNats) {
  const auto g = guesswork();
  return EntropyMeasure(
      "log-guesswork", {}, [u](double x) { return detail::log_in(x, u); },
      Monotonicity::kIncreasing,
      [g](std::span<const double> p) { return g.core(p); },
      Curvature::kConcave, [u](double h) { return detail::exp_in(h, u); });
}

// Arimoto: eta(x) = alpha/(1-alpha) log x, F = ||p||_alpha.
inline EntropyMeasure renyi_arimoto(double alpha, Units u = Units::kNats) {
  detail::check_alpha(alpha, "renyi-arimoto");
  const double c = alpha / (1.0 - alpha);
  const bool low = alpha < 1.0;
  return EntropyMeasure(
      "renyi-arimoto", {alpha},
      [c, u](double x) { return c * detail::log_in(x, u); },
      low ? Monotonicity::kIncreasing : Monotonicity::kDecreasing,
      [alpha](std::span<const double> p) { return lp_norm(p, alpha); },
      low ? Curvature::kConcave : Curvature::kConvex,
      [c, u](double h) { return detail::exp_in(h / c, u); });
}

// Hayashi: eta(x) = 1/(1-alpha) log x, F = sum p^alpha.
inline EntropyMeasure renyi_hayashi(double alpha, Units u = Units::kNats) {
  detail::check_alpha(alpha, "renyi-hayashi");
  const double c = 1.0 / (1.0 - alpha);
  const bool low = alpha < 1.0;
  return EntropyMeasure(
      "renyi-hayashi", {alpha},
      [c, u](double x) { return c * detail::log_in(x, u); },
      low ? Monotonicity::kIncreasing : Monotonicity::kDecreasing,
      [alpha](std::span<const double> p) { return power_sum(p, alpha); },
      low ? Curvature::kConcave : Curvature::kConvex,
      [c, u](double h) { return detail::exp_in(h / c, u); });
}

// Fehr-Berens: eta(x) = -log x, F = ||p||_alpha^(alpha/(alpha-1)), convex for
// every admissible alpha.
inline EntropyMeasure renyi_fehr_berens(double alpha, Units u = Units::kNats) {
  detail::check_alpha(alpha, "renyi-fehr-berens");
  const double e = alpha / (alpha - 1.0);
  return EntropyMeasure(
      "renyi-fehr-berens", {alpha},
      [u](double x) { return -detail::log_in(x, u); },
      Monotonicity::kDecreasing,
      [alpha, e](std::span<const double> p) {
        return std::pow(lp_norm(p, alpha), e);
      },
      Curvature::kConvex, [u](double h) { return detail::exp_in(-h, u); });
}

// Sharma-Mittal: eta(x) = (1 - x^((1-beta)/(1-alpha))) / (beta-1),
// F = sum p^alpha. At beta = 1 this is the Hayashi-form Renyi measure.
inline EntropyMeasure sharma_mittal(double alpha, double beta) {
  detail::check_alpha(alpha, "sharma-mittal");
  if (!std::isfinite(beta) || beta == 1.0) {
    throw ValidationError(
        "sharma-mittal: beta must be finite and != 1 (use the Renyi "
        "constructor for beta = 1)");
  }
  const double e = (1.0 - beta) / (1.0 - alpha);
  const bool low = alpha < 1.0;
  return EntropyMeasure(
      "sharma-mittal", {alpha, beta},
      [e, beta](double x) { return (1.0 - std::pow(x, e)) / (beta - 1.0); },
      low ? Monotonicity::kIncreasing : Monotonicity::kDecreasing,
      [alpha](std::span<const double> p) { return power_sum(p, alpha); },
      low ? Curvature::kConcave : Curvature::kConvex,
      [e, beta](double h) { return std::pow(1.0 - (beta - 1.0) * h, 1.0 / e); });
}

// Tsallis: Sharma-Mittal with beta = alpha, eta(x) = (1 - x)/(alpha - 1).
inline EntropyMeasure tsallis(double alpha) {
  detail::check_alpha(alpha, "tsallis");
  const bool low = alpha < 1.0;
  return EntropyMeasure(
      "tsallis", {alpha},
      [alpha](double x) { return (1.0 - x) / (alpha - 1.0); },
      low ? Monotonicity::kIncreasing : Monotonicity::kDecreasing,
      [alpha](std::span<const double> p) { return power_sum(p, alpha); },
      low ? Curvature::kConcave : Curvature::kConvex,
      [alpha](double h) { return 1.0 - (alpha - 1.0) * h; });
}

// Parses "shannon", "min", "guesswork", "log-guesswork", "lguess:3",
// "renyi-arimoto:2", "renyi-hayashi:2", "renyi-fehr-berens:2",
// "sharma-mittal:0.5:2", "tsallis:2". Renyi forms at alpha = 1 resolve to
// Shannon and Sharma-Mittal at beta = 1 to Hayashi-form Renyi.
inline EntropyMeasure parse_measure(const std::string& spec,
                                    Units u = Units::kNats) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = spec.find(':', start);
    parts.push_back(spec.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  const std::string& head = parts[0];
  auto num = [&](std::size_t i) -> double {
    if (i >= parts.size()) {
      throw ValidationError("measure '" + spec + "' is missing a parameter");
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(parts[i], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != parts[i].size() || parts[i].empty()) {
      throw ValidationError("measure '" + spec + "': bad number '" + parts[i] +
                            "'");
    }
    return v;
  };
  auto arity = [&](std::size_t n) {
    if (parts.size() != n + 1) {
      throw ValidationError("measure '" + spec + "' expects " +
                            std::to_string(n) + " parameter(s)");
    }
  };
  if (head == "shannon") {
    arity(0);
    return shannon(u);
  }
  if (head == "min" || head == "min-entropy") {
    arity(0);
    return min_entropy(u);
  }
  if (head == "guesswork") {
    arity(0);
    return guesswork();
  }
  if (head == "log-guesswork") {
    arity(0);
    return log_guesswork(u);
  }
  if (head == "lguess") {
    arity(1);
    const double l = num(1);
    if (l < 1.0 || l != std::floor(l)) {
      throw ValidationError("lguess: l must be a positive integer");
    }
    return l_guess(static_cast<std::size_t>(l));
  }
  if (head == "renyi-arimoto" || head == "renyi-hayashi" ||
      head == "renyi-fehr-berens") {
    arity(1);
    const double a = num(1);
    if (a == 1.0) return shannon(u);
    if (head == "renyi-arimoto") return renyi_arimoto(a, u);
    if (head == "renyi-hayashi") return renyi_hayashi(a, u);
    return renyi_fehr_berens(a, u);
  }
  if (head == "sharma-mittal") {
    arity(2);
    const double a = num(1);
    const double b = num(2);
    if (b == 1.0) return a == 1.0 ? shannon(u) : renyi_hayashi(a, u);
    return sharma_mittal(a, b);
  }
  if (head == "tsallis") {
    arity(1);
    return tsallis(num(1));
  }
  throw ValidationError("unknown measure '" + spec + "'");
}

// The measure set used by the invariance and optimality sweeps: Shannon,
// min-entropy, guesswork, l-guess for l = 1..k, the three DPI-respecting
// Renyi conditionals at alpha in {0.5, 2, 5}, Sharma-Mittal on
// {0.5, 2} x {0.5, 3} and Tsallis at {0.5, 2}.
inline std::vector<EntropyMeasure> reference_measures(std::size_t k) {
  std::vector<EntropyMeasure> out{shannon(), min_entropy(), guesswork()};
  for (std::size_t l = 1; l <= k; ++l) out.push_back(l_guess(l));
  for (double a : {0.5, 2.0, 5.0}) {
    out.push_back(renyi_arimoto(a));
    out.push_back(renyi_hayashi(a));
    out.push_back(renyi_fehr_berens(a));
  }
  for (double a : {0.5, 2.0}) {
    for (double b : {0.5, 3.0}) out.push_back(sharma_mittal(a, b));
  }
  out.push_back(tsallis(0.5));
  out.push_back(tsallis(2.0));
  return out;
}

inline std::string describe(const EntropyMeasure& m) {
  std::string s = m.name();
  for (double p : m.params()) {
    std::string v = std::to_string(p);
    v.erase(v.find_last_not_of('0') + 1);
    if (!v.empty() && v.back() == '.') v.pop_back();
    s += ":" + v;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Evaluation

inline double entropy(const EntropyMeasure& m, std::span<const double> p) {
  return m.eta(m.core(p));
}
inline double entropy(const EntropyMeasure& m, const Prior& p) {
  return entropy(m, p.sorted());
}

inline double conditional_entropy(const EntropyMeasure& m,
                                  const PosteriorTable& table) {
  double acc = 0.0;
  for (const auto& o : table.outputs) acc += o.mass * m.core(o.posterior);
  return m.eta(acc);
}

// p is aligned with the channel rows.
inline double conditional_entropy(const EntropyMeasure& m,
                                  std::span<const double> p,
                                  const Channel& ch) {
  return conditional_entropy(m, posteriors(p, ch));
}
inline double conditional_entropy(const EntropyMeasure& m, const Prior& p,
                                  const Channel& ch) {
  return conditional_entropy(m, p.sorted(), ch);
}

inline double leakage(const EntropyMeasure& m, std::span<const double> p,
                      const Channel& ch) {
  return entropy(m, p) - conditional_entropy(m, p, ch);
}
inline double leakage(const EntropyMeasure& m, const Prior& p,
                      const Channel& ch) {
  return leakage(m, p.sorted(), ch);
}

// eta( sum_y p(y) eta^-1(H(p_{X|y})) ): the Kolmogorov-Nagumo mean of the
// per-output entropies. Agrees with conditional_entropy whenever eta is
// strictly monotone.
inline double kn_average_form(const EntropyMeasure& m,
                              std::span<const double> p, const Channel& ch) {
  if (!m.invertible()) {
    throw ValidationError(m.name() + ": eta has no inverse");
  }
  const auto table = posteriors(p, ch);
  double acc = 0.0;
  for (const auto& o : table.outputs) {
    acc += o.mass * m.eta_inverse(entropy(m, o.posterior));
  }
  return m.eta(acc);
}

// ---------------------------------------------------------------------------
// Conditional Renyi variants, including the three that violate
// "conditioning reduces entropy".

enum class RenyiConditional {
  kAveraged,           // sum_y p(y) H_alpha(p_{X|y})
  kJointMinusOutput,   // H_alpha(XY) - H_alpha(Y)
  kWorstCase,          // 1/(1-alpha) max_y log ||p_{X|y}||_alpha^alpha
  kArimoto,
  kHayashi,
  kFehrBerens,
};

inline double renyi(std::span<const double> p, double alpha) {
  detail::check_alpha(alpha, "renyi");
  return std::log(power_sum(p, alpha)) / (1.0 - alpha);
}

inline double renyi_conditional(RenyiConditional variant, double alpha,
                                std::span<const double> p, const Channel& ch) {
  detail::check_alpha(alpha, "renyi conditional");
  switch (variant) {
    case RenyiConditional::kArimoto:
      return conditional_entropy(renyi_arimoto(alpha), p, ch);
    case RenyiConditional::kHayashi:
      return conditional_entropy(renyi_hayashi(alpha), p, ch);
    case RenyiConditional::kFehrBerens:
      return conditional_entropy(renyi_fehr_berens(alpha), p, ch);
    default:
      break;
  }
  const auto table = posteriors(p, ch);
  if (variant == RenyiConditional::kAveraged) {
    double acc = 0.0;
    for (const auto& o : table.outputs) acc += o.mass * renyi(o.posterior, alpha);
    return acc;
  }
  if (variant == RenyiConditional::kJointMinusOutput) {
    double joint = 0.0;
    double out = 0.0;
    for (const auto& o : table.outputs) {
      for (double q : o.posterior) joint += std::pow(o.mass * q, alpha);
      out += std::pow(o.mass, alpha);
    }
    return std::log(joint / out) / (1.0 - alpha);
  }
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& o : table.outputs) {
    worst = std::max(worst, std::log(power_sum(o.posterior, alpha)));
  }
  return worst / (1.0 - alpha);
}

// The three non-monotone legacy definitions only.
inline double legacy_renyi_conditional(RenyiConditional variant, double alpha,
                                       std::span<const double> p,
                                       const Channel& ch) {
  if (variant != RenyiConditional::kAveraged &&
      variant != RenyiConditional::kJointMinusOutput &&
      variant != RenyiConditional::kWorstCase) {
    throw ValidationError("legacy_renyi_conditional takes variants a, b or c");
  }
  return renyi_conditional(variant, alpha, p, ch);
}

struct CreViolation {
  std::vector<double> prior;
  Channel channel;
  double conditional = 0.0;
  double unconditional = 0.0;
  std::size_t trial = 0;
};

// Random search over 2-3 input, 2-3 output systems for an instance where the
// conditional entropy exceeds the unconditional one by more than margin.
inline std::optional<CreViolation> find_cre_violation(
    RenyiConditional variant, double alpha, std::size_t trials,
    std::uint64_t seed = 1, double margin = 1e-6) {
  detail::check_alpha(alpha, "find_cre_violation");
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> dim(2, 3);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t n = dim(rng);
    const std::size_t m = dim(rng);
    auto p = random_simplex(rng, n);
    auto ch = random_channel(rng, n, m);
    const double cond = renyi_conditional(variant, alpha, p, ch);
    const double uncond = renyi(p, alpha);
    if (cond > uncond + margin) {
      return CreViolation{std::move(p), std::move(ch), cond, uncond, t + 1};
    }
  }
  return std::nullopt;
}

}  // namespace leakmin

#endif  // LEAKMIN_ENTROPY_HPP_
