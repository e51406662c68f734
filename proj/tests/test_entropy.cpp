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
#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "leakmin/entropy.hpp"
#include "leakmin/sampling.hpp"

namespace leakmin {
namespace {

// Reference values below were computed independently at 40 digits.
const std::vector<double> kP2{0.36, 0.3, 0.2, 0.14};
const std::vector<double> kSmallPrior{0.5, 0.3, 0.2};
Channel small_channel() {
  return Channel::from_rows({{0.9, 0.1}, {0.4, 0.6}, {0.0, 1.0}});
}

TEST(Entropy, CatalogValues) {
  EXPECT_NEAR(entropy(shannon(), kP2), 1.3261296727883107, 1e-14);
  EXPECT_NEAR(entropy(min_entropy(), kP2), 1.0216512475319814, 1e-14);
  EXPECT_NEAR(entropy(guesswork(), kP2), 2.12, 1e-14);
  EXPECT_NEAR(entropy(l_guess(2), kP2), 0.34, 1e-14);
  EXPECT_NEAR(entropy(renyi_arimoto(2.0), kP2), 1.2758269080939196, 1e-13);
  EXPECT_NEAR(entropy(renyi_hayashi(0.5), kP2), 1.3551550925047003, 1e-13);
  EXPECT_NEAR(entropy(renyi_fehr_berens(2.0), kP2), 1.2758269080939196, 1e-13);
  EXPECT_NEAR(entropy(tsallis(2.0), kP2), 0.7208, 1e-14);
  EXPECT_NEAR(entropy(sharma_mittal(0.5, 3.0), kP2), 0.46674191440220984, 1e-13);
  EXPECT_NEAR(entropy(log_guesswork(), kP2), std::log(2.12), 1e-14);
}

TEST(Entropy, UnitsConvert) {
  const std::vector<double> u4(4, 0.25);
  EXPECT_NEAR(entropy(shannon(Units::kBits), u4), 2.0, 1e-14);
  EXPECT_NEAR(entropy(min_entropy(Units::kBits), u4), 2.0, 1e-14);
  EXPECT_NEAR(entropy(renyi_arimoto(3.0, Units::kBits), u4), 2.0, 1e-13);
}

TEST(Entropy, PermutationInvariantAndExpansible) {
  const std::vector<double> a{0.2, 0.5, 0.3};
  const std::vector<double> b{0.5, 0.3, 0.2, 0.0};
  for (const auto& m : reference_measures(3)) {
    EXPECT_NEAR(entropy(m, a), entropy(m, b), 1e-12) << describe(m);
  }
}

TEST(ConditionalEntropy, ReferenceValues) {
  const auto ch = small_channel();
  EXPECT_NEAR(conditional_entropy(shannon(), kSmallPrior, ch),
              0.71078308728890864, 1e-14);
  EXPECT_NEAR(conditional_entropy(min_entropy(), kSmallPrior, ch),
              0.43078291609245426, 1e-14);
  EXPECT_NEAR(conditional_entropy(renyi_arimoto(2.0), kSmallPrior, ch),
              0.60382195766768586, 1e-13);
  EXPECT_NEAR(conditional_entropy(renyi_hayashi(2.0), kSmallPrior, ch),
              0.58930556570615163, 1e-13);
  EXPECT_NEAR(conditional_entropy(guesswork(), kSmallPrior, ch), 1.4, 1e-14);
}

TEST(ConditionalEntropy, LegacyRenyiReferenceValues) {
  const auto ch = small_channel();
  EXPECT_NEAR(legacy_renyi_conditional(RenyiConditional::kAveraged, 2.0,
                                       kSmallPrior, ch),
              0.61890052074412809, 1e-13);
  EXPECT_NEAR(legacy_renyi_conditional(RenyiConditional::kJointMinusOutput,
                                       2.0, kSmallPrior, ch),
              0.55794985585332980, 1e-13);
  EXPECT_NEAR(legacy_renyi_conditional(RenyiConditional::kWorstCase, 2.0,
                                       kSmallPrior, ch),
              0.40408102484222592, 1e-13);
  EXPECT_THROW(legacy_renyi_conditional(RenyiConditional::kArimoto, 2.0,
                                        kSmallPrior, ch),
               ValidationError);
}

TEST(ConditionalEntropy, ConstantChannelLeaksNothing) {
  for (const auto& m : reference_measures(3)) {
    EXPECT_NEAR(leakage(m, kSmallPrior, Channel::constant(3)), 0.0, 1e-12)
        << describe(m);
  }
}

TEST(ConditionalEntropy, IdentityChannelLeaksEverything) {
  for (const auto& m : {shannon(), min_entropy(), renyi_arimoto(2.0)}) {
    EXPECT_NEAR(conditional_entropy(m, kSmallPrior, Channel::identity(3)), 0.0,
                1e-12);
  }
  EXPECT_NEAR(conditional_entropy(guesswork(), kSmallPrior, Channel::identity(3)),
              1.0, 1e-12);
}

TEST(ConditionalEntropy, KolmogorovNagumoFormAgrees) {
  Rng rng(17);
  const std::vector<EntropyMeasure> ms{
      shannon(),          min_entropy(),        guesswork(),
      renyi_arimoto(0.5), renyi_hayashi(2.0),   renyi_fehr_berens(5.0),
      tsallis(2.0),       sharma_mittal(2.0, 0.5), log_guesswork()};
  for (int t = 0; t < 200; ++t) {
    const auto p = random_simplex(rng, 2 + t % 6);
    const auto ch = random_sparse_channel(rng, p.size(), 2 + t % 4);
    for (const auto& m : ms) {
      EXPECT_NEAR(kn_average_form(m, p, ch), conditional_entropy(m, p, ch),
                  1e-9 * (1.0 + std::abs(conditional_entropy(m, p, ch))))
          << describe(m);
    }
  }
}

TEST(Measures, LimitsApproachShannonAndMinEntropy) {
  const std::vector<double> p{0.55, 0.25, 0.15, 0.05};
  EXPECT_NEAR(entropy(renyi_arimoto(1.0 + 1e-7), p), entropy(shannon(), p), 1e-6);
  EXPECT_NEAR(entropy(renyi_hayashi(1.0 - 1e-7), p), entropy(shannon(), p), 1e-6);
  EXPECT_NEAR(entropy(tsallis(1.0 + 1e-7), p), entropy(shannon(), p), 1e-6);
  EXPECT_NEAR(entropy(renyi_arimoto(1e3), p), entropy(min_entropy(), p), 1e-3);
  EXPECT_NEAR(entropy(sharma_mittal(2.0, 1.0 + 1e-7), p),
              entropy(renyi_hayashi(2.0), p), 1e-6);
}

TEST(Measures, RejectsBadParameters) {
  EXPECT_THROW(renyi_arimoto(0.0), ValidationError);
  EXPECT_THROW(renyi_arimoto(-1.0), ValidationError);
  EXPECT_THROW(renyi_hayashi(1.0), ValidationError);
  EXPECT_THROW(tsallis(INFINITY), ValidationError);
  EXPECT_THROW(l_guess(0), ValidationError);
}

TEST(Measures, ConstructorEnforcesCoreConcavity) {
  auto id = [](double x) { return x; };
  auto core = [](std::span<const double>) { return 0.0; };
  EXPECT_THROW(EntropyMeasure("bad", {}, id, Monotonicity::kIncreasing, core,
                              Curvature::kConvex),
               ValidationError);
  EXPECT_NO_THROW(EntropyMeasure("ok", {}, id, Monotonicity::kDecreasing, core,
                                 Curvature::kConvex));
}

TEST(ParseMeasure, Names) {
  EXPECT_EQ(describe(parse_measure("shannon")), describe(shannon()));
  EXPECT_EQ(describe(parse_measure("min-entropy")), describe(min_entropy()));
  EXPECT_EQ(describe(parse_measure("lguess:2")), describe(l_guess(2)));
  EXPECT_EQ(describe(parse_measure("renyi-arimoto:2")),
            describe(renyi_arimoto(2.0)));
  EXPECT_EQ(describe(parse_measure("renyi-arimoto:1")), describe(shannon()));
  EXPECT_EQ(describe(parse_measure("sharma-mittal:2:1")),
            describe(renyi_hayashi(2.0)));
  EXPECT_THROW(parse_measure("renyi-arimoto"), ValidationError);
  EXPECT_THROW(parse_measure("renyi-arimoto:x"), ValidationError);
  EXPECT_THROW(parse_measure("lguess:1.5"), ValidationError);
  EXPECT_THROW(parse_measure("entropy"), ValidationError);
}

TEST(CreSearch, LegacyDefinitionsViolate) {
  for (auto [v, a] : {std::pair{RenyiConditional::kAveraged, 2.0},
                      std::pair{RenyiConditional::kJointMinusOutput, 2.0},
                      std::pair{RenyiConditional::kWorstCase, 0.5}}) {
    const auto hit = find_cre_violation(v, a, 100000);
    ASSERT_TRUE(hit.has_value());
    EXPECT_GT(hit->conditional, hit->unconditional + 1e-6);
    EXPECT_NEAR(hit->conditional,
                legacy_renyi_conditional(v, a, hit->prior, hit->channel), 1e-12);
  }
}

TEST(CreSearch, ArimotoConditionalDoesNotViolate) {
  for (double a : {0.5, 2.0, 5.0}) {
    EXPECT_FALSE(find_cre_violation(RenyiConditional::kArimoto, a, 5000).has_value());
    EXPECT_FALSE(find_cre_violation(RenyiConditional::kHayashi, a, 5000).has_value());
  }
}

}  // namespace
}  // namespace leakmin
