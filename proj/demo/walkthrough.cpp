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
// Designs the optimal channel for a few small priors and shows that one
// channel reaches H(pi) for several unrelated entropy measures at once.

#include <cstdio>
#include <vector>

#include "leakmin/leakmin.hpp"

using namespace leakmin;

int main() {
  const std::vector<std::vector<double>> priors{
      {0.3, 0.28, 0.22, 0.2}, {0.36, 0.3, 0.2, 0.14}, {0.4, 0.35, 0.15, 0.1}};
  const std::size_t k = 3;
  for (const auto& v : priors) {
    const Prior p(v);
    const auto r = design(p, k);
    std::printf("prior");
    for (double x : v) std::printf(" %.2f", x);
    std::printf("   j* = %zu   pi =", r.jstar);
    for (double x : r.pi) std::printf(" %.4f", x);
    std::printf("\n");
    const auto& ch = r.channel;
    for (std::size_t x = 0; x < ch.inputs(); ++x) {
      std::printf("  ");
      for (std::size_t y = 0; y < ch.outputs(); ++y) std::printf(" %.4f", ch(x, y));
      std::printf("\n");
    }
    for (const auto& m : {shannon(), min_entropy(), guesswork(),
                          renyi_arimoto(2.0), tsallis(0.5)}) {
      std::printf("   %-18s H(X|Y) = %.6f   H(pi) = %.6f\n",
                  describe(m).c_str(), conditional_entropy(m, p, ch),
                  entropy(m, r.pi));
    }
    std::printf("\n");
  }
}
