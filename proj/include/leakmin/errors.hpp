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
#ifndef LEAKMIN_ERRORS_HPP_
#define LEAKMIN_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace leakmin {

// Bad user input: malformed priors, channels, parameters out of domain.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what)
      : std::invalid_argument(what) {}
};

// A postcondition the construction guarantees did not hold. Seeing one of
// these means a bug, not bad input.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what)
      : std::logic_error(what) {}
};

namespace tol {
inline constexpr double kStructural = 1e-12;
inline constexpr double kAnalytical = 1e-9;
}  // namespace tol

}  // namespace leakmin

#endif  // LEAKMIN_ERRORS_HPP_
