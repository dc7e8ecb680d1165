// Copyright 2026 The minimax-bandit Authors.
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

#ifndef MINIMAX_BANDIT_COMMON_HPP_
#define MINIMAX_BANDIT_COMMON_HPP_

#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace minimax_bandit {

using Index = std::size_t;

// Absolute tolerance for simplex and cap feasibility checks.
inline constexpr double kFeasibilityTol = 1e-9;
// L-infinity tolerance used when an algorithm is compared with an oracle.
inline constexpr double kOracleTol = 1e-6;

// Raised when an argument violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

template <typename... Args>
[[noreturn]] void Fail(Args&&... args) {
  std::ostringstream os;
  (os << ... << std::forward<Args>(args));
  throw InvalidArgument(os.str());
}

template <typename... Args>
void Require(bool condition, Args&&... args) {
  if (!condition) Fail(std::forward<Args>(args)...);
}

}  // namespace detail

inline double Sum(std::span<const double> values) {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

inline double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double Norm2(std::span<const double> a) { return std::sqrt(Dot(a, a)); }

/// True when `p` is a probability vector: entries >= -tol and sum within tol
/// of one.
inline bool IsProbVector(std::span<const double> p,
                         double tol = kFeasibilityTol) {
  if (p.empty()) return false;
  for (double v : p) {
    if (!(v >= -tol)) return false;
  }
  return std::abs(Sum(p) - 1.0) <= tol;
}

inline void RequireProbVector(std::span<const double> p, const char* what) {
  detail::Require(IsProbVector(p), what,
                  " must be a probability vector (nonnegative, sum 1)");
}

}  // namespace minimax_bandit

#endif  // MINIMAX_BANDIT_COMMON_HPP_
