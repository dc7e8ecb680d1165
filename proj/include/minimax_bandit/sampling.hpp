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

#ifndef MINIMAX_BANDIT_SAMPLING_HPP_
#define MINIMAX_BANDIT_SAMPLING_HPP_

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "minimax_bandit/capped_simplex.hpp"
#include "minimax_bandit/common.hpp"

namespace minimax_bandit {

/// Counter-based 64-bit generator (SplitMix64). Draw j of a stream is a pure
/// function of (seed, j), so identical seeds reproduce identical sequences on
/// every platform. Satisfies std::uniform_random_bit_generator.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed = 0) : seed_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    ++counter_;
    return Mix(seed_ + counter_ * kGolden);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double Uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Independent stream for run `index`, keyed on both seed and index.
  RngStream Derive(std::uint64_t index) const {
    return RngStream(Mix(seed_ ^ Mix(index + kGolden)));
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t draws() const { return counter_; }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  static std::uint64_t Mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// k distinct indices in [0, n), kept sorted ascending.
class ActionSet {
 public:
  ActionSet() = default;
  ActionSet(std::vector<Index> indices, std::size_t n)
      : indices_(std::move(indices)) {
    std::sort(indices_.begin(), indices_.end());
    detail::Require(
        std::adjacent_find(indices_.begin(), indices_.end()) == indices_.end(),
        "action set: duplicate index");
    detail::Require(indices_.empty() || indices_.back() < n,
                    "action set: index out of range");
  }

  std::size_t size() const { return indices_.size(); }
  const std::vector<Index>& indices() const { return indices_; }
  bool Contains(Index i) const {
    return std::binary_search(indices_.begin(), indices_.end(), i);
  }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  friend bool operator==(const ActionSet&, const ActionSet&) = default;

 private:
  std::vector<Index> indices_;
};

inline constexpr double kDepRoundSnapTol = 1e-12;

/// Dependent rounding: draws a set of exactly k distinct indices with
/// P[i in S] = k * p_i for p in S_{n,k}.
///
/// The pair (i, j) rounded at each step is the two lowest-indexed fractional
/// coordinates of k*p. Each step moves mass between them so that one reaches
/// 0 or 1, and the expected change of each coordinate is zero:
///   (q_i + a, q_j - a) with probability b / (a + b)
///   (q_i - b, q_j + b) with probability a / (a + b)
/// where a = min(1 - q_i, q_j) and b = min(q_i, 1 - q_j).
/// Integral inputs consume no randomness.
inline ActionSet DepRound(std::size_t k, std::span<const double> p,
                          RngStream& rng) {
  const std::size_t n = p.size();
  detail::Require(k >= 1 && k <= n, "dep_round: k=", k, " out of range");
  detail::Require(InCappedSimplex(p, 1.0 / static_cast<double>(k)),
                  "dep_round: p must lie in S_{n,k}");

  std::vector<double> q(n);
  const auto snap = [](double x) {
    if (x <= kDepRoundSnapTol) return 0.0;
    if (x >= 1.0 - kDepRoundSnapTol) return 1.0;
    return x;
  };
  const auto fractional = [](double x) { return x > 0.0 && x < 1.0; };
  for (Index i = 0; i < n; ++i) q[i] = snap(static_cast<double>(k) * p[i]);

  constexpr Index kNone = std::numeric_limits<Index>::max();
  Index current = kNone;
  for (Index j = 0; j < n; ++j) {
    if (!fractional(q[j])) continue;
    if (current == kNone) {
      current = j;
      continue;
    }
    double& qi = q[current];
    double& qj = q[j];
    const double a = std::min(1.0 - qi, qj);
    const double b = std::min(qi, 1.0 - qj);
    if (rng.Uniform01() * (a + b) < b) {
      qi += a;
      qj -= a;
    } else {
      qi -= b;
      qj += b;
    }
    qi = snap(qi);
    qj = snap(qj);
    if (fractional(qi)) {
      // current stays; j resolved.
    } else if (fractional(qj)) {
      current = j;
    } else {
      current = kNone;
    }
  }
  // A lone survivor only arises from roundoff in sum(k*p) = k.
  if (current != kNone) q[current] = q[current] >= 0.5 ? 1.0 : 0.0;

  std::vector<Index> chosen;
  chosen.reserve(k);
  for (Index i = 0; i < n; ++i) {
    if (q[i] == 1.0) chosen.push_back(i);
  }
  if (chosen.size() != k) {
    throw std::logic_error("dep_round: rounding produced " +
                           std::to_string(chosen.size()) + " indices, expected " +
                           std::to_string(k));
  }
  return ActionSet(std::move(chosen), n);
}

/// Inverse-CDF draw of a single index from a probability vector.
inline Index Categorical(std::span<const double> p, RngStream& rng) {
  RequireProbVector(p, "categorical distribution");
  const double u = rng.Uniform01() * Sum(p);
  double cumulative = 0.0;
  Index last_positive = 0;
  for (Index i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    last_positive = i;
    cumulative += p[i];
    if (u < cumulative) return i;
  }
  return last_positive;
}

}  // namespace minimax_bandit

#endif  // MINIMAX_BANDIT_SAMPLING_HPP_
