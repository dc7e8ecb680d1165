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


// Shared problem instances for the unit and acceptance tests.

#ifndef MINIMAX_BANDIT_TESTS_SCENARIOS_HPP_
#define MINIMAX_BANDIT_TESTS_SCENARIOS_HPP_

#include <algorithm>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "minimax_bandit/minimax_bandit.hpp"

namespace scenarios {

using minimax_bandit::Dataset;
using minimax_bandit::Index;
using minimax_bandit::TaskKind;

/// Linear regression with small Gaussian noise: x uniform on [0,1]^d,
/// y = clamp(0.5 + theta.(x - 0.5) + noise, 0, 1).
inline Dataset SyntheticRegression(std::size_t n, std::size_t d, std::uint64_t seed,
                                   double noise = 0.05) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0), t(-0.3, 0.3);
  std::normal_distribution<double> e(0.0, noise);
  std::vector<double> theta(d);
  for (double& v : theta) v = t(gen);
  Dataset data;
  data.task = TaskKind::kRegression;
  data.rows = n;
  data.features = d;
  data.x.resize(n * d);
  data.y.resize(n);
  for (Index i = 0; i < n; ++i) {
    double y = 0.5 + e(gen);
    for (std::size_t j = 0; j < d; ++j) {
      const double x = u(gen);
      data.x[i * d + j] = x;
      y += theta[j] * (x - 0.5);
    }
    data.y[i] = std::clamp(y, 0.0, 1.0);
  }
  return data;
}

/// A dataset on which every loss at w = 0 equals `losses[i]`: one zero
/// feature and target sqrt(losses[i]). With a radius-0 ball the loss vector
/// is frozen.
inline Dataset FrozenLosses(const std::vector<double>& losses) {
  Dataset data;
  data.task = TaskKind::kRegression;
  data.rows = losses.size();
  data.features = 1;
  data.x.assign(losses.size(), 0.0);
  for (double l : losses) data.y.push_back(std::sqrt(l));
  return data;
}

/// Oblivious loss schedule that first rewards one group and then switches
/// to a slightly better one. Indices 0..k-1 pay 1.0 for the first 40% of
/// rounds and 0.3 after; indices k..2k-1 pay 0.3 and then 0.8; the rest pay
/// 0.5 with a small deterministic wobble.
inline double AdversarialLoss(std::size_t t, Index i, std::size_t k, std::size_t rounds) {
  const bool early = 10 * t < 4 * rounds;
  if (i < k) return early ? 1.0 : 0.3;
  if (i < 2 * k) return early ? 0.3 : 0.8;
  return 0.5 + 0.1 * (static_cast<double>((7 * t + 13 * i) % 3) - 1.0);
}

/// Sum-of-k-gains regret of one EXP4.MP run on AdversarialLoss.
inline double Exp4MpAdversarialRegret(std::size_t n, std::size_t k, std::size_t rounds,
                                      double delta, std::uint64_t seed) {
  using namespace minimax_bandit;
  Exp4MpPlayer player(Exp4MpParameters(n, k, rounds, delta));
  RngStream rng(seed);
  std::vector<double> cumulative(n, 0.0);
  double realized = 0.0;
  std::vector<double> losses;
  for (std::size_t t = 0; t < rounds; ++t) {
    const Proposal& prop = player.Propose(rng);
    losses.clear();
    for (Index i : prop.action) {
      losses.push_back(AdversarialLoss(t, i, k, rounds));
      realized += losses.back();
    }
    player.Update({prop.action.indices(), losses});
  }
  for (std::size_t t = 0; t < rounds; ++t) {
    for (Index i = 0; i < n; ++i) cumulative[i] += AdversarialLoss(t, i, k, rounds);
  }
  const double best = static_cast<double>(k) * LinearMaxKSet(cumulative, k).value;
  return best - realized;
}

}  // namespace scenarios

#endif  // MINIMAX_BANDIT_TESTS_SCENARIOS_HPP_
