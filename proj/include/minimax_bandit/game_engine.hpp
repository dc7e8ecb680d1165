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

// Repeated play between a p-player and projected OGD, with averaged iterates
// and dual-gap checkpoints.

#ifndef MINIMAX_BANDIT_GAME_ENGINE_HPP_
#define MINIMAX_BANDIT_GAME_ENGINE_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "minimax_bandit/capped_simplex.hpp"
#include "minimax_bandit/common.hpp"
#include "minimax_bandit/p_players.hpp"
#include "minimax_bandit/sampling.hpp"
#include "minimax_bandit/w_players.hpp"

namespace minimax_bandit {

/// A failure inside the game loop, tagged with the 1-based round it hit.
class GameError : public std::runtime_error {
 public:
  GameError(std::size_t round, const std::string& what)
      : std::runtime_error("round " + std::to_string(round) + ": " + what),
        round_(round) {}
  std::size_t round() const { return round_; }

 private:
  std::size_t round_;
};

// n * T above which per-round full loss vectors are not computed.
inline constexpr double kRegretAccountingLimit = 1e8;

struct GameConfig {
  std::size_t rounds = 0;  // T
  double eta_w = 0.0;      // OGD step; 0 selects B sqrt(2/T)
  double radius = 1.0;     // B
  std::uint64_t seed = 0;
  // Rounds after which a checkpoint is taken. Empty selects the default
  // geometric schedule. T is always included.
  std::vector<std::size_t> checkpoints;
  OfflineOptions offline;
  // Also evaluate the gap at (w_bar, p_bar).
  bool gap_at_p_bar = true;
  // Record regret terms; silently off when n * T exceeds the limit.
  bool regret_accounting = false;
  // Measure wall time per checkpoint (otherwise elapsed_ms stays 0).
  bool measure_time = true;
};

/// About ten checkpoints per decade of rounds, always ending at T.
inline std::vector<std::size_t> GeometricCheckpoints(std::size_t rounds,
                                                     std::size_t per_decade = 10) {
  detail::Require(rounds >= 1 && per_decade >= 1, "checkpoints: invalid schedule");
  std::vector<std::size_t> out;
  for (std::size_t j = 0;; ++j) {
    const double r = std::pow(10.0, static_cast<double>(j) / static_cast<double>(per_decade));
    const auto t = static_cast<std::size_t>(std::llround(r));
    if (t >= rounds) break;
    if (out.empty() || t > out.back()) out.push_back(t);
  }
  out.push_back(rounds);
  return out;
}

struct GapResult {
  double gap = 0.0;
  double max_side = 0.0;
  double min_side = 0.0;
  // Upper bound on how far min_side may sit above the true minimum; the true
  // gap lies in [gap, gap + tolerance] in the convex regime.
  double tolerance = 0.0;
  bool converged = true;
  std::vector<double> minimizer;
};

/// max_{p in S_{n,k}} <L(w); p> - min_{||v|| <= B} <L(v); q>.
inline GapResult DualGap(const LinearModel& model, std::span<const double> w,
                         std::span<const double> q, std::size_t k, double radius,
                         const OfflineOptions& options = {},
                         std::span<const double> warm_start = {}) {
  detail::Require(q.size() == model.size(), "dual gap: distribution length ", q.size(),
                  " differs from n=", model.size());
  RequireProbVector(q, "dual gap distribution");
  GapResult out;
  out.max_side = LinearMaxKSet(EvalAllLosses(model, w), k).value;
  auto solved = OfflineMin(model, q, radius, options, warm_start);
  out.min_side = solved.value;
  out.tolerance = solved.tolerance;
  out.converged = solved.converged;
  out.minimizer = std::move(solved.params.values);
  out.gap = out.max_side - out.min_side;
  return out;
}

struct RegretSnapshot {
  double realized_gain = 0.0;  // sum_t <L(w_t); a_t>
  double expected_gain = 0.0;  // sum_t <L(w_t); p_t>
  double best_gain = 0.0;      // max_{p in S_{n,k}} <sum_t L(w_t); p>
  double p_regret = 0.0;       // best - realized
  double p_regret_expected = 0.0;
  double w_regret = 0.0;       // realized - t * min_w <L(w); a_bar>
};

struct Checkpoint {
  std::size_t round = 0;
  std::size_t data_points = 0;
  GapResult gap;          // at (w_bar, a_bar)
  std::optional<GapResult> gap_p;  // at (w_bar, p_bar)
  double task_metric = 0.0;
  double elapsed_ms = 0.0;
  std::vector<double> w_bar;
  std::vector<double> w_last;
  std::vector<double> a_bar;
  std::vector<double> p_bar;
  std::optional<RegretSnapshot> regret;
};

struct GameTrace {
  std::string player;
  std::size_t set_size = 1;
  std::size_t rounds = 0;
  double eta_w = 0.0;
  std::vector<Checkpoint> checkpoints;
  const Checkpoint& final() const { return checkpoints.back(); }
};

/// Plays T rounds. Each round the p-player proposes (p_t, I_t), the losses at
/// I_t are revealed to it, and the w-player takes an OGD step on
/// <L(w_t); a_t>. Averages are taken over w_1..w_t and a_1..a_t.
template <PPlayer P>
GameTrace RunGame(P& player, const LinearModel& model, const GameConfig& cfg) {
  detail::Require(cfg.rounds >= 1, "game: T must be positive");
  detail::Require(cfg.radius >= 0.0, "game: ball radius must be nonnegative");
  const std::size_t n = model.size();
  const std::size_t dim = model.dim();
  const std::size_t k = player.set_size();
  const double t_total = static_cast<double>(cfg.rounds);
  const double eta_w = cfg.eta_w > 0.0 ? cfg.eta_w : cfg.radius * std::sqrt(2.0 / t_total);

  std::vector<std::size_t> schedule =
      cfg.checkpoints.empty() ? GeometricCheckpoints(cfg.rounds) : cfg.checkpoints;
  std::sort(schedule.begin(), schedule.end());
  schedule.erase(std::unique(schedule.begin(), schedule.end()), schedule.end());
  schedule.erase(std::remove_if(schedule.begin(), schedule.end(),
                                [&](std::size_t t) { return t == 0 || t > cfg.rounds; }),
                 schedule.end());
  if (schedule.empty() || schedule.back() != cfg.rounds) schedule.push_back(cfg.rounds);

  const bool accounting =
      cfg.regret_accounting &&
      static_cast<double>(n) * t_total <= kRegretAccountingLimit;

  GameTrace trace;
  trace.player = std::string(player.name());
  trace.set_size = k;
  trace.rounds = cfg.rounds;
  trace.eta_w = eta_w;

  RngStream rng(cfg.seed);
  std::vector<double> w(dim, 0.0);
  std::vector<double> w_bar(dim, 0.0);
  std::vector<double> a_sum(n, 0.0);
  std::vector<double> p_bar(n, 0.0);
  std::vector<double> cumulative_loss(accounting ? n : 0, 0.0);
  std::vector<double> grad(dim);
  std::vector<double> losses;
  std::vector<double> warm_a, warm_p;
  RegretSnapshot regret;
  const auto start = std::chrono::steady_clock::now();

  std::size_t next = 0;
  for (std::size_t t = 1; t <= cfg.rounds; ++t) {
    try {
      const Proposal& proposal = player.Propose(rng);
      const auto& indices = proposal.action.indices();
      losses.resize(indices.size());
      for (std::size_t j = 0; j < indices.size(); ++j) losses[j] = model.Loss(w, indices[j]);

      if (accounting) {
        double expected = 0.0;
        for (Index i = 0; i < n; ++i) {
          const double l = model.Loss(w, i);
          cumulative_loss[i] += l;
          expected += proposal.distribution[i] * l;
        }
        regret.expected_gain += expected;
        for (std::size_t j = 0; j < indices.size(); ++j) {
          regret.realized_gain += proposal.action_weights[j] * losses[j];
        }
      }

      std::fill(grad.begin(), grad.end(), 0.0);
      for (std::size_t j = 0; j < indices.size(); ++j) {
        model.AddGradient(w, indices[j], proposal.action_weights[j], grad);
      }
      for (std::size_t j = 0; j < indices.size(); ++j) {
        a_sum[indices[j]] += proposal.action_weights[j];
      }
      const double inv_t = 1.0 / static_cast<double>(t);
      for (Index i = 0; i < n; ++i) p_bar[i] += (proposal.distribution[i] - p_bar[i]) * inv_t;
      for (std::size_t j = 0; j < dim; ++j) w_bar[j] += (w[j] - w_bar[j]) * inv_t;

      player.Update(Feedback{indices, losses});
    } catch (const GameError&) {
      throw;
    } catch (const std::exception& e) {
      throw GameError(t, std::string(player.name()) + ": " + e.what());
    }

    std::vector<double> w_t;
    const bool checkpoint = next < schedule.size() && schedule[next] == t;
    if (checkpoint) w_t = w;

    for (std::size_t j = 0; j < dim; ++j) w[j] -= eta_w * grad[j];
    ProjectToBall(w, cfg.radius);

    if (!checkpoint) continue;
    ++next;
    Checkpoint cp;
    cp.round = t;
    cp.data_points = t * player.points_per_round();
    cp.a_bar.resize(n);
    for (Index i = 0; i < n; ++i) cp.a_bar[i] = a_sum[i] / static_cast<double>(t);
    cp.p_bar = p_bar;
    cp.w_bar = w_bar;
    cp.w_last = std::move(w_t);
    cp.gap = DualGap(model, w_bar, cp.a_bar, k, cfg.radius, cfg.offline, warm_a);
    warm_a = cp.gap.minimizer;
    if (cfg.gap_at_p_bar) {
      cp.gap_p = DualGap(model, w_bar, p_bar, k, cfg.radius, cfg.offline, warm_p);
      warm_p = cp.gap_p->minimizer;
    }
    cp.task_metric = TaskMetric(model, w_bar, k);
    if (accounting) {
      RegretSnapshot r = regret;
      r.best_gain = LinearMaxKSet(cumulative_loss, k).value;
      r.p_regret = r.best_gain - r.realized_gain;
      r.p_regret_expected = r.best_gain - r.expected_gain;
      r.w_regret = r.realized_gain - static_cast<double>(t) * cp.gap.min_side;
      cp.regret = r;
    }
    if (cfg.measure_time) {
      cp.elapsed_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    }
    trace.checkpoints.push_back(std::move(cp));
  }
  return trace;
}

}  // namespace minimax_bandit

#endif  // MINIMAX_BANDIT_GAME_ENGINE_HPP_
