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

// Maximizing players over the data distribution. All of them play gains:
// the payoff <L(w); p> is what the p-player wants to increase.
//
//   Exp3IxPlayer     - simplex bandit, one index per round, implicit
//                      exploration estimator.
//   Exp4MpPlayer     - semi-bandit on S_{n,k}: mixing projection, dependent
//                      rounding, importance-weighted estimates plus an upper
//                      confidence term.
//   FtrlCappedPlayer - full-information FTRL with entropic regularizer on
//                      S_{n,k}; sees the whole loss vector every round.
//   UniformPlayer    - uniform random k-subsets, no learning.

#ifndef MINIMAX_BANDIT_P_PLAYERS_HPP_
#define MINIMAX_BANDIT_P_PLAYERS_HPP_

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "minimax_bandit/capped_simplex.hpp"
#include "minimax_bandit/common.hpp"
#include "minimax_bandit/sampling.hpp"

namespace minimax_bandit {

struct PPlayerConfig {
  std::size_t n = 0;
  std::size_t k = 1;
  std::size_t rounds = 0;  // T
  double delta = 0.05;
  double eta = 0.0;
  double gamma = 0.0;
  double c = 0.0;
};

// ---------------------------------------------------------------------------
// Parameter formulas and bounds.

/// eta = 2 gamma = sqrt(2 log n / (n T)).
inline PPlayerConfig Exp3IxParameters(std::size_t n, std::size_t rounds,
                                      double delta = 0.05) {
  detail::Require(n >= 2 && rounds >= 1, "exp3-ix parameters: need n >= 2, T >= 1");
  PPlayerConfig cfg{n, 1, rounds, delta, 0.0, 0.0, 0.0};
  const double nd = static_cast<double>(n);
  cfg.eta = std::sqrt(2.0 * std::log(nd) / (nd * static_cast<double>(rounds)));
  cfg.gamma = cfg.eta / 2.0;
  return cfg;
}

/// Smallest T with T >= max{log(n/delta), n log(n/k) / k}.
inline std::size_t MinimalExp4MpRounds(std::size_t n, std::size_t k,
                                       double delta) {
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  const double bound =
      std::max(std::log(nd / delta), nd * std::log(nd / kd) / kd);
  return static_cast<std::size_t>(std::ceil(bound - 1e-12));
}

/// gamma = sqrt(n log(n/k) / (k T)), eta = k gamma / (2n),
/// c = sqrt(k log(n/delta)).
inline PPlayerConfig Exp4MpParameters(std::size_t n, std::size_t k,
                                      std::size_t rounds, double delta) {
  detail::Require(n >= 1 && k >= 1 && k <= n,
                  "exp4.mp parameters: need 1 <= k <= n");
  detail::Require(delta > 0.0 && delta < 1.0,
                  "exp4.mp parameters: delta must lie in (0, 1), got ", delta);
  detail::Require(rounds >= 1, "exp4.mp parameters: T must be positive");
  const std::size_t minimal = MinimalExp4MpRounds(n, k, delta);
  detail::Require(rounds >= minimal, "exp4.mp parameters: T=", rounds,
                  " is below the admissible minimum T=", minimal,
                  " = max{log(n/delta), n log(n/k)/k}");
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  PPlayerConfig cfg{n, k, rounds, delta, 0.0, 0.0, 0.0};
  cfg.gamma = std::sqrt(nd * std::log(nd / kd) / (kd * static_cast<double>(rounds)));
  cfg.eta = kd * cfg.gamma / (2.0 * nd);
  cfg.c = std::sqrt(kd * std::log(nd / delta));
  return cfg;
}

/// eta = sqrt(log(n/k) / T) for FTRL on S_{n,k}.
inline double FtrlEta(std::size_t n, std::size_t k, std::size_t rounds) {
  detail::Require(k >= 1 && k <= n && rounds >= 1, "ftrl eta: invalid n, k, T");
  return std::sqrt(std::log(static_cast<double>(n) / static_cast<double>(k)) /
                   static_cast<double>(rounds));
}

/// Deterministic FTRL regret bound 2 sqrt(T log(n/k)).
inline double FtrlRegretBound(std::size_t n, std::size_t k, std::size_t rounds) {
  return 2.0 * std::sqrt(static_cast<double>(rounds) *
                         std::log(static_cast<double>(n) / static_cast<double>(k)));
}

enum class Bound {
  kSimplexGap,     // dual gap of the simplex game with EXP3-IX
  kKSetGap,        // dual gap of the S_{n,k} game with EXP4.MP
  kExp4MpRegret,   // high-probability EXP4.MP regret (sum-of-k-gains scale)
};

/// Right-hand sides of the convergence and regret guarantees, term by term.
/// `c_w` is the w-player's regret constant (R^w_T <= c_w sqrt(T)).
inline double BoundRhs(Bound which, std::size_t n, std::size_t k,
                              std::size_t rounds, double delta, double c_w = 0.0) {
  detail::Require(n >= 1 && k >= 1 && rounds >= 1, "bound: invalid n, k, T");
  detail::Require(delta > 0.0 && delta < 1.0, "bound: delta must lie in (0, 1)");
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  const double t = static_cast<double>(rounds);
  switch (which) {
    case Bound::kSimplexGap: {
      const double logn = std::log(nd);
      return c_w * std::sqrt(1.0 / t) + 2.0 * std::sqrt(2.0 * nd * logn / t) +
             (std::sqrt(2.0 * nd / (t * logn)) + 1.0 / t) * std::log(2.0 / delta);
    }
    case Bound::kKSetGap:
      return c_w * std::sqrt(1.0 / t) +
             2.0 * std::sqrt(kd * nd / t * std::log(nd / delta)) +
             4.0 * std::sqrt(kd * nd / t * std::log(nd / kd)) +
             kd / t * std::log(nd / delta);
    case Bound::kExp4MpRegret:
      return 2.0 * std::sqrt(kd * nd * t * std::log(nd / delta)) +
             4.0 * std::sqrt(kd * nd * t * std::log(nd / kd)) +
             kd * std::log(nd / delta);
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Player interface.

/// What a p-player commits to in one round.
struct Proposal {
  // p_t, the distribution the action was drawn from.
  std::vector<double> distribution;
  // J_t, coordinates saturated at the cap (EXP4.MP and FTRL only).
  std::vector<Index> saturated;
  // Indices whose losses are evaluated this round.
  ActionSet action;
  // a_t restricted to `action`, aligned with action.indices(); sums to one.
  std::vector<double> action_weights;
};

/// Losses observed for the indices of the last proposal, in the same order.
struct Feedback {
  std::span<const Index> indices;
  std::span<const double> losses;
};

template <typename P>
concept PPlayer = requires(P player, const P& cplayer, RngStream& rng,
                           const Feedback& feedback) {
  { player.Propose(rng) } -> std::same_as<const Proposal&>;
  player.Update(feedback);
  { cplayer.points_per_round() } -> std::convertible_to<std::size_t>;
  // k of the set S_{n,k} the player lives on (1 for the simplex).
  { cplayer.set_size() } -> std::convertible_to<std::size_t>;
  { cplayer.name() } -> std::convertible_to<std::string_view>;
};

namespace detail {

inline void CheckFeedback(const Proposal& last, const Feedback& feedback) {
  Require(feedback.indices.size() == feedback.losses.size(),
          "feedback: indices and losses differ in length");
  Require(std::equal(feedback.indices.begin(), feedback.indices.end(),
                     last.action.begin(), last.action.end()),
          "feedback: indices do not match the proposed action");
  for (double l : feedback.losses) {
    Require(l >= 0.0 && l <= 1.0, "feedback: loss ", l, " outside [0, 1]");
  }
}

// exp(log_w - max log_w), floored at the smallest normal double so the
// weights handed to the projection stay strictly positive.
inline std::vector<double> WeightsFromLog(std::span<const double> log_w) {
  const double top = *std::max_element(log_w.begin(), log_w.end());
  std::vector<double> w(log_w.size());
  for (Index i = 0; i < w.size(); ++i) {
    w[i] = std::max(std::exp(log_w[i] - top), std::numeric_limits<double>::min());
  }
  return w;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// EXP3-IX on the simplex.

/// Implicit-exploration estimate L / (p + gamma) for the sampled index.
inline double Exp3IxEstimate(double loss, double probability, double gamma) {
  return loss / (probability + gamma);
}

/// Simplex bandit with implicit exploration, in gain form:
/// w_i <- w_i * exp(eta * L / (p_i + gamma)) for the sampled index.
class Exp3IxPlayer {
 public:
  explicit Exp3IxPlayer(const PPlayerConfig& cfg)
      : cfg_(cfg), log_weights_(cfg.n, 0.0), estimated_gains_(cfg.n, 0.0) {
    detail::Require(cfg.n >= 1, "exp3-ix: n must be positive");
    detail::Require(cfg.eta > 0.0 && cfg.gamma >= 0.0,
                    "exp3-ix: eta must be positive and gamma nonnegative");
  }

  const Proposal& Propose(RngStream& rng) {
    auto w = detail::WeightsFromLog(log_weights_);
    const double total = Sum(w);
    for (double& x : w) x /= total;
    last_.distribution = std::move(w);
    last_.saturated.clear();
    const Index i = Categorical(last_.distribution, rng);
    last_.action = ActionSet({i}, cfg_.n);
    last_.action_weights.assign(1, 1.0);
    return last_;
  }

  void Update(const Feedback& feedback) {
    detail::CheckFeedback(last_, feedback);
    const Index i = feedback.indices[0];
    const double estimate =
        Exp3IxEstimate(feedback.losses[0], last_.distribution[i], cfg_.gamma);
    log_weights_[i] += cfg_.eta * estimate;
    estimated_gains_[i] += estimate;
    ++round_;
  }

  std::size_t points_per_round() const { return 1; }
  std::size_t set_size() const { return 1; }
  std::string_view name() const { return "ol-exp3ix"; }
  std::size_t round() const { return round_; }
  const std::vector<double>& log_weights() const { return log_weights_; }
  const std::vector<double>& estimated_gains() const { return estimated_gains_; }
  const PPlayerConfig& config() const { return cfg_; }

 private:
  PPlayerConfig cfg_;
  std::vector<double> log_weights_;
  std::vector<double> estimated_gains_;
  Proposal last_;
  std::size_t round_ = 0;
};

// ---------------------------------------------------------------------------
// EXP4.MP on S_{n,k}.

struct Exp4MpEstimate {
  Index index = 0;
  double gain = 0.0;        // L_hat = L / (k p_i)
  double confidence = 0.0;  // U = 1 / (k p_i)
};

/// Importance-weighted estimates for the indices of I_t \ J_t. Indices in the
/// saturated set get no estimate (their weight is left untouched).
inline std::vector<Exp4MpEstimate> Exp4MpEstimates(
    std::span<const double> distribution, std::span<const Index> saturated,
    std::span<const Index> action, std::span<const double> losses,
    std::size_t k) {
  std::vector<Exp4MpEstimate> out;
  out.reserve(action.size());
  const double kd = static_cast<double>(k);
  for (std::size_t j = 0; j < action.size(); ++j) {
    const Index i = action[j];
    if (std::binary_search(saturated.begin(), saturated.end(), i)) continue;
    const double kp = kd * distribution[i];
    out.push_back({i, losses[j] / kp, 1.0 / kp});
  }
  return out;
}

class Exp4MpPlayer {
 public:
  /// Validates the configuration, including T >= max{log(n/delta),
  /// n log(n/k)/k}.
  explicit Exp4MpPlayer(const PPlayerConfig& cfg)
      : cfg_(cfg),
        log_weights_(cfg.n, 0.0),
        estimated_gains_(cfg.n, 0.0),
        confidence_scale_(cfg.c / std::sqrt(static_cast<double>(cfg.n) *
                                            static_cast<double>(cfg.rounds))) {
    detail::Require(cfg.k >= 1 && cfg.k <= cfg.n, "exp4.mp: need 1 <= k <= n");
    detail::Require(cfg.delta > 0.0 && cfg.delta < 1.0,
                    "exp4.mp: delta must lie in (0, 1)");
    detail::Require(cfg.rounds >= MinimalExp4MpRounds(cfg.n, cfg.k, cfg.delta),
                    "exp4.mp: T=", cfg.rounds, " is below the admissible minimum ",
                    MinimalExp4MpRounds(cfg.n, cfg.k, cfg.delta));
    detail::Require(cfg.eta > 0.0 || cfg.k == cfg.n, "exp4.mp: eta must be positive");
    detail::Require(cfg.gamma >= 0.0 && cfg.gamma < 1.0,
                    "exp4.mp: gamma must lie in [0, 1)");
    detail::Require(cfg.c >= 0.0, "exp4.mp: c must be nonnegative");
  }

  const Proposal& Propose(RngStream& rng) {
    const auto weights = detail::WeightsFromLog(log_weights_);
    auto projected = MixProject(weights, cfg_.k, cfg_.gamma);
    last_.action = DepRound(cfg_.k, projected.values, rng);
    last_.distribution = std::move(projected.values);
    last_.saturated = std::move(projected.saturated);
    last_.action_weights.assign(cfg_.k, 1.0 / static_cast<double>(cfg_.k));
    return last_;
  }

  /// w_i <- w_i * exp(eta * (L_hat_i + U_i * c / sqrt(n T))) on I_t \ J_t.
  void Update(const Feedback& feedback) {
    detail::CheckFeedback(last_, feedback);
    detail::Require(round_ < cfg_.rounds, "exp4.mp: more than T=", cfg_.rounds,
                    " updates");
    for (const auto& e : Exp4MpEstimates(last_.distribution, last_.saturated,
                                         feedback.indices, feedback.losses,
                                         cfg_.k)) {
      log_weights_[e.index] +=
          cfg_.eta * (e.gain + e.confidence * confidence_scale_);
      estimated_gains_[e.index] += e.gain;
    }
    ++round_;
  }

  /// Exponent eta * (L_hat + U c / sqrt(nT)) for a loss observed at
  /// probability p outside the saturated set.
  double UpdateExponent(double loss, double probability) const {
    const double kp = static_cast<double>(cfg_.k) * probability;
    return cfg_.eta * (loss / kp + confidence_scale_ / kp);
  }

  std::size_t points_per_round() const { return cfg_.k; }
  std::size_t set_size() const { return cfg_.k; }
  std::string_view name() const { return "ol-exp4mp"; }
  std::size_t round() const { return round_; }
  const std::vector<double>& log_weights() const { return log_weights_; }
  const std::vector<double>& estimated_gains() const { return estimated_gains_; }
  const PPlayerConfig& config() const { return cfg_; }

 private:
  PPlayerConfig cfg_;
  std::vector<double> log_weights_;
  std::vector<double> estimated_gains_;
  double confidence_scale_;
  Proposal last_;
  std::size_t round_ = 0;
};

// ---------------------------------------------------------------------------
// FTRL on S_{n,k}.

/// argmax_{u in S_{n,k}} <G, u> - (1/eta) sum u_i log u_i, i.e. the KL
/// projection of softmax(eta * G) onto S_{n,k}.
inline CappedDistribution FtrlCappedDistribution(
    std::span<const double> cumulative_gains, double eta, std::size_t k) {
  const std::size_t n = cumulative_gains.size();
  detail::Require(k >= 1 && k <= n, "ftrl: need 1 <= k <= n");
  std::vector<double> scaled(n);
  for (Index i = 0; i < n; ++i) scaled[i] = eta * cumulative_gains[i];
  auto w = detail::WeightsFromLog(scaled);
  const double total = Sum(w);
  for (double& x : w) x /= total;
  return KlProjectCapped(w, 1.0 / static_cast<double>(k));
}

class FtrlCappedPlayer {
 public:
  explicit FtrlCappedPlayer(const PPlayerConfig& cfg)
      : cfg_(cfg), cumulative_gains_(cfg.n, 0.0) {
    detail::Require(cfg.k >= 1 && cfg.k <= cfg.n, "ftrl: need 1 <= k <= n");
    detail::Require(cfg.eta >= 0.0, "ftrl: eta must be nonnegative");
    std::vector<Index> all(cfg.n);
    std::iota(all.begin(), all.end(), Index{0});
    last_.action = ActionSet(std::move(all), cfg.n);
  }

  const Proposal& Propose(RngStream& /*rng*/) {
    auto p = FtrlCappedDistribution(cumulative_gains_, cfg_.eta, cfg_.k);
    last_.action_weights = p.values;
    last_.distribution = std::move(p.values);
    last_.saturated = std::move(p.saturated);
    return last_;
  }

  void Update(const Feedback& feedback) {
    detail::CheckFeedback(last_, feedback);
    for (std::size_t j = 0; j < feedback.indices.size(); ++j) {
      cumulative_gains_[feedback.indices[j]] += feedback.losses[j];
    }
    ++round_;
  }

  std::size_t points_per_round() const { return cfg_.n; }
  std::size_t set_size() const { return cfg_.k; }
  std::string_view name() const { return "ol-ftrl"; }
  std::size_t round() const { return round_; }
  const std::vector<double>& cumulative_gains() const { return cumulative_gains_; }

 private:
  PPlayerConfig cfg_;
  std::vector<double> cumulative_gains_;
  Proposal last_;
  std::size_t round_ = 0;
};

// ---------------------------------------------------------------------------
// Uniform baseline.

/// Plays the uniform distribution and draws a uniformly random k-subset.
class UniformPlayer {
 public:
  explicit UniformPlayer(const PPlayerConfig& cfg)
      : cfg_(cfg),
        uniform_(cfg.n, 1.0 / static_cast<double>(cfg.n)) {
    detail::Require(cfg.k >= 1 && cfg.k <= cfg.n, "uniform: need 1 <= k <= n");
  }

  const Proposal& Propose(RngStream& rng) {
    last_.distribution = uniform_;
    last_.action = DepRound(cfg_.k, uniform_, rng);
    last_.action_weights.assign(cfg_.k, 1.0 / static_cast<double>(cfg_.k));
    return last_;
  }

  void Update(const Feedback& feedback) {
    detail::CheckFeedback(last_, feedback);
    ++round_;
  }

  std::size_t points_per_round() const { return cfg_.k; }
  std::size_t set_size() const { return cfg_.k; }
  std::string_view name() const { return "uniform-baseline"; }
  std::size_t round() const { return round_; }

 private:
  PPlayerConfig cfg_;
  std::vector<double> uniform_;
  Proposal last_;
  std::size_t round_ = 0;
};

static_assert(PPlayer<Exp3IxPlayer>);
static_assert(PPlayer<Exp4MpPlayer>);
static_assert(PPlayer<FtrlCappedPlayer>);
static_assert(PPlayer<UniformPlayer>);

}  // namespace minimax_bandit

#endif  // MINIMAX_BANDIT_P_PLAYERS_HPP_
