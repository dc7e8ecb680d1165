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


#include "minimax_bandit/game_engine.hpp"

#include <cmath>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <gtest/gtest.h>

#include "scenarios.hpp"

namespace minimax_bandit {
namespace {

// Plays one fixed vertex forever; throws on round `fail_at` when set.
class FixedPlayer {
 public:
  FixedPlayer(std::vector<Index> support, std::size_t n, std::size_t fail_at = 0)
      : fail_at_(fail_at) {
    const double k = static_cast<double>(support.size());
    last_.distribution.assign(n, 0.0);
    for (Index i : support) last_.distribution[i] = 1.0 / k;
    last_.action_weights.assign(support.size(), 1.0 / k);
    last_.action = ActionSet(std::move(support), n);
  }
  const Proposal& Propose(RngStream&) {
    if (++round_ == fail_at_) throw std::runtime_error("scripted failure");
    return last_;
  }
  void Update(const Feedback&) {}
  std::size_t points_per_round() const { return last_.action.size(); }
  std::size_t set_size() const { return last_.action.size(); }
  std::string_view name() const { return "fixed"; }

 private:
  Proposal last_;
  std::size_t round_ = 0;
  std::size_t fail_at_;
};
static_assert(PPlayer<FixedPlayer>);

GameConfig Config(std::size_t rounds, double radius) {
  GameConfig cfg;
  cfg.rounds = rounds;
  cfg.radius = radius;
  cfg.measure_time = false;
  return cfg;
}

TEST(CheckpointsTest, GeometricSchedule) {
  const auto c = GeometricCheckpoints(1000);
  EXPECT_EQ(c.front(), 1u);
  EXPECT_EQ(c.back(), 1000u);
  EXPECT_TRUE(std::is_sorted(c.begin(), c.end()));
  EXPECT_EQ(std::adjacent_find(c.begin(), c.end()), c.end());
  EXPECT_LE(c.size(), 31u);
  EXPECT_EQ(GeometricCheckpoints(1), std::vector<std::size_t>({1}));
}

TEST(RunGameTest, SingleRoundAverages) {
  const auto data = scenarios::SyntheticRegression(20, 3, 1);
  LinearModel model(data);
  UniformPlayer player(PPlayerConfig{20, 4, 1, 0.05, 0, 0, 0});
  const auto trace = RunGame(player, model, Config(1, 1.0));
  ASSERT_EQ(trace.checkpoints.size(), 1u);
  const auto& cp = trace.final();
  EXPECT_EQ(cp.w_bar, std::vector<double>(model.dim(), 0.0));
  EXPECT_EQ(cp.w_bar, cp.w_last);
  int at_cap = 0;
  for (double a : cp.a_bar) {
    EXPECT_TRUE(a == 0.0 || a == 0.25);
    at_cap += a == 0.25;
  }
  EXPECT_EQ(at_cap, 4);
}

TEST(RunGameTest, ConstantLossesGiveZeroGap) {
  const auto data = scenarios::FrozenLosses(std::vector<double>(15, 0.36));
  LinearModel model(data);
  Exp4MpPlayer player(Exp4MpParameters(15, 3, 500, 0.05));
  const auto trace = RunGame(player, model, Config(500, 0.0));
  for (const auto& cp : trace.checkpoints) {
    EXPECT_NEAR(cp.gap.gap, 0.0, 1e-12);
    EXPECT_NEAR(cp.gap.max_side, 0.36, 1e-12);
  }
}

TEST(DualGapTest, MaxSideIsTopKMean) {
  const auto data = scenarios::FrozenLosses({0.9, 0.1, 0.5, 0.3});
  LinearModel model(data);
  const std::vector<double> w = {0.0, 0.0};
  const std::vector<double> q = {0.25, 0.25, 0.25, 0.25};
  const auto g = DualGap(model, w, q, 2, 0.0);
  EXPECT_NEAR(g.max_side, 0.7, 1e-12);
  EXPECT_NEAR(g.min_side, 0.45, 1e-12);
  EXPECT_NEAR(g.gap, 0.25, 1e-12);
}

TEST(DualGapTest, ZeroAtSaddlePoint) {
  // Two points with x = 0 and y = (0, 0.5): the saddle is b = 0.25,
  // p = (1/2, 1/2), value 1/16.
  Dataset data;
  data.rows = 2;
  data.features = 1;
  data.x = {0.0, 0.0};
  data.y = {0.0, 0.5};
  LinearModel model(data);
  const std::vector<double> w = {0.0, 0.25};
  const std::vector<double> q = {0.5, 0.5};
  const auto g = DualGap(model, w, q, 1, 1.0);
  EXPECT_NEAR(g.max_side, 0.0625, 1e-15);
  EXPECT_NEAR(g.min_side, 0.0625, 1e-12);
  EXPECT_NEAR(g.gap, 0.0, 1e-12 + g.tolerance);
  EXPECT_TRUE(g.converged);
}

TEST(DualGapTest, NonNegativeUpToTolerance) {
  std::mt19937_64 gen(3);
  const auto data = scenarios::SyntheticRegression(12, 2, 3);
  LinearModel model(data);
  std::normal_distribution<double> g(0.0, 0.4);
  std::exponential_distribution<double> e(1.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> w(model.dim());
    for (double& x : w) x = g(gen);
    ProjectToBall(w, 1.0);
    std::vector<double> q(12);
    for (double& x : q) x = e(gen);
    const double s = Sum(q);
    for (double& x : q) x /= s;
    // Any q works on the min side; the max side ranges over S_{n,k}.
    const auto r = DualGap(model, w, q, 1 + trial % 4, 1.0);
    EXPECT_GE(r.gap, -r.tolerance - 1e-12);
  }
}

TEST(RunGameTest, AveragedActionStaysInKSet) {
  const auto data = scenarios::SyntheticRegression(40, 3, 4);
  LinearModel model(data);
  Exp4MpPlayer player(Exp4MpParameters(40, 6, 2000, 0.05));
  const auto trace = RunGame(player, model, Config(2000, 1.0));
  for (const auto& cp : trace.checkpoints) {
    EXPECT_NEAR(Sum(cp.a_bar), 1.0, 1e-9);
    EXPECT_NEAR(Sum(cp.p_bar), 1.0, 1e-9);
    for (double a : cp.a_bar) EXPECT_LE(a, 1.0 / 6 + 1e-9);
    for (double p : cp.p_bar) EXPECT_LE(p, 1.0 / 6 + 1e-9);
  }
}

TEST(RunGameTest, DataPointAccounting) {
  const auto data = scenarios::SyntheticRegression(30, 2, 5);
  LinearModel model(data);
  auto cfg = Config(50, 1.0);
  cfg.checkpoints = {10, 50};
  {
    Exp4MpPlayer p(Exp4MpParameters(30, 5, 50, 0.05));
    const auto tr = RunGame(p, model, cfg);
    EXPECT_EQ(tr.checkpoints[0].data_points, 50u);
    EXPECT_EQ(tr.final().data_points, 250u);
  }
  {
    FtrlCappedPlayer p(PPlayerConfig{30, 5, 50, 0.05, FtrlEta(30, 5, 50), 0, 0});
    const auto tr = RunGame(p, model, cfg);
    EXPECT_EQ(tr.checkpoints[0].data_points, 300u);
    EXPECT_EQ(tr.final().data_points, 1500u);
  }
  {
    Exp3IxPlayer p(Exp3IxParameters(30, 50));
    const auto tr = RunGame(p, model, cfg);
    EXPECT_EQ(tr.final().data_points, 50u);
  }
}

TEST(RunGameTest, Deterministic) {
  const auto data = scenarios::SyntheticRegression(25, 3, 6);
  LinearModel model(data);
  const auto run = [&] {
    Exp4MpPlayer p(Exp4MpParameters(25, 5, 3000, 0.05));
    auto cfg = Config(3000, 1.0);
    cfg.seed = 77;
    return RunGame(p, model, cfg);
  };
  const auto a = run(), b = run();
  ASSERT_EQ(a.checkpoints.size(), b.checkpoints.size());
  for (std::size_t c = 0; c < a.checkpoints.size(); ++c) {
    EXPECT_EQ(a.checkpoints[c].gap.gap, b.checkpoints[c].gap.gap);
    EXPECT_EQ(a.checkpoints[c].w_bar, b.checkpoints[c].w_bar);
    EXPECT_EQ(a.checkpoints[c].a_bar, b.checkpoints[c].a_bar);
    EXPECT_EQ(a.checkpoints[c].task_metric, b.checkpoints[c].task_metric);
  }
}

TEST(RunGameTest, ErrorsCarryRound) {
  const auto data = scenarios::SyntheticRegression(10, 2, 7);
  LinearModel model(data);
  FixedPlayer player({0, 1}, 10, 3);
  try {
    RunGame(player, model, Config(10, 1.0));
    FAIL() << "expected a GameError";
  } catch (const GameError& e) {
    EXPECT_EQ(e.round(), 3u);
  }
}

TEST(RunGameTest, InfeasibleHorizonFailsBeforeStart) {
  EXPECT_THROW(Exp4MpPlayer(PPlayerConfig{100, 2, 50, 0.05, 0.1, 0.1, 1.0}), InvalidArgument);
}

TEST(RegretTest, HindsightBestVertexHasZeroRegret) {
  const auto data = scenarios::FrozenLosses({0.2, 0.9, 0.4, 0.8, 0.1});
  LinearModel model(data);
  FixedPlayer player({1, 3}, 5);
  auto cfg = Config(200, 0.0);
  cfg.regret_accounting = true;
  const auto trace = RunGame(player, model, cfg);
  ASSERT_TRUE(trace.final().regret.has_value());
  EXPECT_NEAR(trace.final().regret->p_regret, 0.0, 1e-10);
}

TEST(RegretTest, UniformBaselineClosedForm) {
  const std::size_t n = 8, t_total = 20000;
  std::vector<double> l(n, 0.0);
  l[0] = 1.0;
  const auto data = scenarios::FrozenLosses(l);
  LinearModel model(data);
  UniformPlayer player(PPlayerConfig{n, 1, t_total, 0.05, 0, 0, 0});
  auto cfg = Config(t_total, 0.0);
  cfg.regret_accounting = true;
  cfg.checkpoints = {t_total};
  const auto r = *RunGame(player, model, cfg).final().regret;
  const double closed = t_total * (1.0 - 1.0 / n);
  EXPECT_NEAR(r.p_regret_expected, closed, 1e-8);
  const double sigma = std::sqrt(t_total * (1.0 / n) * (1.0 - 1.0 / n));
  EXPECT_NEAR(r.p_regret, closed, 4 * sigma);
}

TEST(RegretTest, RegretSumBoundsGap) {
  // Small ball and small targets keep every loss below the clip, so the
  // objective is convex in w.
  auto data = scenarios::SyntheticRegression(30, 3, 8);
  for (double& y : data.y) y *= 0.2;
  LinearModel model(data);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    Exp4MpPlayer player(Exp4MpParameters(30, 5, 3000, 0.05));
    auto cfg = Config(3000, 0.3);
    cfg.seed = seed;
    cfg.regret_accounting = true;
    const auto trace = RunGame(player, model, cfg);
    for (const auto& cp : trace.checkpoints) {
      const auto& r = *cp.regret;
      const double t = static_cast<double>(cp.round);
      EXPECT_LE(cp.gap.gap, (r.p_regret + r.w_regret) / t + 1e-9) << "round " << cp.round;
    }
  }
}

TEST(RunGameTest, SyntheticGapWithinBound) {
  const auto data = scenarios::SyntheticRegression(100, 5, 9);
  LinearModel model(data);
  const std::size_t t_total = 20000;
  Exp4MpPlayer player(Exp4MpParameters(100, 10, t_total, 0.05));
  auto cfg = Config(t_total, 1.0);
  cfg.checkpoints = {1000, t_total};
  const auto trace = RunGame(player, model, cfg);
  const double rhs = BoundRhs(Bound::kKSetGap, 100, 10, t_total, 0.05,
                                     1.0 * std::sqrt(2.0));
  EXPECT_LE(trace.final().gap.gap, rhs + 1e-4);
  EXPECT_LT(trace.final().gap.gap, trace.checkpoints[0].gap.gap);
}

}  // namespace
}  // namespace minimax_bandit
