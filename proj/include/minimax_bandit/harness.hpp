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

// Dataset loading, step-size calculation and multi-seed experiment runs.
//
// Output layout of an experiment directory:
//   <method>_seed<seed>.csv  one row per checkpoint
//   summary.json             min / median / max across seeds per checkpoint
//   failures.json            only when some seed failed

#ifndef MINIMAX_BANDIT_HARNESS_HPP_
#define MINIMAX_BANDIT_HARNESS_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "minimax_bandit/common.hpp"
#include "minimax_bandit/game_engine.hpp"
#include "minimax_bandit/p_players.hpp"
#include "minimax_bandit/w_players.hpp"

namespace minimax_bandit {

// ---------------------------------------------------------------------------
// Datasets.

struct LoadReport {
  std::size_t rows_read = 0;
  std::size_t rows_skipped = 0;  // rows with a missing value
  std::vector<std::string> feature_names;
  std::string target_name;
};

namespace detail {

inline std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) {
    const auto first = cell.find_first_not_of(" \t\r\"");
    const auto last = cell.find_last_not_of(" \t\r\"");
    out.push_back(first == std::string::npos ? "" : cell.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline bool IsMissing(const std::string& cell) {
  return cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan" || cell == "?";
}

inline double ParseNumber(const std::string& cell, std::size_t line, const std::string& column) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(cell, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  Require(used == cell.size() && used > 0 && std::isfinite(v), "csv line ", line,
          ": non-numeric value '", cell, "' in column ", column);
  return v;
}

}  // namespace detail

/// Min-max normalizes each feature column to [0, 1] in place. Constant
/// columns become all zeros.
inline void NormalizeFeatures(Dataset& data) {
  const std::size_t d = data.features;
  for (std::size_t j = 0; j < d; ++j) {
    double lo = data.x[j], hi = data.x[j];
    for (Index i = 0; i < data.rows; ++i) {
      lo = std::min(lo, data.x[i * d + j]);
      hi = std::max(hi, data.x[i * d + j]);
    }
    const double range = hi - lo;
    for (Index i = 0; i < data.rows; ++i) {
      double& v = data.x[i * d + j];
      v = range > 0.0 ? (v - lo) / range : 0.0;
    }
  }
}

inline void NormalizeTargets(Dataset& data) {
  const auto [lo_it, hi_it] = std::minmax_element(data.y.begin(), data.y.end());
  const double lo = *lo_it, range = *hi_it - *lo_it;
  for (double& v : data.y) v = range > 0.0 ? (v - lo) / range : 0.0;
}

/// Reads a comma-separated file with a header row. The target is the last
/// column unless `target_column` names another one. Rows with a missing value
/// are skipped and counted; any other non-numeric cell is an error.
inline Dataset LoadDataset(const std::filesystem::path& path, TaskKind task,
                           const std::string& target_column = "",
                           LoadReport* report = nullptr) {
  std::ifstream in(path);
  detail::Require(in.good(), "cannot open dataset ", path.string());
  std::string line;
  detail::Require(static_cast<bool>(std::getline(in, line)), "dataset ", path.string(),
                  " has no header row");
  const auto header = detail::SplitCsvLine(line);
  detail::Require(header.size() >= 2, "dataset needs at least one feature and a target");
  std::size_t target = header.size() - 1;
  if (!target_column.empty()) {
    const auto it = std::find(header.begin(), header.end(), target_column);
    detail::Require(it != header.end(), "target column '", target_column, "' not found");
    target = static_cast<std::size_t>(it - header.begin());
  }

  LoadReport local;
  LoadReport& rep = report ? *report : local;
  rep = {};
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (j == target) {
      rep.target_name = header[j];
    } else {
      rep.feature_names.push_back(header[j]);
    }
  }

  Dataset data;
  data.task = task;
  data.features = header.size() - 1;
  std::vector<double> raw_labels;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = detail::SplitCsvLine(line);
    detail::Require(cells.size() == header.size(), "csv line ", line_no, ": expected ",
                    header.size(), " fields, got ", cells.size());
    ++rep.rows_read;
    if (std::any_of(cells.begin(), cells.end(), detail::IsMissing)) {
      ++rep.rows_skipped;
      continue;
    }
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const double v = detail::ParseNumber(cells[j], line_no, header[j]);
      if (j == target) {
        data.y.push_back(v);
      } else {
        data.x.push_back(v);
      }
    }
  }
  data.rows = data.y.size();
  detail::Require(data.rows >= 1, "dataset ", path.string(), " has no usable rows");

  NormalizeFeatures(data);
  if (task == TaskKind::kRegression) {
    NormalizeTargets(data);
  } else {
    std::vector<double> labels = data.y;
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    data.classes = labels.size();
    detail::Require(data.classes >= 2, "classification dataset has a single class");
    for (double& v : data.y) {
      v = static_cast<double>(std::lower_bound(labels.begin(), labels.end(), v) -
                              labels.begin());
    }
  }
  return data;
}

// ---------------------------------------------------------------------------
// Methods and step sizes.

enum class Method { kExp4Mp, kFtrl, kExp3Ix, kUniform };

inline std::string MethodName(Method m) {
  switch (m) {
    case Method::kExp4Mp: return "ol-exp4mp";
    case Method::kFtrl: return "ol-ftrl";
    case Method::kExp3Ix: return "ol-exp3ix";
    case Method::kUniform: return "uniform-baseline";
  }
  return "";
}

inline Method ParseMethod(const std::string& name) {
  for (Method m : {Method::kExp4Mp, Method::kFtrl, Method::kExp3Ix, Method::kUniform}) {
    if (MethodName(m) == name) return m;
  }
  detail::Fail("unknown method '", name,
               "' (expected ol-exp4mp, ol-ftrl, ol-exp3ix or uniform-baseline)");
}

struct Hyperparams {
  Method method = Method::kExp4Mp;
  std::size_t n = 0;
  std::size_t k = 1;
  std::size_t budget = 0;  // N, data points; 0 when T was given directly
  std::size_t rounds = 0;  // T
  std::string rounds_convention;
  double delta = 0.05;
  double eta_p = 0.0;
  double gamma = 0.0;
  double c = 0.0;
  double eta_w = 0.0;
  double radius = 1.0;
  // FTRL only: T = N / (2n) and its step size, the other reading of the
  // data-point count per FTRL round.
  std::size_t rounds_alt = 0;
  double eta_p_alt = 0.0;

  PPlayerConfig player_config() const {
    return PPlayerConfig{n, k, rounds, delta, eta_p, gamma, c};
  }
};

/// T, eta_p, gamma, c and eta_w = B sqrt(2/T) from either a data budget N
/// (pass rounds = 0) or a round count T (pass budget = 0).
inline Hyperparams ComputeHyperparams(Method method, std::size_t n, std::size_t k,
                                      std::size_t budget, std::size_t rounds,
                                      double delta, double radius = 1.0) {
  detail::Require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1), got ", delta);
  detail::Require(n >= 2, "need at least two data points, got n=", n);
  detail::Require((budget == 0) != (rounds == 0),
                  "give exactly one of the data budget N and the round count T");
  detail::Require(radius >= 0.0, "ball radius must be nonnegative");
  if (method == Method::kExp3Ix) k = 1;
  detail::Require(k >= 1 && k <= n, "k=", k, " must lie in [1, n=", n, "]");

  Hyperparams h;
  h.method = method;
  h.n = n;
  h.k = k;
  h.budget = budget;
  h.delta = delta;
  h.radius = radius;
  const auto per_round = [&]() -> std::size_t {
    switch (method) {
      case Method::kFtrl: return n;
      case Method::kExp3Ix: return 1;
      default: return k;
    }
  }();
  if (budget != 0) {
    h.rounds = budget / per_round;
    h.rounds_convention = method == Method::kFtrl     ? "T = N / n"
                          : method == Method::kExp3Ix ? "T = N"
                                                      : "T = N / k";
    detail::Require(h.rounds >= 1, "budget N=", budget, " is below one round (",
                    per_round, " data points)");
  } else {
    h.rounds = rounds;
    h.rounds_convention = "T given";
  }

  switch (method) {
    case Method::kExp4Mp: {
      const auto cfg = Exp4MpParameters(n, k, h.rounds, delta);
      h.eta_p = cfg.eta;
      h.gamma = cfg.gamma;
      h.c = cfg.c;
      break;
    }
    case Method::kExp3Ix: {
      const auto cfg = Exp3IxParameters(n, h.rounds, delta);
      h.eta_p = cfg.eta;
      h.gamma = cfg.gamma;
      break;
    }
    case Method::kFtrl:
      h.eta_p = FtrlEta(n, k, h.rounds);
      if (budget != 0 && budget / (2 * n) >= 1) {
        h.rounds_alt = budget / (2 * n);
        h.eta_p_alt = FtrlEta(n, k, h.rounds_alt);
      }
      break;
    case Method::kUniform:
      break;
  }
  h.eta_w = radius * std::sqrt(2.0 / static_cast<double>(h.rounds));
  return h;
}

inline nlohmann::json ToJson(const Hyperparams& h) {
  nlohmann::json j = {{"method", MethodName(h.method)},
                      {"n", h.n},
                      {"k", h.k},
                      {"budget", h.budget},
                      {"rounds", h.rounds},
                      {"rounds_convention", h.rounds_convention},
                      {"delta", h.delta},
                      {"eta_p", h.eta_p},
                      {"gamma", h.gamma},
                      {"c", h.c},
                      {"eta_w", h.eta_w},
                      {"ball_radius", h.radius}};
  if (h.rounds_alt != 0) {
    j["rounds_alt"] = h.rounds_alt;
    j["rounds_alt_convention"] = "T = N / (2n)";
    j["eta_p_alt"] = h.eta_p_alt;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Experiments.

struct ExperimentSpec {
  std::filesystem::path dataset;
  TaskKind task = TaskKind::kClassification;
  std::string target_column;
  Method method = Method::kExp4Mp;
  std::size_t k = 1;
  std::size_t budget = 0;  // N
  std::size_t rounds = 0;  // T
  double delta = 0.05;
  std::vector<std::uint64_t> seeds;
  double radius = 1.0;
  std::filesystem::path out;
  std::optional<double> eta_p, gamma, c, eta_w;
  std::size_t checkpoints_per_decade = 10;
  std::vector<std::size_t> checkpoint_rounds;  // overrides the geometric schedule
  bool measure_time = true;
  OfflineOptions offline;
  std::size_t threads = 0;  // 0: MINIMAX_BANDIT_THREADS or hardware threads
};

inline const std::vector<std::string>& MetricsColumns() {
  static const std::vector<std::string> columns = {
      "method", "seed", "data_points", "dual_gap", "gap_tolerance", "task_metric",
      "elapsed_ms"};
  return columns;
}

struct SeedResult {
  std::uint64_t seed = 0;
  std::optional<GameTrace> trace;
  std::string error;
};

struct ExperimentResult {
  Hyperparams params;
  std::vector<SeedResult> seeds;
  std::filesystem::path out;
  bool ok() const {
    return std::all_of(seeds.begin(), seeds.end(),
                       [](const SeedResult& s) { return s.error.empty(); });
  }
};

/// Validates a spec before anything runs.
inline void ValidateSpec(const ExperimentSpec& spec) {
  detail::Require(spec.delta > 0.0 && spec.delta < 1.0, "delta must lie in (0, 1), got ",
                  spec.delta);
  detail::Require(!spec.seeds.empty(), "at least one seed is required");
  detail::Require((spec.budget == 0) != (spec.rounds == 0),
                  "give exactly one of --budget and --rounds");
  detail::Require(spec.radius >= 0.0, "ball radius must be nonnegative");
  detail::Require(spec.k >= 1, "k must be positive");
}

/// Step sizes for `spec` on a dataset of n points, overrides applied.
inline Hyperparams ResolveHyperparams(const ExperimentSpec& spec, std::size_t n) {
  Hyperparams h = ComputeHyperparams(spec.method, n, spec.k, spec.budget, spec.rounds,
                                     spec.delta, spec.radius);
  if (spec.eta_p) h.eta_p = *spec.eta_p;
  if (spec.gamma) h.gamma = *spec.gamma;
  if (spec.c) h.c = *spec.c;
  if (spec.eta_w) h.eta_w = *spec.eta_w;
  return h;
}

/// One game for one seed.
inline GameTrace RunSeed(const Hyperparams& h, const LinearModel& model,
                         std::uint64_t seed, const ExperimentSpec& spec) {
  GameConfig cfg;
  cfg.rounds = h.rounds;
  cfg.eta_w = h.eta_w;
  cfg.radius = h.radius;
  cfg.seed = seed;
  cfg.offline = spec.offline;
  cfg.measure_time = spec.measure_time;
  cfg.gap_at_p_bar = false;
  cfg.checkpoints = spec.checkpoint_rounds.empty()
                        ? GeometricCheckpoints(h.rounds, spec.checkpoints_per_decade)
                        : spec.checkpoint_rounds;
  const PPlayerConfig pc = h.player_config();
  switch (h.method) {
    case Method::kExp4Mp: {
      Exp4MpPlayer player(pc);
      return RunGame(player, model, cfg);
    }
    case Method::kFtrl: {
      FtrlCappedPlayer player(pc);
      return RunGame(player, model, cfg);
    }
    case Method::kExp3Ix: {
      Exp3IxPlayer player(pc);
      return RunGame(player, model, cfg);
    }
    case Method::kUniform: {
      UniformPlayer player(pc);
      return RunGame(player, model, cfg);
    }
  }
  detail::Fail("unreachable method");
}

namespace detail {

inline std::string FormatReal(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::size_t ThreadCount(std::size_t requested, std::size_t jobs) {
  std::size_t threads = requested;
  if (threads == 0) {
    if (const char* env = std::getenv("MINIMAX_BANDIT_THREADS")) {
      threads = static_cast<std::size_t>(std::strtoull(env, nullptr, 10));
    }
  }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(threads, jobs));
}

inline double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace detail

inline std::filesystem::path MetricsPath(const std::filesystem::path& out, Method method,
                                         std::uint64_t seed) {
  return out / (MethodName(method) + "_seed" + std::to_string(seed) + ".csv");
}

inline void WriteMetrics(const std::filesystem::path& path, Method method,
                         std::uint64_t seed, const GameTrace& trace) {
  std::ofstream os(path, std::ios::binary);
  detail::Require(os.good(), "cannot write ", path.string());
  const auto& cols = MetricsColumns();
  for (std::size_t j = 0; j < cols.size(); ++j) os << (j ? "," : "") << cols[j];
  os << '\n';
  for (const Checkpoint& cp : trace.checkpoints) {
    char elapsed[40];
    std::snprintf(elapsed, sizeof elapsed, "%.3f", cp.elapsed_ms);
    os << MethodName(method) << ',' << seed << ',' << cp.data_points << ','
       << detail::FormatReal(cp.gap.gap) << ',' << detail::FormatReal(cp.gap.tolerance)
       << ',' << detail::FormatReal(cp.task_metric) << ',' << elapsed << '\n';
  }
}

inline nlohmann::json Summarize(const Hyperparams& h, const std::vector<SeedResult>& seeds) {
  nlohmann::json summary;
  summary["method"] = MethodName(h.method);
  summary["params"] = ToJson(h);
  std::vector<const GameTrace*> traces;
  for (const auto& s : seeds) {
    if (s.trace) traces.push_back(&*s.trace);
  }
  summary["seeds_completed"] = traces.size();
  nlohmann::json cps = nlohmann::json::array();
  if (!traces.empty()) {
    const std::size_t m = traces.front()->checkpoints.size();
    for (std::size_t c = 0; c < m; ++c) {
      std::vector<double> gaps, metrics;
      for (const GameTrace* t : traces) {
        gaps.push_back(t->checkpoints[c].gap.gap);
        metrics.push_back(t->checkpoints[c].task_metric);
      }
      cps.push_back({{"data_points", traces.front()->checkpoints[c].data_points},
                     {"gap_min", *std::min_element(gaps.begin(), gaps.end())},
                     {"gap_med", detail::Median(gaps)},
                     {"gap_max", *std::max_element(gaps.begin(), gaps.end())},
                     {"metric_min", *std::min_element(metrics.begin(), metrics.end())},
                     {"metric_med", detail::Median(metrics)},
                     {"metric_max", *std::max_element(metrics.begin(), metrics.end())}});
    }
  }
  summary["checkpoints"] = std::move(cps);
  return summary;
}

/// Runs one game per seed on the given dataset and writes the output files.
/// Seeds run in parallel; files are written after all games finish.
inline ExperimentResult RunExperimentOn(const ExperimentSpec& spec, const Dataset& data) {
  ValidateSpec(spec);
  detail::Require(spec.method == Method::kExp3Ix || spec.k <= data.rows, "k=", spec.k,
                  " exceeds the dataset size n=", data.rows);
  ExperimentResult result;
  result.params = ResolveHyperparams(spec, data.rows);
  result.out = spec.out;
  const LinearModel model(data);

  result.seeds.resize(spec.seeds.size());
  std::atomic<std::size_t> cursor{0};
  const auto worker = [&] {
    for (std::size_t j; (j = cursor.fetch_add(1)) < spec.seeds.size();) {
      SeedResult& r = result.seeds[j];
      r.seed = spec.seeds[j];
      try {
        r.trace = RunSeed(result.params, model, r.seed, spec);
      } catch (const std::exception& e) {
        r.error = e.what();
      }
    }
  };
  const std::size_t threads = detail::ThreadCount(spec.threads, spec.seeds.size());
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  if (!spec.out.empty()) {
    std::filesystem::create_directories(spec.out);
    nlohmann::json failures = nlohmann::json::array();
    for (const SeedResult& r : result.seeds) {
      if (r.trace) {
        WriteMetrics(MetricsPath(spec.out, spec.method, r.seed), spec.method, r.seed,
                     *r.trace);
      } else {
        failures.push_back({{"seed", r.seed}, {"error", r.error}});
      }
    }
    std::ofstream(spec.out / "summary.json") << Summarize(result.params, result.seeds).dump(2)
                                             << '\n';
    if (!failures.empty()) {
      std::ofstream(spec.out / "failures.json")
          << nlohmann::json{{"method", MethodName(spec.method)}, {"failures", failures}}
                 .dump(2)
          << '\n';
    }
  }
  return result;
}

inline ExperimentResult RunExperiment(const ExperimentSpec& spec) {
  ValidateSpec(spec);
  const Dataset data = LoadDataset(spec.dataset, spec.task, spec.target_column);
  return RunExperimentOn(spec, data);
}

}  // namespace minimax_bandit

#endif  // MINIMAX_BANDIT_HARNESS_HPP_
