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


// Command-line front end: run, hyperparams, project, verify.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "minimax_bandit/minimax_bandit.hpp"

namespace mb = minimax_bandit;

namespace {

mb::TaskKind ParseTask(const std::string& s) {
  if (s == "classification") return mb::TaskKind::kClassification;
  if (s == "regression") return mb::TaskKind::kRegression;
  throw mb::InvalidArgument("--task must be classification or regression, got '" + s + "'");
}

std::vector<double> ParseReals(const std::string& s) {
  std::vector<double> out;
  std::stringstream is(s);
  std::string cell;
  while (std::getline(is, cell, ',')) out.push_back(std::stod(cell));
  return out;
}

void SetOptional(std::optional<double>& dst, double v) {
  if (!std::isnan(v)) dst = v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Min-max learning with bandit and full-information p-players."};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run one method over several seeds.");
  mb::ExperimentSpec spec;
  std::string dataset, task = "classification", method = "ol-exp4mp", out = "results";
  double eta_p = NAN, gamma = NAN, c = NAN, eta_w = NAN;
  bool no_timing = false;
  run->add_option("--dataset", dataset, "CSV file with a header row")->required();
  run->add_option("--task", task, "classification or regression");
  run->add_option("--target", spec.target_column, "Target column (default: last)");
  run->add_option("--method", method, "ol-exp4mp, ol-ftrl, ol-exp3ix or uniform-baseline");
  run->add_option("--k", spec.k, "Set size k");
  auto* budget_opt = run->add_option("--budget", spec.budget, "Data budget N");
  auto* rounds_opt = run->add_option("--rounds", spec.rounds, "Round count T");
  budget_opt->excludes(rounds_opt);
  run->add_option("--delta", spec.delta, "Confidence parameter");
  run->add_option("--ball-radius", spec.radius, "Radius B of the parameter ball");
  run->add_option("--seeds", spec.seeds, "Seeds, space separated")->expected(1, -1);
  run->add_option("--out", out, "Output directory");
  run->add_option("--checkpoints", spec.checkpoints_per_decade,
                  "Checkpoints per decade of rounds");
  run->add_option("--checkpoint-rounds", spec.checkpoint_rounds,
                  "Explicit checkpoint rounds (overrides --checkpoints)");
  run->add_option("--eta-p", eta_p, "Override the p-player step size");
  run->add_option("--gamma", gamma, "Override the exploration parameter");
  run->add_option("--c", c, "Override the confidence constant");
  run->add_option("--eta-w", eta_w, "Override the OGD step size");
  run->add_option("--offline-budget", spec.offline.budget, "Iterations of the min-side solver");
  run->add_option("--offline-tol", spec.offline.tol, "Gradient-mapping tolerance");
  run->add_option("--threads", spec.threads, "Parallel seeds (default: env or cores)");
  run->add_flag("--no-timing", no_timing, "Write elapsed_ms = 0 (byte-stable output)");

  // hyperparams
  auto* hyper = app.add_subcommand("hyperparams", "Print T and the step sizes.");
  std::string h_method = "ol-exp4mp", h_dataset;
  std::size_t h_n = 0, h_k = 1, h_budget = 0, h_rounds = 0;
  double h_delta = 0.05, h_radius = 1.0;
  hyper->add_option("--method", h_method);
  hyper->add_option("--n", h_n, "Number of data points");
  hyper->add_option("--dataset", h_dataset, "Take n from this CSV instead");
  hyper->add_option("--k", h_k);
  auto* hb = hyper->add_option("--budget", h_budget, "Data budget N");
  auto* hr = hyper->add_option("--rounds", h_rounds, "Round count T");
  hb->excludes(hr);
  hyper->add_option("--delta", h_delta);
  hyper->add_option("--ball-radius", h_radius);

  // project
  auto* project = app.add_subcommand("project", "Mix-project a weight vector onto S_{n,k}.");
  std::string weights;
  std::size_t p_k = 1;
  double p_gamma = 0.0;
  project->add_option("--weights", weights, "Comma-separated positive weights")->required();
  project->add_option("--k", p_k);
  project->add_option("--gamma", p_gamma);

  // verify
  auto* verify = app.add_subcommand("verify", "Run the acceptance suite.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run) {
      spec.dataset = dataset;
      spec.task = ParseTask(task);
      spec.method = mb::ParseMethod(method);
      spec.out = out;
      spec.measure_time = !no_timing;
      if (spec.seeds.empty()) spec.seeds = {0, 1, 2, 3, 4};
      SetOptional(spec.eta_p, eta_p);
      SetOptional(spec.gamma, gamma);
      SetOptional(spec.c, c);
      SetOptional(spec.eta_w, eta_w);
      mb::LoadReport report;
      mb::ValidateSpec(spec);
      const auto data = mb::LoadDataset(spec.dataset, spec.task, spec.target_column, &report);
      std::cerr << "loaded " << data.rows << " rows, " << data.features << " features";
      if (data.classes) std::cerr << ", " << data.classes << " classes";
      if (report.rows_skipped) std::cerr << " (" << report.rows_skipped << " rows skipped)";
      std::cerr << '\n';
      const auto result = mb::RunExperimentOn(spec, data);
      for (const auto& s : result.seeds) {
        if (!s.error.empty()) std::cerr << "seed " << s.seed << " failed: " << s.error << '\n';
      }
      std::cout << mb::Summarize(result.params, result.seeds).dump(2) << '\n';
      return result.ok() ? 0 : 1;
    }
    if (*hyper) {
      if (!h_dataset.empty()) {
        h_n = mb::LoadDataset(h_dataset, mb::TaskKind::kRegression).rows;
      }
      const auto h = mb::ComputeHyperparams(mb::ParseMethod(h_method), h_n, h_k, h_budget,
                                            h_rounds, h_delta, h_radius);
      std::cout << mb::ToJson(h).dump(2) << '\n';
      return 0;
    }
    if (*project) {
      const auto v = ParseReals(weights);
      const auto p = mb::MixProject(v, p_k, p_gamma);
      nlohmann::json j = {{"values", p.values}, {"cap", p.cap}, {"saturated", p.saturated}};
      std::cout << j.dump(2) << '\n';
      return 0;
    }
    if (*verify) {
      return std::system(MINIMAX_BANDIT_ACCEPTANCE_BIN) == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
