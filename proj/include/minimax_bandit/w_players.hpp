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

// The minimizing player: linear models with bounded losses, online gradient
// descent on an L2 ball, and a full-batch solver for min_w <L(w); p>.
//
// Losses are clipped at 1 so that every per-point loss lies in [0, 1]. Where
// the clip binds the (sub)gradient is zero.

#ifndef MINIMAX_BANDIT_W_PLAYERS_HPP_
#define MINIMAX_BANDIT_W_PLAYERS_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "minimax_bandit/capped_simplex.hpp"
#include "minimax_bandit/common.hpp"

namespace minimax_bandit {

enum class TaskKind { kRegression, kClassification };
enum class LossKind { kSquared, kCrossEntropy };

/// Row-major design matrix with features in [0, 1]. Regression targets lie in
/// [0, 1]; classification targets are labels 0..classes-1 stored as doubles.
struct Dataset {
  TaskKind task = TaskKind::kRegression;
  std::size_t rows = 0;
  std::size_t features = 0;
  std::size_t classes = 0;  // 0 for regression
  std::vector<double> x;
  std::vector<double> y;

  std::span<const double> Row(Index i) const {
    return {x.data() + i * features, features};
  }
  std::size_t size() const { return rows; }
};

inline constexpr std::size_t kMaxClasses = 256;
inline constexpr double kLossCeiling = 1.0;

/// Flattened parameters of a linear model, constrained to an L2 ball.
/// Layout: weight matrix (outputs x features, row-major) then the biases.
struct ModelParams {
  std::vector<double> values;
  double radius = 1.0;
};

/// A linear model bound to its dataset. Squared loss for regression
/// (f(x) = theta.x + b), softmax cross-entropy for classification
/// (f(x) = softmax(Theta x + b)).
class LinearModel {
 public:
  explicit LinearModel(const Dataset& data)
      : data_(&data),
        loss_(data.task == TaskKind::kRegression ? LossKind::kSquared
                                                 : LossKind::kCrossEntropy),
        outputs_(data.task == TaskKind::kRegression ? 1 : data.classes) {
    detail::Require(data.rows >= 1, "model: empty dataset");
    detail::Require(data.x.size() == data.rows * data.features &&
                        data.y.size() == data.rows,
                    "model: dataset arrays have inconsistent sizes");
    if (loss_ == LossKind::kCrossEntropy) {
      detail::Require(outputs_ >= 2 && outputs_ <= kMaxClasses,
                      "model: classification needs 2..", kMaxClasses,
                      " classes, got ", outputs_);
    }
  }

  const Dataset& data() const { return *data_; }
  LossKind loss_kind() const { return loss_; }
  std::size_t outputs() const { return outputs_; }
  std::size_t dim() const { return outputs_ * (data_->features + 1); }
  std::size_t size() const { return data_->rows; }

  ModelParams Zero(double radius) const {
    return {std::vector<double>(dim(), 0.0), radius};
  }

  /// Unclipped loss of point i.
  double RawLoss(std::span<const double> w, Index i) const {
    if (loss_ == LossKind::kSquared) {
      const double r = Predict(w, i) - data_->y[i];
      return r * r;
    }
    std::array<double, kMaxClasses> z;
    const double lse = Logits(w, i, z);
    return lse - z[Label(i)];
  }

  /// min(raw loss, 1).
  double Loss(std::span<const double> w, Index i) const {
    return std::min(RawLoss(w, i), kLossCeiling);
  }

  /// grad += weight * d loss_i / dw, or nothing where the clip binds.
  void AddGradient(std::span<const double> w, Index i, double weight,
                   std::span<double> grad) const {
    if (weight == 0.0) return;
    const auto row = data_->Row(i);
    const std::size_t d = data_->features;
    const std::size_t bias = outputs_ * d;
    if (loss_ == LossKind::kSquared) {
      const double r = Predict(w, i) - data_->y[i];
      if (r * r >= kLossCeiling) return;
      const double s = weight * 2.0 * r;
      for (std::size_t j = 0; j < d; ++j) grad[j] += s * row[j];
      grad[bias] += s;
      return;
    }
    std::array<double, kMaxClasses> z;
    const double lse = Logits(w, i, z);
    const Index label = Label(i);
    if (lse - z[label] >= kLossCeiling) return;
    for (std::size_t c = 0; c < outputs_; ++c) {
      const double s =
          weight * (std::exp(z[c] - lse) - (c == label ? 1.0 : 0.0));
      double* g = grad.data() + c * d;
      for (std::size_t j = 0; j < d; ++j) g[j] += s * row[j];
      grad[bias + c] += s;
    }
  }

  /// Regression output theta.x + b.
  double Predict(std::span<const double> w, Index i) const {
    const auto row = data_->Row(i);
    const std::size_t d = data_->features;
    double f = w[d];
    for (std::size_t j = 0; j < d; ++j) f += w[j] * row[j];
    return f;
  }

  /// Predicted class (argmax of logits, lowest index on ties).
  Index PredictClass(std::span<const double> w, Index i) const {
    std::array<double, kMaxClasses> z;
    Logits(w, i, z);
    return static_cast<Index>(
        std::max_element(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(outputs_)) -
        z.begin());
  }

  Index Label(Index i) const { return static_cast<Index>(data_->y[i]); }

 private:
  // Fills z with the logits and returns log-sum-exp(z).
  double Logits(std::span<const double> w, Index i,
                std::array<double, kMaxClasses>& z) const {
    const auto row = data_->Row(i);
    const std::size_t d = data_->features;
    const std::size_t bias = outputs_ * d;
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < outputs_; ++c) {
      const double* wc = w.data() + c * d;
      double v = w[bias + c];
      for (std::size_t j = 0; j < d; ++j) v += wc[j] * row[j];
      z[c] = v;
      top = std::max(top, v);
    }
    double s = 0.0;
    for (std::size_t c = 0; c < outputs_; ++c) s += std::exp(z[c] - top);
    return top + std::log(s);
  }

  const Dataset* data_;
  LossKind loss_;
  std::size_t outputs_;
};

/// Clipped losses at `indices`.
inline std::vector<double> EvalLosses(const LinearModel& model,
                                      std::span<const double> w,
                                      std::span<const Index> indices) {
  std::vector<double> out(indices.size());
  for (std::size_t j = 0; j < indices.size(); ++j) out[j] = model.Loss(w, indices[j]);
  return out;
}

/// Clipped losses of every data point, L(w).
inline std::vector<double> EvalAllLosses(const LinearModel& model,
                                         std::span<const double> w) {
  std::vector<double> out(model.size());
  for (Index i = 0; i < out.size(); ++i) out[i] = model.Loss(w, i);
  return out;
}

/// Gradient of sum_j weights_j * loss_{indices_j}(w).
inline std::vector<double> GradWeightedLoss(const LinearModel& model,
                                            std::span<const double> w,
                                            std::span<const Index> indices,
                                            std::span<const double> weights) {
  detail::Require(indices.size() == weights.size(),
                  "gradient: indices and weights differ in length");
  std::vector<double> grad(model.dim(), 0.0);
  for (std::size_t j = 0; j < indices.size(); ++j) {
    detail::Require(weights[j] >= 0.0, "gradient: negative weight");
    model.AddGradient(w, indices[j], weights[j], grad);
  }
  return grad;
}

/// Euclidean projection onto the ball of the given radius (rescaling).
inline void ProjectToBall(std::span<double> w, double radius) {
  const double norm = Norm2(w);
  if (norm <= radius) return;
  if (radius <= 0.0) {
    std::fill(w.begin(), w.end(), 0.0);
    return;
  }
  const double s = radius / norm;
  for (double& v : w) v *= s;
}

/// One projected online gradient step: w <- Proj_B(w - eta * g).
inline ModelParams OgdUpdate(const ModelParams& params,
                             std::span<const double> gradient, double eta) {
  detail::Require(eta > 0.0, "ogd: step size must be positive");
  detail::Require(gradient.size() == params.values.size(),
                  "ogd: gradient dimension mismatch");
  ModelParams out = params;
  for (std::size_t j = 0; j < out.values.size(); ++j) {
    out.values[j] -= eta * gradient[j];
  }
  ProjectToBall(out.values, out.radius);
  return out;
}

/// sum_i weights_i * loss_i(w) over the support of `weights`.
inline double WeightedObjective(const LinearModel& model,
                                std::span<const double> w,
                                std::span<const double> weights) {
  double f = 0.0;
  for (Index i = 0; i < weights.size(); ++i) {
    if (weights[i] != 0.0) f += weights[i] * model.Loss(w, i);
  }
  return f;
}

// ---------------------------------------------------------------------------
// Offline solver for the min side of the dual gap.

struct OfflineOptions {
  std::size_t budget = 100000;
  double tol = 1e-8;  // on the gradient-mapping norm
  // Gradient-mapping checks happen every `check_every` iterations.
  std::size_t check_every = 10;
  // Keep the objective value of every accepted iterate.
  bool record_history = false;
};

struct OfflineResult {
  ModelParams params;
  double value = 0.0;
  bool converged = false;
  // A plain projected step from the current iterate no longer decreases the
  // objective in floating point; the solver stops early.
  bool stalled = false;
  double gradient_mapping = 0.0;
  // Upper bound on value - min: 2B * ||gradient mapping||, exact for the
  // convex (unclipped) regime.
  double tolerance = 0.0;
  std::size_t iterations = 0;
  std::vector<double> history;
};

namespace detail {

// Largest eigenvalue of sum_i weights_i z_i z_i^T with z_i = (x_i, 1), by
// power iteration.
inline double WeightedGramNorm(const Dataset& data,
                               std::span<const double> weights) {
  const std::size_t d = data.features + 1;
  std::vector<double> gram(d * d, 0.0);
  std::vector<double> z(d);
  for (Index i = 0; i < data.rows; ++i) {
    if (weights[i] == 0.0) continue;
    const auto row = data.Row(i);
    std::copy(row.begin(), row.end(), z.begin());
    z[d - 1] = 1.0;
    for (std::size_t a = 0; a < d; ++a) {
      const double s = weights[i] * z[a];
      for (std::size_t b = 0; b < d; ++b) gram[a * d + b] += s * z[b];
    }
  }
  std::vector<double> v(d, 1.0 / std::sqrt(static_cast<double>(d)));
  std::vector<double> next(d);
  double lambda = 0.0;
  for (int iter = 0; iter < 100; ++iter) {
    for (std::size_t a = 0; a < d; ++a) {
      double s = 0.0;
      for (std::size_t b = 0; b < d; ++b) s += gram[a * d + b] * v[b];
      next[a] = s;
    }
    const double norm = Norm2(next);
    if (norm == 0.0) return 0.0;
    for (std::size_t a = 0; a < d; ++a) v[a] = next[a] / norm;
    lambda = norm;
  }
  return lambda;
}

inline double ValueAndGradient(const LinearModel& model,
                               std::span<const double> w,
                               std::span<const double> weights,
                               std::span<const Index> support,
                               std::vector<double>& grad) {
  std::fill(grad.begin(), grad.end(), 0.0);
  double f = 0.0;
  for (Index i : support) {
    f += weights[i] * model.Loss(w, i);
    model.AddGradient(w, i, weights[i], grad);
  }
  return f;
}

inline double ValueOn(const LinearModel& model, std::span<const double> w,
                      std::span<const double> weights,
                      std::span<const Index> support) {
  double f = 0.0;
  for (Index i : support) f += weights[i] * model.Loss(w, i);
  return f;
}

}  // namespace detail

/// min_{||w|| <= radius} sum_i weights_i loss_i(w) by accelerated projected
/// gradient descent with backtracking and function-value restarts. Accepted
/// iterates never increase the objective. Starts from `start` when given.
inline OfflineResult OfflineMin(const LinearModel& model,
                                std::span<const double> weights, double radius,
                                const OfflineOptions& options = {},
                                std::span<const double> start = {}) {
  detail::Require(weights.size() == model.size(),
                  "offline_min: weight vector has the wrong length");
  detail::Require(radius >= 0.0, "offline_min: radius must be nonnegative");
  for (double p : weights) detail::Require(p >= 0.0, "offline_min: negative weight");

  std::vector<Index> support;
  for (Index i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0.0) support.push_back(i);
  }
  const std::size_t dim = model.dim();
  OfflineResult out;
  out.params.radius = radius;
  std::vector<double> x(dim, 0.0);
  if (!start.empty()) {
    detail::Require(start.size() == dim, "offline_min: start has wrong dimension");
    std::copy(start.begin(), start.end(), x.begin());
  }
  ProjectToBall(x, radius);

  const double gram = detail::WeightedGramNorm(model.data(), weights);
  double lipschitz =
      (model.loss_kind() == LossKind::kSquared ? 2.0 : 0.5) * gram;
  lipschitz = std::max(lipschitz, 1e-12);

  std::vector<double> grad(dim), y = x, z(dim), x_prev(dim), gx(dim);
  double fx = detail::ValueOn(model, x, weights, support);
  double t = 1.0;
  if (options.record_history) out.history.push_back(fx);

  const auto gradient_mapping = [&](std::vector<double>& point,
                                    std::vector<double>& stepped) {
    detail::ValueAndGradient(model, point, weights, support, gx);
    for (std::size_t j = 0; j < dim; ++j) stepped[j] = point[j] - gx[j] / lipschitz;
    ProjectToBall(stepped, radius);
    double s = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const double g = lipschitz * (point[j] - stepped[j]);
      s += g * g;
    }
    return std::sqrt(s);
  };

  std::size_t it = 0;
  bool converged = false;
  bool restarted = false;
  std::vector<double> stepped(dim);
  for (; it < options.budget && !support.empty(); ++it) {
    const double fy = detail::ValueAndGradient(model, y, weights, support, grad);
    double fz = 0.0;
    for (;;) {
      double linear = 0.0, quad = 0.0;
      for (std::size_t j = 0; j < dim; ++j) z[j] = y[j] - grad[j] / lipschitz;
      ProjectToBall(z, radius);
      for (std::size_t j = 0; j < dim; ++j) {
        const double dz = z[j] - y[j];
        linear += grad[j] * dz;
        quad += dz * dz;
      }
      fz = detail::ValueOn(model, z, weights, support);
      if (fz <= fy + linear + 0.5 * lipschitz * quad + 1e-15 * std::abs(fy) ||
          lipschitz > 1e300) {
        break;
      }
      lipschitz *= 2.0;
    }
    if (fz <= fx) {
      x_prev = x;
      x = z;
      fx = fz;
      if (options.record_history) out.history.push_back(fx);
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      const double momentum = (t - 1.0) / t_next;
      for (std::size_t j = 0; j < dim; ++j) y[j] = x[j] + momentum * (x[j] - x_prev[j]);
      t = t_next;
      restarted = false;
    } else if (restarted) {
      out.stalled = true;
      ++it;
      break;
    } else {
      y = x;
      t = 1.0;
      restarted = true;
    }
    if ((it + 1) % options.check_every == 0) {
      if (gradient_mapping(x, stepped) <= options.tol) {
        converged = true;
        ++it;
        break;
      }
    }
  }

  // Final projected step; the bound value - min <= ||G|| * ||x - x*|| holds at
  // the stepped point in the convex regime.
  out.gradient_mapping = support.empty() ? 0.0 : gradient_mapping(x, stepped);
  const double f_stepped = detail::ValueOn(model, stepped, weights, support);
  if (!support.empty() && f_stepped <= fx) {
    x = stepped;
    fx = f_stepped;
    if (options.record_history) out.history.push_back(fx);
  }
  out.converged = converged || support.empty() ||
                  out.gradient_mapping <= options.tol || radius == 0.0;
  out.params.values = std::move(x);
  out.value = fx;
  out.tolerance = 2.0 * radius * out.gradient_mapping;
  out.iterations = it;
  return out;
}

/// Training metric at w: accuracy over all points for classification, mean of
/// the k largest squared errors for regression.
inline double TaskMetric(const LinearModel& model, std::span<const double> w,
                         std::size_t k) {
  const Dataset& data = model.data();
  if (data.task == TaskKind::kClassification) {
    std::size_t correct = 0;
    for (Index i = 0; i < data.rows; ++i) {
      if (model.PredictClass(w, i) == model.Label(i)) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(data.rows);
  }
  std::vector<double> squared(data.rows);
  for (Index i = 0; i < data.rows; ++i) squared[i] = model.RawLoss(w, i);
  return LinearMaxKSet(squared, std::min(k, data.rows)).value;
}

}  // namespace minimax_bandit

#endif  // MINIMAX_BANDIT_W_PLAYERS_HPP_
