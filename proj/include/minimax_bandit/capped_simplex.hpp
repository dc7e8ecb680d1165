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

// Geometry of the capped simplex S_{n,k} = {p in simplex : p_i <= 1/k} and of
// the heterogeneous alpha-set {p in simplex : p_i <= alpha_i}.
//
// The central routine is the mixing projection used by the EXP4.MP player:
// normalize positive weights, KL-project them onto the simplex capped at
// kappa = (1/k - gamma/n) / (1 - gamma), then mix with the uniform
// distribution so that the result lands in S_{n,k} with every saturated
// coordinate exactly at 1/k.

#ifndef MINIMAX_BANDIT_CAPPED_SIMPLEX_HPP_
#define MINIMAX_BANDIT_CAPPED_SIMPLEX_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "minimax_bandit/common.hpp"

namespace minimax_bandit {

/// A probability vector together with its per-coordinate cap and the set of
/// coordinates the projection saturated at that cap.
struct CappedDistribution {
  std::vector<double> values;
  double cap = 1.0;
  // Sorted ascending.
  std::vector<Index> saturated;

  std::size_t size() const { return values.size(); }
};

/// A sparse extreme point of S_{n,k} or of an alpha-set.
struct Vertex {
  std::size_t dimension = 0;
  // Sorted ascending, aligned with `weights`.
  std::vector<Index> support;
  std::vector<double> weights;

  std::vector<double> Dense() const {
    std::vector<double> out(dimension, 0.0);
    for (std::size_t j = 0; j < support.size(); ++j) {
      out[support[j]] = weights[j];
    }
    return out;
  }

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct LinearMaxResult {
  double value = 0.0;
  Vertex argmax;
};

/// Per-coordinate caps alpha_i = units_i / k with units_i in {1, ..., k}.
/// Caps are stored as integer multiples of 1/k so vertex arithmetic is exact.
class AlphaCaps {
 public:
  AlphaCaps(std::vector<int> units, int k) : units_(std::move(units)), k_(k) {
    detail::Require(k_ >= 1, "alpha-set: k must be positive");
    detail::Require(!units_.empty(), "alpha-set: empty cap vector");
    long total = 0;
    for (int u : units_) {
      detail::Require(u >= 1 && u <= k_,
                      "alpha-set: k*alpha_i must lie in {1,...,k}, got ", u);
      total += u;
    }
    detail::Require(total >= k_,
                    "alpha-set: caps sum to less than one, the set is empty");
  }

  /// Builds caps from real values, requiring k*alpha_i to be an integer
  /// within 1e-9.
  static AlphaCaps FromAlpha(std::span<const double> alpha, int k) {
    std::vector<int> units;
    units.reserve(alpha.size());
    for (double a : alpha) {
      const double scaled = a * k;
      const double rounded = std::round(scaled);
      detail::Require(std::abs(scaled - rounded) <= kFeasibilityTol,
                      "alpha-set: k*alpha_i is not an integer (", scaled, ")");
      units.push_back(static_cast<int>(rounded));
    }
    return AlphaCaps(std::move(units), k);
  }

  static AlphaCaps Uniform(std::size_t n, int k) {
    return AlphaCaps(std::vector<int>(n, 1), k);
  }

  std::size_t size() const { return units_.size(); }
  int k() const { return k_; }
  int units(Index i) const { return units_[i]; }
  const std::vector<int>& units() const { return units_; }
  double alpha(Index i) const { return static_cast<double>(units_[i]) / k_; }

 private:
  std::vector<int> units_;
  int k_;
};

inline bool InCappedSimplex(std::span<const double> p, double cap,
                            double tol = kFeasibilityTol) {
  if (!IsProbVector(p, tol)) return false;
  return std::all_of(p.begin(), p.end(),
                     [&](double v) { return v <= cap + tol; });
}

inline bool InAlphaSet(std::span<const double> p, const AlphaCaps& caps,
                       double tol = kFeasibilityTol) {
  if (p.size() != caps.size() || !IsProbVector(p, tol)) return false;
  for (Index i = 0; i < p.size(); ++i) {
    if (p[i] > caps.alpha(i) + tol) return false;
  }
  return true;
}

/// kappa = (1/k - gamma/n) / (1 - gamma), the cap the pre-mixing projection
/// must respect so that mixing with the uniform distribution lands in S_{n,k}.
inline double Kappa(std::size_t k, double gamma, std::size_t n) {
  detail::Require(n >= 1 && k >= 1, "kappa: n and k must be positive");
  detail::Require(k <= n, "kappa: k=", k, " exceeds n=", n);
  detail::Require(gamma >= 0.0 && gamma < 1.0,
                  "kappa: gamma must lie in [0, 1), got ", gamma);
  const double kd = static_cast<double>(k);
  const double nd = static_cast<double>(n);
  return (1.0 / kd - gamma / nd) / (1.0 - gamma);
}

namespace detail {

// Indices of `v` ordered by decreasing value, ties by increasing index.
inline std::vector<Index> DescendingOrder(std::span<const double> v) {
  std::vector<Index> order(v.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    return v[a] > v[b] || (v[a] == v[b] && a < b);
  });
  return order;
}

struct AlphaSearch {
  double alpha = 0.0;
  // Number of leading (sorted) coordinates the scan saturated.
  std::size_t saturated_count = 0;
  std::vector<Index> order;
};

// Sorted scan over candidate saturation counts m = 0, 1, ...: coordinate m+1
// is saturated while (1 - m*kappa) * v_(m+1) / sum_{j > m} v_(j) > kappa.
// The threshold is then alpha = kappa * sum_{j > m} v_(j) / (1 - m*kappa),
// which solves alpha / (m*alpha + sum_{j > m} v_(j)) = kappa.
inline AlphaSearch SearchAlpha(std::span<const double> v, double kappa) {
  const std::size_t n = v.size();
  AlphaSearch out;
  out.order = DescendingOrder(v);
  // tail[m] = sum of the sorted values at positions m..n-1, accumulated from
  // the smallest entries up.
  std::vector<double> tail(n + 1, 0.0);
  for (std::size_t m = n; m-- > 0;) tail[m] = tail[m + 1] + v[out.order[m]];

  std::size_t m = 0;
  while (m < n) {
    const double scale = 1.0 - static_cast<double>(m) * kappa;
    if (scale <= 0.0 || tail[m] <= 0.0) break;
    if (scale * v[out.order[m]] / tail[m] > kappa) {
      ++m;
    } else {
      break;
    }
  }
  if (m == 0) {
    out.alpha = kappa;
  } else if (m == n) {
    // Only reachable through roundoff when kappa * n == 1.
    out.alpha = v[out.order[n - 1]];
    m = n;
  } else {
    out.alpha = kappa * tail[m] / (1.0 - static_cast<double>(m) * kappa);
  }
  out.saturated_count = m;
  return out;
}

inline void CheckAlphaInputs(std::span<const double> v, double kappa) {
  Require(!v.empty(), "projection: empty input");
  Require(kappa > 0.0 && kappa <= 1.0 + kFeasibilityTol,
          "projection: kappa must lie in (0, 1], got ", kappa);
  Require(kappa * static_cast<double>(v.size()) >= 1.0 - 1e-12,
          "projection: kappa*n < 1, the capped simplex is empty");
}

// J = the coordinates the scan saturated, plus any further coordinate with
// v_i >= alpha (ties at the threshold count as saturated).
inline std::vector<Index> SaturatedSet(std::span<const double> v,
                                       const AlphaSearch& search) {
  std::vector<Index> j(search.order.begin(),
                       search.order.begin() +
                           static_cast<std::ptrdiff_t>(search.saturated_count));
  for (std::size_t pos = search.saturated_count; pos < v.size(); ++pos) {
    const Index i = search.order[pos];
    if (v[i] >= search.alpha) {
      j.push_back(i);
    } else {
      break;
    }
  }
  std::sort(j.begin(), j.end());
  return j;
}

}  // namespace detail

/// Threshold alpha solving alpha / (sum_{v_i >= alpha} alpha +
/// sum_{v_i < alpha} v_i) = kappa for a probability vector `v`.
/// When max_i v_i <= kappa no capping is needed and alpha = kappa.
inline double FindAlpha(std::span<const double> v, double kappa) {
  detail::CheckAlphaInputs(v, kappa);
  RequireProbVector(v, "find_alpha input");
  return detail::SearchAlpha(v, kappa).alpha;
}

/// KL projection of a strictly positive probability vector onto the simplex
/// capped at `kappa`. Saturated coordinates equal kappa exactly; the others
/// are v_i * (1 - |J| kappa) / sum_{j not in J} v_j.
inline CappedDistribution KlProjectCapped(std::span<const double> v,
                                          double kappa) {
  detail::CheckAlphaInputs(v, kappa);
  RequireProbVector(v, "kl_project_capped input");
  for (double x : v) {
    detail::Require(x > 0.0,
                    "kl_project_capped: input must be strictly positive");
  }
  const auto search = detail::SearchAlpha(v, kappa);
  CappedDistribution out;
  out.cap = kappa;
  out.saturated = detail::SaturatedSet(v, search);
  const double ratio = kappa / search.alpha;
  out.values.resize(v.size());
  for (Index i = 0; i < v.size(); ++i) out.values[i] = ratio * v[i];
  for (Index i : out.saturated) out.values[i] = kappa;
  return out;
}

/// Normalizes positive weights, projects them onto the simplex capped at
/// kappa(k, gamma, n) and mixes with the uniform distribution:
///   p_i = (1 - gamma) * (kappa / alpha) * v'_i + gamma / n.
/// The result lies in S_{n,k}; p_i = 1/k exactly on the saturated set.
inline CappedDistribution MixProject(std::span<const double> weights,
                                     std::size_t k, double gamma) {
  const std::size_t n = weights.size();
  detail::Require(n >= 1, "mix_project: empty weight vector");
  double total = 0.0;
  for (double w : weights) {
    detail::Require(w > 0.0 && std::isfinite(w),
                    "mix_project: weights must be finite and strictly "
                    "positive, got ", w);
    total += w;
  }
  detail::Require(std::isfinite(total), "mix_project: weight sum overflows");
  const double kappa = Kappa(k, gamma, n);

  std::vector<double> v(n);
  for (Index i = 0; i < n; ++i) v[i] = weights[i] / total;
  const auto search = detail::SearchAlpha(v, kappa);

  CappedDistribution out;
  out.cap = 1.0 / static_cast<double>(k);
  out.saturated = detail::SaturatedSet(v, search);
  const double ratio = (1.0 - gamma) * kappa / search.alpha;
  const double floor = gamma / static_cast<double>(n);
  out.values.resize(n);
  for (Index i = 0; i < n; ++i) out.values[i] = ratio * v[i] + floor;
  for (Index i : out.saturated) out.values[i] = out.cap;
  return out;
}

/// max_{p in S_{n,k}} <losses, p>: the mean of the k largest losses. The
/// maximizer puts 1/k on the k largest entries, lowest index first on ties.
inline LinearMaxResult LinearMaxKSet(std::span<const double> losses,
                                     std::size_t k) {
  const std::size_t n = losses.size();
  detail::Require(k >= 1 && k <= n, "linear_max_kset: k=", k,
                  " out of range [1, ", n, "]");
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k),
                    order.end(), [&](Index a, Index b) {
                      return losses[a] > losses[b] ||
                             (losses[a] == losses[b] && a < b);
                    });
  LinearMaxResult out;
  double top = 0.0;
  for (std::size_t j = 0; j < k; ++j) top += losses[order[j]];
  out.value = top / static_cast<double>(k);
  out.argmax.dimension = n;
  out.argmax.support.assign(order.begin(),
                            order.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(out.argmax.support.begin(), out.argmax.support.end());
  out.argmax.weights.assign(k, 1.0 / static_cast<double>(k));
  return out;
}

/// max_{p in K_alpha} <losses, p> by greedy filling: walk the indices by
/// decreasing loss and give each its full cap until the unit mass runs out.
/// The maximizer has at most one coordinate strictly between 0 and its cap.
inline LinearMaxResult LinearMaxAlphaSet(std::span<const double> losses,
                                         const AlphaCaps& caps) {
  const std::size_t n = losses.size();
  detail::Require(n == caps.size(), "linear_max_alphaset: size mismatch");
  const auto order = detail::DescendingOrder(losses);
  std::vector<std::pair<Index, int>> taken;
  int remaining = caps.k();
  for (Index i : order) {
    if (remaining == 0) break;
    const int take = std::min(caps.units(i), remaining);
    taken.emplace_back(i, take);
    remaining -= take;
  }
  std::sort(taken.begin(), taken.end());
  LinearMaxResult out;
  out.argmax.dimension = n;
  const double k = caps.k();
  for (const auto& [i, units] : taken) {
    out.argmax.support.push_back(i);
    out.argmax.weights.push_back(units / k);
    out.value += losses[i] * (units / k);
  }
  return out;
}

inline constexpr std::size_t kMaxEnumerationDimension = 12;

/// All extreme points of K_alpha for n <= 12: a subset of coordinates sits at
/// its cap, at most one further coordinate carries the remaining mass, the
/// rest are zero.
inline std::vector<Vertex> EnumerateVerticesAlphaSet(const AlphaCaps& caps) {
  const std::size_t n = caps.size();
  detail::Require(n <= kMaxEnumerationDimension,
                  "enumerate_vertices_alphaset: n=", n, " exceeds ",
                  kMaxEnumerationDimension);
  const int k = caps.k();
  // Keyed by the integer unit vector, which makes deduplication exact.
  std::set<std::vector<int>> seen;
  const std::uint32_t limit = 1u << n;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    int at_cap = 0;
    for (Index i = 0; i < n; ++i) {
      if (mask & (1u << i)) at_cap += caps.units(i);
    }
    if (at_cap > k) continue;
    std::vector<int> units(n, 0);
    for (Index i = 0; i < n; ++i) {
      if (mask & (1u << i)) units[i] = caps.units(i);
    }
    if (at_cap == k) {
      seen.insert(units);
      continue;
    }
    const int rest = k - at_cap;
    for (Index j = 0; j < n; ++j) {
      if ((mask & (1u << j)) || rest >= caps.units(j)) continue;
      units[j] = rest;
      seen.insert(units);
      units[j] = 0;
    }
  }
  std::vector<Vertex> out;
  out.reserve(seen.size());
  for (const auto& units : seen) {
    Vertex v;
    v.dimension = n;
    for (Index i = 0; i < n; ++i) {
      if (units[i] > 0) {
        v.support.push_back(i);
        v.weights.push_back(static_cast<double>(units[i]) / k);
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

/// (index, multiplicity) pairs; multiplicities are positive and sum to k.
using Multiset = std::vector<std::pair<Index, int>>;

/// Maps an alpha-set vertex to the multiset {(i, k p_i) : p_i > 0}.
inline Multiset VertexMultiset(const Vertex& p, int k) {
  detail::Require(k >= 1, "vertex_multiset: k must be positive");
  Multiset out;
  int total = 0;
  for (std::size_t j = 0; j < p.support.size(); ++j) {
    const double scaled = p.weights[j] * k;
    const double rounded = std::round(scaled);
    detail::Require(std::abs(scaled - rounded) <= kFeasibilityTol,
                    "vertex_multiset: k*p_i=", scaled,
                    " is not an integer, input is not a vertex");
    const int mult = static_cast<int>(rounded);
    if (mult == 0) continue;
    out.emplace_back(p.support[j], mult);
    total += mult;
  }
  detail::Require(total == k, "vertex_multiset: multiplicities sum to ", total,
                  ", expected ", k);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace minimax_bandit

#endif  // MINIMAX_BANDIT_CAPPED_SIMPLEX_HPP_
