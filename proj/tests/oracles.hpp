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


// Independent reference implementations used to freeze expected values.
// None of these share code paths with the library under test.

#ifndef MINIMAX_BANDIT_TESTS_ORACLES_HPP_
#define MINIMAX_BANDIT_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

namespace oracles {

/// KL projection onto {q : sum q = 1, 0 <= q_i <= cap}. The KKT system gives
/// q_i = min(cap, s * v_i) for one scalar s > 0; s is found by bisection.
inline std::vector<double> KlProjectBisection(const std::vector<double>& v, double cap) {
  const auto mass = [&](double s) {
    long double total = 0.0L;
    for (double x : v) total += std::min<long double>(cap, s * x);
    return total;
  };
  double lo = 0.0, hi = 1.0;
  for (int grow = 0; grow < 2100 && mass(hi) < 1.0L; ++grow) hi *= 2.0;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (mass(mid) < 1.0L ? lo : hi) = mid;
  }
  std::vector<double> q(v.size());
  long double total = 0.0L;
  for (std::size_t i = 0; i < v.size(); ++i) {
    q[i] = std::min(cap, hi * v[i]);
    total += q[i];
  }
  // Spread the residual over the unsaturated coordinates proportionally.
  long double free_mass = 0.0L;
  for (double x : q) {
    if (x < cap) free_mass += x;
  }
  if (free_mass > 0.0L) {
    for (double& x : q) {
      if (x < cap) x = static_cast<double>(x * (1.0L + (1.0L - total) / free_mass));
    }
  }
  return q;
}

/// max over k-subsets of the mean of L on the subset, by enumeration.
inline double BruteForceKSetMax(const std::vector<double>& losses, std::size_t k) {
  const std::size_t n = losses.size();
  double best = -1e300;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (pick[i]) s += losses[i];
    }
    best = std::max(best, s / static_cast<double>(k));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

/// Vertices of {p : sum p = 1, 0 <= p_i <= caps_i} by generic active-set
/// enumeration: every choice of n-1 tight bound constraints together with the
/// sum constraint is solved by Gaussian elimination and kept when feasible.
/// Returns vertices rounded to 1e-9 and deduplicated.
inline std::vector<std::vector<double>> LpVertices(const std::vector<double>& caps) {
  const std::size_t n = caps.size();
  // Constraint rows: index c < n is p_c = 0; n <= c < 2n is p_{c-n} = caps.
  std::set<std::vector<long long>> seen;
  std::vector<std::vector<double>> out;
  std::vector<int> choose(2 * n, 0);
  std::fill(choose.end() - static_cast<std::ptrdiff_t>(n - 1), choose.end(), 1);
  do {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    a.emplace_back(n, 1.0);
    b.push_back(1.0);
    for (std::size_t c = 0; c < 2 * n; ++c) {
      if (!choose[c]) continue;
      std::vector<double> row(n, 0.0);
      row[c % n] = 1.0;
      a.push_back(row);
      b.push_back(c < n ? 0.0 : caps[c - n]);
    }
    // Gaussian elimination with partial pivoting on the n x n system.
    bool singular = false;
    for (std::size_t col = 0; col < n && !singular; ++col) {
      std::size_t piv = col;
      for (std::size_t r = col + 1; r < n; ++r) {
        if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
      }
      if (std::abs(a[piv][col]) < 1e-12) {
        singular = true;
        break;
      }
      std::swap(a[piv], a[col]);
      std::swap(b[piv], b[col]);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col) continue;
        const double f = a[r][col] / a[col][col];
        for (std::size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
        b[r] -= f * b[col];
      }
    }
    if (singular) continue;
    std::vector<double> p(n);
    bool feasible = true;
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = b[i] / a[i][i];
      if (p[i] < -1e-12 || p[i] > caps[i] + 1e-12) feasible = false;
    }
    if (!feasible) continue;
    std::vector<long long> key(n);
    for (std::size_t i = 0; i < n; ++i) key[i] = std::llround(p[i] * 1e9);
    if (seen.insert(key).second) out.push_back(p);
  } while (std::next_permutation(choose.begin(), choose.end()));
  return out;
}

/// Central difference of f along every coordinate.
inline std::vector<double> FiniteDifference(const std::function<double(const std::vector<double>&)>& f,
                                            std::vector<double> x, double h) {
  std::vector<double> g(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double keep = x[j];
    x[j] = keep + h;
    const double up = f(x);
    x[j] = keep - h;
    const double down = f(x);
    x[j] = keep;
    g[j] = (up - down) / (2.0 * h);
  }
  return g;
}

/// Random point of S_{n,k}: mix a random Dirichlet draw with uniform until
/// the cap holds, then rescale so that some coordinates sit at the cap.
inline std::vector<double> RandomCappedPoint(std::size_t n, std::size_t k, std::mt19937_64& gen) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> x(n);
  double s = 0.0;
  for (double& v : x) s += (v = e(gen));
  for (double& v : x) v /= s;
  const double cap = 1.0 / static_cast<double>(k);
  const double top = *std::max_element(x.begin(), x.end());
  const double u = 1.0 / static_cast<double>(n);
  if (top > cap) {
    // lambda * x + (1 - lambda) * u has max exactly cap.
    const double lambda = (cap - u) / (top - u);
    for (double& v : x) v = lambda * v + (1.0 - lambda) * u;
  }
  return x;
}

}  // namespace oracles

#endif  // MINIMAX_BANDIT_TESTS_ORACLES_HPP_
