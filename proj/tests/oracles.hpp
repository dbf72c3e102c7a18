// Test-only oracles: independent brute-force routes for the quantities the
// library computes in closed or reduced form. These deliberately avoid the
// implementation paths they check.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "weakcomo/prob_core.hpp"

namespace oracles {

// O(m^2) double sum of (X_i - X_j)(Y_i - Y_j) pi1_i pi2_j.
inline double wc_double_sum(const std::vector<double>& x,
                            const std::vector<double>& y,
                            const std::vector<double>& pi1,
                            const std::vector<double>& pi2) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      sum += pi1[i] * pi2[j] * (x[i] - x[j]) * (y[i] - y[j]);
  return sum;
}

// Exhaustive max of E[X|B] over all events B with |B| = k atoms, on an
// equal-weight space.
inline double es_dual_exhaustive(const std::vector<double>& values,
                                 std::size_t k) {
  const std::size_t m = values.size();
  double best = -std::numeric_limits<double>::infinity();
  std::vector<bool> mask(m, false);
  std::fill(mask.end() - static_cast<long>(k), mask.end(), true);
  do {
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      if (mask[i]) sum += values[i];
    best = std::max(best, sum / static_cast<double>(k));
  } while (std::next_permutation(mask.begin(), mask.end()));
  return best;
}

// Spearman correlation of tie-free samples via the classic rank-difference
// formula 1 - 6 sum d^2 / (m (m^2 - 1)).
inline std::vector<double> ranks_one_based(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t r = 0; r < order.size(); ++r)
    ranks[order[r]] = static_cast<double>(r + 1);
  return ranks;
}

inline double spearman_rho(const std::vector<double>& x,
                           const std::vector<double>& y) {
  const auto rx = ranks_one_based(x);
  const auto ry = ranks_one_based(y);
  const double m = static_cast<double>(x.size());
  double d2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
  return 1.0 - 6.0 * d2 / (m * (m * m - 1.0));
}

// Direct factorization test of a joint weight matrix.
inline bool factorizes(const weakcomo::JointMeasure& joint, double tol) {
  for (std::size_t i = 0; i < joint.rows(); ++i)
    for (std::size_t j = 0; j < joint.cols(); ++j)
      if (std::abs(joint.weight(i, j) -
                   joint.row_marginal()[i] * joint.col_marginal()[j]) > tol)
        return false;
  return true;
}

// ---- deterministic random instances ----------------------------------------

inline std::vector<double> distinct_values(std::mt19937_64& rng, std::size_t m,
                                           double lo = 0.0, double hi = 10.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(m);
  while (true) {
    for (auto& x : v) x = dist(rng);
    std::vector<double> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end())
      return v;
  }
}

inline std::vector<double> random_probs(std::mt19937_64& rng, std::size_t m) {
  std::uniform_real_distribution<double> dist(0.05, 1.0);
  std::vector<double> p(m);
  double total = 0.0;
  for (auto& x : p) {
    x = dist(rng);
    total += x;
  }
  for (auto& x : p) x /= total;
  return p;
}

inline std::vector<std::vector<double>> random_joint_matrix(
    std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::uniform_real_distribution<double> dist(0.01, 1.0);
  std::vector<std::vector<double>> w(rows, std::vector<double>(cols));
  double total = 0.0;
  for (auto& row : w)
    for (auto& x : row) {
      x = dist(rng);
      total += x;
    }
  for (auto& row : w)
    for (auto& x : row) x /= total;
  return w;
}

}  // namespace oracles
