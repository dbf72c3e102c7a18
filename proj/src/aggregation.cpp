#include "weakcomo/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "weakcomo/risk_measures.hpp"

namespace weakcomo {

namespace {

SpacePtr equal_weight_space(std::size_t m) {
  return make_space(std::vector<double>(m, 1.0));
}

// p*m must be an integer in {1..m-1}; returns the split index.
std::size_t grid_split(double p, std::size_t m) {
  check_level_open(p);
  const double pm = p * static_cast<double>(m);
  const double rounded = std::round(pm);
  if (std::abs(pm - rounded) > 1e-9 || rounded < 1.0 ||
      rounded > static_cast<double>(m - 1))
    fail(ErrorCode::grid_misaligned,
         "aggregation: p*m must be an integer in 1..m-1");
  return static_cast<std::size_t>(rounded);
}

void require_matching_marginals(const std::vector<double>& fx,
                                const std::vector<double>& fy) {
  if (fx.empty() || fx.size() != fy.size())
    fail(ErrorCode::invalid_argument,
         "aggregation: marginals must be non-empty and of equal size");
}

bool has_ties(const std::vector<double>& sorted) {
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

}  // namespace

Coupling make_coupling(std::vector<double> x_values,
                       std::vector<double> y_values) {
  require_matching_marginals(x_values, y_values);
  SpacePtr space = equal_weight_space(x_values.size());
  std::vector<double> fx = x_values;
  std::vector<double> fy = y_values;
  std::sort(fx.begin(), fx.end());
  std::sort(fy.begin(), fy.end());
  return Coupling{space, RandomVariable(space, std::move(x_values)),
                  RandomVariable(space, std::move(y_values)), std::move(fx),
                  std::move(fy)};
}

double worst_var_two(std::vector<double> fx, std::vector<double> fy,
                     double p) {
  require_matching_marginals(fx, fy);
  const std::size_t m = fx.size();
  const std::size_t j = grid_split(p, m);
  const std::size_t k = m - j;

  SpacePtr space = equal_weight_space(m);
  const SortedDist dx =
      SortedDist::from_values_probs(fx, space->probs());
  const SortedDist dy =
      SortedDist::from_values_probs(fy, space->probs());

  // Both staircases are constant on each cell ((i-1)/m, i/m); the one-sided
  // limits at breakpoints never undercut a cell, so scanning cell midpoints
  // evaluates the infimum exactly.
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i <= k; ++i) {
    const double t =
        (static_cast<double>(i) - 0.5) / static_cast<double>(m);
    best = std::min(best, var(dx, p + t) + var(dy, 1.0 - t));
  }
  return best;
}

double worst_es_two(std::vector<double> fx, std::vector<double> fy, double p) {
  require_matching_marginals(fx, fy);
  grid_split(p, fx.size());
  SpacePtr space = equal_weight_space(fx.size());
  return es(SortedDist::from_values_probs(fx, space->probs()), p) +
         es(SortedDist::from_values_probs(fy, space->probs()), p);
}

Coupling build_worst_coupling(std::vector<double> fx, std::vector<double> fy,
                              double p) {
  require_matching_marginals(fx, fy);
  const std::size_t m = fx.size();
  const std::size_t j = grid_split(p, m);
  const std::size_t k = m - j;
  std::sort(fx.begin(), fx.end());
  std::sort(fy.begin(), fy.end());
  if (has_ties(fx) || has_ties(fy))
    fail(ErrorCode::tied_values,
         "build_worst_coupling: marginals must have distinct values");

  std::vector<double> xv(m), yv(m);
  for (std::size_t r = 0; r < j; ++r) {
    xv[r] = fx[r];
    yv[r] = fy[r];
  }
  for (std::size_t i = 1; i <= k; ++i) {
    xv[j + i - 1] = fx[j + i - 1];
    yv[j + i - 1] = fy[m - i];
  }
  return make_coupling(std::move(xv), std::move(yv));
}

EsMaximizerResult es_maximizer_check(const Coupling& c, double p) {
  const std::size_t m = c.space->atom_count();
  grid_split(p, m);
  if (!c.x.distinct_values() || !c.y.distinct_values())
    fail(ErrorCode::tied_values,
         "es_maximizer_check: marginals must have distinct values");

  std::vector<double> sum(m);
  for (std::size_t i = 0; i < m; ++i)
    sum[i] = c.x.value(i) + c.y.value(i);
  const RandomVariable total(c.space, std::move(sum));

  EsMaximizerResult r;
  r.es_additive =
      std::abs(es(total, p) - es(c.x, p) - es(c.y, p)) <= 1e-10;
  r.wc_tail = wc_family(c.x, c.y, family_tail_P(c.x, p)).all_comonotonic;
  if (r.es_additive != r.wc_tail)
    fail(ErrorCode::numerical_inconsistency,
         "es_maximizer_check: additivity and tail comonotonicity disagree");
  return r;
}

BruteForceResult brute_force_worst_var(std::vector<double> fx,
                                       std::vector<double> fy, double p,
                                       std::size_t max_m) {
  require_matching_marginals(fx, fy);
  const std::size_t m = fx.size();
  if (m > max_m)
    fail(ErrorCode::too_large,
         "brute_force_worst_var: m exceeds the enumeration cap");
  const std::size_t j = grid_split(p, m);
  std::sort(fx.begin(), fx.end());
  std::sort(fy.begin(), fy.end());

  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  BruteForceResult best;
  best.max_value = -std::numeric_limits<double>::infinity();
  std::vector<double> sums(m);
  do {
    for (std::size_t i = 0; i < m; ++i) sums[i] = fx[i] + fy[perm[i]];
    std::sort(sums.begin(), sums.end());
    // VaR_p of an equal-weight multiset with p*m = j is the (j+1)-th
    // smallest sum, ties included.
    const double v = sums[j];
    if (v > best.max_value) {
      best.max_value = v;
      best.permutation = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace weakcomo
