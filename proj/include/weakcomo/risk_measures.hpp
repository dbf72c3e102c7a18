#pragma once

#include <vector>

#include "weakcomo/prob_core.hpp"

namespace weakcomo {

// Comparison slack on the probability scale. Levels are plain reals, so
// cumulative sums and level arithmetic are matched up to this tolerance.
inline constexpr double kLevelTol = 1e-12;

void check_level_open(double level);      // requires level in (0,1)
void check_level_closed(double level);    // requires level in [0,1]

// Value/probability pairs sorted by value with ties merged, plus exact
// cumulative sums; shared by all three quantile functionals.
struct SortedDist {
  std::vector<double> values;  // strictly increasing
  std::vector<double> cum;     // cumulative probabilities, last entry 1

  static SortedDist from(const RandomVariable& x);
  static SortedDist from_values_probs(std::span<const double> values,
                                      std::span<const double> probs);
};

// VaR_p(X) = inf{x: P(X <= x) > p}, the right p-quantile.
double var(const RandomVariable& x, double p);
double var(const SortedDist& dist, double p);

// ES_p(X) = (1-p)^{-1} int_p^1 VaR_q(X) dq, via the exact staircase integral.
double es(const RandomVariable& x, double p);
double es(const SortedDist& dist, double p);

// Q_alpha(X) = inf{x: P(X <= x) >= 1-alpha}, the left (1-alpha)-quantile.
double left_q(const RandomVariable& x, double alpha);
double left_q(const SortedDist& dist, double alpha);

// Left quantile at a raw probability level: inf{x: P(X <= x) >= level}.
double quantile_left_level(const SortedDist& dist, double level);

// True iff level coincides with a prefix sum of the space's probabilities
// (for equal weights: level * m is an integer). The continuity surrogate.
bool grid_aligned(double level, const FiniteProbSpace& space);

}  // namespace weakcomo
