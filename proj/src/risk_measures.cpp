#include "weakcomo/risk_measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace weakcomo {

void check_level_open(double level) {
  if (!(level > 0.0 && level < 1.0))
    fail(ErrorCode::invalid_argument, "level must lie in (0,1)");
}

void check_level_closed(double level) {
  if (!(level >= 0.0 && level <= 1.0))
    fail(ErrorCode::invalid_argument, "level must lie in [0,1]");
}

SortedDist SortedDist::from_values_probs(std::span<const double> values,
                                         std::span<const double> probs) {
  if (values.size() != probs.size() || values.empty())
    fail(ErrorCode::invalid_argument, "SortedDist: bad input sizes");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  SortedDist dist;
  double sum = 0.0, comp = 0.0;
  for (std::size_t idx : order) {
    const double y = probs[idx] - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (!dist.values.empty() && values[idx] == dist.values.back()) {
      dist.cum.back() = sum;  // merge tied values before cumulative lookups
    } else {
      dist.values.push_back(values[idx]);
      dist.cum.push_back(sum);
    }
  }
  dist.cum.back() = 1.0;
  return dist;
}

SortedDist SortedDist::from(const RandomVariable& x) {
  return from_values_probs(x.values(), x.space().probs());
}

double var(const SortedDist& dist, double p) {
  check_level_open(p);
  for (std::size_t i = 0; i < dist.values.size(); ++i)
    if (dist.cum[i] > p + kLevelTol) return dist.values[i];
  return dist.values.back();
}

double var(const RandomVariable& x, double p) {
  return var(SortedDist::from(x), p);
}

double es(const SortedDist& dist, double p) {
  check_level_open(p);
  // The quantile function is the staircase q -> values[i] on
  // [cum[i-1], cum[i]); integrate it exactly over (p, 1).
  double integral = 0.0;
  double lo = p;
  for (std::size_t i = 0; i < dist.values.size(); ++i) {
    const double hi = dist.cum[i];
    if (hi > lo + kLevelTol) {
      integral += (hi - lo) * dist.values[i];
      lo = hi;
    }
  }
  return integral / (1.0 - p);
}

double es(const RandomVariable& x, double p) {
  return es(SortedDist::from(x), p);
}

double quantile_left_level(const SortedDist& dist, double level) {
  if (level <= kLevelTol) return dist.values.front();
  for (std::size_t i = 0; i < dist.values.size(); ++i)
    if (dist.cum[i] >= level - kLevelTol) return dist.values[i];
  return dist.values.back();
}

double left_q(const SortedDist& dist, double alpha) {
  check_level_open(alpha);
  return quantile_left_level(dist, 1.0 - alpha);
}

double left_q(const RandomVariable& x, double alpha) {
  return left_q(SortedDist::from(x), alpha);
}

bool grid_aligned(double level, const FiniteProbSpace& space) {
  const auto& prefix = space.prefix_sums();
  for (std::size_t i = 0; i + 1 < prefix.size(); ++i)
    if (std::abs(level - prefix[i]) <= kLevelTol) return true;
  // Endpoints 0 and 1 are trivially on the grid.
  return std::abs(level) <= kLevelTol || std::abs(level - 1.0) <= kLevelTol;
}

}  // namespace weakcomo
