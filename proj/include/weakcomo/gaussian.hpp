#pragma once

#include <cstdint>
#include <string>

namespace weakcomo {

enum class GaussEvent { x_positive, abs_x_below_one, x_below_minus_one };

const char* gauss_event_name(GaussEvent event);

struct GaussCondCorr {
  double estimate = 0.0;
  double std_error = 0.0;  // (1 - r^2)/sqrt(n), the asymptotic Pearson s.e.
  std::size_t samples_in_event = 0;
  std::size_t samples_total = 0;
};

// Monte Carlo estimate of Corr[X, Y | A] for a bivariate Gaussian pair with
// standard margins and correlation c, using seeded Box-Muller sampling.
GaussCondCorr gaussian_cond_corr(double c, GaussEvent event,
                                 std::size_t samples, std::uint64_t seed);

}  // namespace weakcomo
