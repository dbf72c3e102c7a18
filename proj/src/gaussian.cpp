#include "weakcomo/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "weakcomo/errors.hpp"

namespace weakcomo {

const char* gauss_event_name(GaussEvent event) {
  switch (event) {
    case GaussEvent::x_positive: return "X>0";
    case GaussEvent::abs_x_below_one: return "|X|<1";
    case GaussEvent::x_below_minus_one: return "X<-1";
  }
  return "?";
}

namespace {

bool in_event(GaussEvent event, double x) {
  switch (event) {
    case GaussEvent::x_positive: return x > 0.0;
    case GaussEvent::abs_x_below_one: return std::abs(x) < 1.0;
    case GaussEvent::x_below_minus_one: return x < -1.0;
  }
  return false;
}

}  // namespace

GaussCondCorr gaussian_cond_corr(double c, GaussEvent event,
                                 std::size_t samples, std::uint64_t seed) {
  if (!(c >= -1.0 && c <= 1.0))
    fail(ErrorCode::invalid_argument, "gaussian_cond_corr: |c| must be <= 1");
  if (samples == 0)
    fail(ErrorCode::invalid_argument, "gaussian_cond_corr: need samples > 0");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(
      std::numeric_limits<double>::min(), 1.0);
  const double tail = std::sqrt(1.0 - c * c);

  // running sums for the conditional Pearson estimate
  double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    // Box-Muller pair
    const double u1 = unit(rng);
    const double u2 = unit(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double z1 = r * std::cos(2.0 * std::numbers::pi * u2);
    const double z2 = r * std::sin(2.0 * std::numbers::pi * u2);
    const double x = z1;
    const double y = c * z1 + tail * z2;
    if (!in_event(event, x)) continue;
    ++n;
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
  }
  if (n < 2)
    fail(ErrorCode::degenerate_variance,
         "gaussian_cond_corr: event carried fewer than two samples");

  const double dn = static_cast<double>(n);
  const double cov = sxy / dn - (sx / dn) * (sy / dn);
  const double vx = sxx / dn - (sx / dn) * (sx / dn);
  const double vy = syy / dn - (sy / dn) * (sy / dn);
  if (!(vx > 0.0) || !(vy > 0.0))
    fail(ErrorCode::degenerate_variance,
         "gaussian_cond_corr: degenerate conditional variance");

  GaussCondCorr out;
  out.estimate = cov / std::sqrt(vx * vy);
  out.std_error = (1.0 - out.estimate * out.estimate) / std::sqrt(dn);
  out.samples_in_event = n;
  out.samples_total = samples;
  return out;
}

}  // namespace weakcomo
