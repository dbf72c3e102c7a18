#include "weakcomo/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "weakcomo/errors.hpp"

namespace weakcomo {

GaussLegendreRule gauss_legendre(std::size_t n) {
  if (n == 0) fail(ErrorCode::invalid_argument, "quadrature rule needs n >= 1");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Newton iteration from the Chebyshev-based initial guess.
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * static_cast<double>(j) + 1.0) * z * p2 -
              static_cast<double>(j) * p3) /
             (static_cast<double>(j) + 1.0);
      }
      pp = static_cast<double>(n) * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

namespace {

double apply_rule(const std::function<double(double)>& f, double a, double b,
                  const GaussLegendreRule& rule) {
  const double mid = 0.5 * (a + b);
  const double halfwidth = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + halfwidth * rule.nodes[i]);
  }
  return halfwidth * sum;
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, std::size_t nodes) {
  if (!(a < b)) fail(ErrorCode::invalid_argument, "integrate: requires a < b");
  if (nodes < 2) nodes = 2;
  const double fine = apply_rule(f, a, b, gauss_legendre(nodes));
  const double coarse = apply_rule(f, a, b, gauss_legendre(nodes / 2 + 1));
  return {fine, std::abs(fine - coarse)};
}

}  // namespace weakcomo
