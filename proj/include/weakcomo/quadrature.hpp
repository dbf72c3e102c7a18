#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace weakcomo {

struct QuadratureConfig {
  // Gauss-Legendre nodes per interval; the sin/cos acceptance tests pin the
  // error budget for the default.
  std::size_t nodes = 64;
  // Budget for the internal n-vs-n/2 error estimate.
  double error_budget = 1e-7;
};

struct GaussLegendreRule {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;  // sum to 2
};

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
GaussLegendreRule gauss_legendre(std::size_t n);

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // |I_n - I_{n/2}|
};

// Integral of f over [a, b], with the coarse-rule difference as error estimate.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, std::size_t nodes);

}  // namespace weakcomo
