#pragma once

#include <vector>

#include "weakcomo/prob_core.hpp"
#include "weakcomo/weak_comon.hpp"

namespace weakcomo {

// A pairing of two equal-weight marginals on a common m-atom space.
struct Coupling {
  SpacePtr space;
  RandomVariable x;
  RandomVariable y;
  // sorted value multisets; construction guarantees these match x and y
  std::vector<double> x_marginal;
  std::vector<double> y_marginal;
};

Coupling make_coupling(std::vector<double> x_values,
                       std::vector<double> y_values);

// Worst-case VaR_p(X+Y) over couplings of two equal-weight marginals:
// inf{VaR_{p+t}(X) + VaR_{1-t}(Y): t in (0,1-p)}, evaluated exactly on the
// staircase cells of the discrete quantile functions.
double worst_var_two(std::vector<double> fx, std::vector<double> fy, double p);

// Worst-case ES_p(X+Y) = ES_p(X) + ES_p(Y).
double worst_es_two(std::vector<double> fx, std::vector<double> fy, double p);

// The extremal coupling: ranks aligned below the split at ceil(p*m), the
// top (1-p)*m values paired in reversed order within the tail. Comonotonic
// over tail_P(X,p) and antimonotonic over tail_Q(X,p) by construction.
Coupling build_worst_coupling(std::vector<double> fx, std::vector<double> fy,
                              double p);

struct EsMaximizerResult {
  bool es_additive = false;  // ES_p(X+Y) == ES_p(X) + ES_p(Y) within 1e-10
  bool wc_tail = false;      // all-comonotonic over tail_P(X,p)
};

// The two sides of the ES-aggregation equivalence; raises if they disagree.
EsMaximizerResult es_maximizer_check(const Coupling& c, double p);

struct BruteForceResult {
  double max_value = 0.0;
  std::vector<std::size_t> permutation;  // lexicographically smallest argmax
};

// Exact maximum of VaR_p(X + Y_sigma) over all m! pairings.
BruteForceResult brute_force_worst_var(std::vector<double> fx,
                                       std::vector<double> fy, double p,
                                       std::size_t max_m = 8);

}  // namespace weakcomo
