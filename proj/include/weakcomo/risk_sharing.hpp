#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "weakcomo/prob_core.hpp"

namespace weakcomo {

// The beta-constrained quantile risk-sharing problem: total loss X on an
// equal-weight space with distinct values, agent levels alpha_i with
// sum < 1, and a dependence parameter beta in [0,1]. All levels must sit on
// the 1/m grid (the continuity surrogate).
struct SharingProblem {
  RandomVariable x;
  std::vector<double> alphas;
  double beta = 0.0;
};

SharingProblem make_sharing_problem(RandomVariable x,
                                    std::vector<double> alphas, double beta);

// gamma = beta ^ (max alpha_i) + sum_i (alpha_i - beta)_+
double gamma_of(const std::vector<double>& alphas, double beta);

// V_beta(X) = Q_gamma(X)
double v_beta(const SharingProblem& prob);

// Y up_beta Z: weak comonotonicity with respect to the union of tail
// families P_p^Z over grid p in [1-beta, 1). beta = 0 is vacuous; beta = 1
// coincides with strong comonotonicity for distinct-valued Z.
bool up_beta_check(const RandomVariable& y, const RandomVariable& z,
                   double beta);

// O(m log m) equivalent of up_beta_check on distinct-valued Z: Y follows
// Z's descending order through the top beta*m atoms and dominates the rest.
// Used inside the randomized search; equivalence is property-tested.
bool up_beta_aligned(const RandomVariable& y, const RandomVariable& z,
                     double beta);

struct AllocationCertificates {
  bool covers_total = false;
  std::vector<bool> up_beta;
  double objective = 0.0;
};

struct Allocation {
  std::vector<RandomVariable> parts;  // indexed by original agent
  AllocationCertificates certificates;
  double gamma = 0.0;
  double y = 0.0;  // Q_beta(X)
  double z = 0.0;  // Q_gamma(X)
  std::size_t leader = 0;  // original index of the re-indexed agent 1
  // agents with alpha_i > beta, in tail-assignment order (leader first)
  std::vector<std::size_t> agent_order;
};

// The explicit optimal allocation; objective equals Q_gamma(X) and every
// certificate is recomputed rather than assumed.
Allocation solve(const SharingProblem& prob);

struct LemmaPart {
  bool precondition_ok = false;
  bool holds = false;
};

// The five quantile identities of the appendix lemma, evaluated exactly on
// the discrete space. Parts i-iv require Y up_beta X; part v only needs
// alpha + beta < 1.
std::array<LemmaPart, 5> lemma_rs1_predicates(const RandomVariable& y,
                                              const RandomVariable& x,
                                              double beta, double alpha,
                                              double z);

struct SearchResult {
  double min_objective = 0.0;
  std::size_t accepted = 0;
  std::size_t trials = 0;
};

// Lower-bound oracle: the minimum objective over `trials` random admissible
// allocations. Trial 0 injects solve's output, so the result never exceeds
// v_beta and is finite. Deterministic given the seed.
SearchResult randomized_admissible_search(const SharingProblem& prob,
                                          std::size_t trials,
                                          std::uint64_t seed);

}  // namespace weakcomo
