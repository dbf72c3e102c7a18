#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "weakcomo/prob_core.hpp"
#include "weakcomo/risk_measures.hpp"

namespace weakcomo {

// Default slack for exact discrete integrals; interval measures widen it by
// the recorded quadrature error estimate.
inline constexpr double kWcTol = 1e-9;

// Sign verdict for one weak-comonotonicity integral. A single value always
// carries at least one witness tag; "neither" only arises at family level.
struct WcVerdict {
  double value = 0.0;
  double tolerance = kWcTol;
  std::string measure_id;

  bool comonotonic_witness() const { return value >= -tolerance; }
  bool antimonotonic_witness() const { return value <= tolerance; }
  std::string classification() const;
};

// Integral of (g(x)-g(x'))(h(x)-h(x')) d(rho1 x rho2), reduced to one-
// dimensional expectations; discrete parts are exact, interval parts use
// quadrature and fold the error estimate into the verdict tolerance.
WcVerdict wc_fun(const FunctionHandle& g, const FunctionHandle& h,
                 const ProductMeasure& pm, const QuadratureConfig& cfg = {});

// Integral of (X(w)-X(w'))(Y(w)-Y(w')) d(pi1 x pi2) over atom pairs, via
// E1[XY] + E2[XY] - E1[X]E2[Y] - E2[X]E1[Y] (O(m), not O(m^2)).
WcVerdict wc_rv(const RandomVariable& x, const RandomVariable& y,
                const FiniteProbSpace& pi1, const FiniteProbSpace& pi2);

// Same integrand under a (not necessarily product) measure on Omega^2,
// given as a square weight matrix; exact double sum.
WcVerdict wc_joint(const RandomVariable& x, const RandomVariable& y,
                   const JointMeasure& pi);

// Tail event {w: X(w) > q} with q the left p-quantile of X. On an equal-
// weight space with distinct values and p on the grid this is the top
// (1-p)*m atoms, so P(A) = 1-p, matching the continuous picture.
Event tail_event(const RandomVariable& x, double p);

// One member of a family of measures on Omega^2.
struct PointPairMember {
  std::size_t omega;
  std::size_t omega_prime;
};
struct EventPairMember {
  std::size_t event_a;  // indices into the family's event list
  std::size_t event_b;
};
struct AtomProductMember {
  SpacePtr pi1;
  SpacePtr pi2;
  std::string id;
};

class MeasureFamily {
 public:
  enum class Provenance {
    explicit_list,
    tail_P,
    tail_Q,
    set_masses_pairs,
    set_masses_diagonal,
    point_masses_all,
    point_masses_diagonal,
  };

  static MeasureFamily from_point_pairs(
      std::string id, std::vector<PointPairMember> pairs, Provenance prov);
  static MeasureFamily from_events(std::string id, SpacePtr base,
                                   std::vector<Event> events, bool diagonal,
                                   Provenance prov);
  static MeasureFamily from_products(std::string id,
                                     std::vector<AtomProductMember> members);

  const std::string& id() const { return id_; }
  Provenance provenance() const { return provenance_; }
  std::size_t member_count() const;
  std::string member_id(std::size_t index) const;

  bool is_point_pairs() const { return !point_pairs_.empty(); }
  const std::vector<PointPairMember>& point_pairs() const {
    return point_pairs_;
  }
  const std::vector<Event>& events() const { return events_; }
  bool diagonal_events() const { return diagonal_; }
  const SpacePtr& base_space() const { return base_; }
  const std::vector<AtomProductMember>& products() const { return products_; }

 private:
  std::string id_;
  Provenance provenance_ = Provenance::explicit_list;
  SpacePtr base_;
  std::vector<PointPairMember> point_pairs_;
  std::vector<Event> events_;
  bool diagonal_ = false;
  std::vector<AtomProductMember> products_;
};

// P_p^X: point-mass products delta_w x delta_w' with w in the tail event and
// w' outside it, restricted to atoms of positive probability.
MeasureFamily family_tail_P(const RandomVariable& x, double p);

// Q_p^X: both coordinates range over the tail event.
MeasureFamily family_tail_Q(const RandomVariable& x, double p);

// All point-mass pairs (strong comonotonicity family) and the diagonal ones.
MeasureFamily family_point_masses(const RandomVariable& x, bool diagonal);

struct SetMassOptions {
  std::size_t max_exhaustive_levels = 12;  // enumerate unions up to here
  std::size_t sample_count = 256;          // sampled unions beyond that
  std::uint64_t seed = 0;
};

// Conditional set-mass products P_A x P_B over sigma+(X), with events
// enumerated as non-empty unions of X's level sets.
MeasureFamily family_set_masses(const RandomVariable& x, bool diagonal,
                                const SetMassOptions& options = {});

struct FamilyVerdict {
  bool all_comonotonic = false;
  bool all_antimonotonic = false;
  double min_value = 0.0;
  std::string min_member_id;  // the worst member for the comonotonic side
  double max_value = 0.0;
  std::string max_member_id;  // the worst member for the antimonotonic side
  std::size_t member_count = 0;
  double tolerance = kWcTol;
};

FamilyVerdict wc_family(const RandomVariable& x, const RandomVariable& y,
                        const MeasureFamily& family, double tol = kWcTol);

struct LemmaVarResult {
  bool wc_px = false;
  bool wc_py = false;
  bool tails_equal = false;
};

// The three equivalent statements around the tail families of X and Y;
// requires the grid-continuous surrogate (equal weights, distinct values,
// p on the grid) and raises if the equivalence is broken.
LemmaVarResult lemma_var_check(const RandomVariable& x,
                               const RandomVariable& y, double p);

// Pearson correlation under the conditional measure P(.|A).
double cond_corr(const RandomVariable& x, const RandomVariable& y,
                 const Event& a);

// C^pi(g,h) = 1/2 Cov[g(V),h(W)] + 1/2 Cov[h(V),g(W)] for a joint measure
// over a value grid.
double cpi(const FunctionHandle& g, const FunctionHandle& h,
           const JointMeasure& joint);

// Omega^2 form of the same symmetric cross-covariance, for random variables
// under a square joint measure.
double cpi_rv(const RandomVariable& x, const RandomVariable& y,
              const JointMeasure& joint);

struct DominanceGap {
  double lhs = 0.0;        // integral under the joint measure
  double rhs = 0.0;        // integral under the product of its marginals
  double cpi_value = 0.0;  // rhs - lhs == 2 * cpi_value
};

DominanceGap product_dominance_gap(const RandomVariable& x,
                                   const RandomVariable& y,
                                   const JointMeasure& joint);

// h*(x) = E[h(W) | V = x], tabulated on the joint's row grid.
FunctionHandle h_star(const FunctionHandle& h, const JointMeasure& joint);

// Positive regression dependence: x -> F_{W|V}(y|x) non-increasing for
// every grid level y.
bool prd_check(const JointMeasure& joint);

struct IndependenceOptions {
  std::size_t max_exhaustive_dim = 8;
  std::size_t sample_count = 256;
  std::uint64_t seed = 0;
};

// True iff every rectangle covariance pi(AxB) - pi1(A)pi2(B) vanishes
// (within 1e-12) over unions of grid levels; exhaustive up to 8x8.
bool independence_test_S4(const JointMeasure& joint,
                          const IndependenceOptions& options = {});

struct StrongCheckResult {
  bool comonotonic = false;
  bool antimonotonic = false;
  bool injective_pair = false;
};

// Point-wise comonotonicity / antimonotonicity over all atom pairs.
StrongCheckResult strong_check(const RandomVariable& x,
                               const RandomVariable& y);

}  // namespace weakcomo
