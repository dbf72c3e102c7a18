#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "weakcomo/errors.hpp"
#include "weakcomo/quadrature.hpp"

namespace weakcomo {

namespace detail {
// Compensated summation; keeps probability grids exact to ~1e-15 even for
// thousands of atoms.
double kahan_sum(std::span<const double> xs);
}  // namespace detail

// Discrete stand-in for (Omega, F, P): atoms 0..m-1 with probabilities.
// Immutable after construction; atom indices are the identity of omega.
class FiniteProbSpace {
 public:
  std::size_t atom_count() const { return probs_.size(); }
  double prob(std::size_t atom) const { return probs_[atom]; }
  const std::vector<double>& probs() const { return probs_; }
  bool equal_weight(double tol = 1e-12) const;

  // Prefix sums prob(0) + ... + prob(k), k = 0..m-1 (last entry is 1).
  const std::vector<double>& prefix_sums() const { return prefix_; }

  double expectation(std::span<const double> values) const;

  friend std::shared_ptr<const FiniteProbSpace> make_space(
      std::vector<double> probs);

 private:
  explicit FiniteProbSpace(std::vector<double> probs);

  std::vector<double> probs_;
  std::vector<double> prefix_;
};

using SpacePtr = std::shared_ptr<const FiniteProbSpace>;

// Builds a space from non-negative weights; the total is renormalized to 1
// exactly (scenario weights are often plain counts).
SpacePtr make_space(std::vector<double> probs);

// A set of atom indices of a space with m atoms.
class Event {
 public:
  Event(std::size_t atom_count, std::vector<std::size_t> members);

  static Event full(std::size_t atom_count);
  static Event empty(std::size_t atom_count) { return Event(atom_count, {}); }

  std::size_t atom_count() const { return atom_count_; }
  const std::vector<std::size_t>& members() const { return members_; }
  bool contains(std::size_t atom) const;
  Event complement() const;

  double probability(const FiniteProbSpace& space) const;

 private:
  std::size_t atom_count_;
  std::vector<std::size_t> members_;  // sorted, unique
};

// P(. | A): same atom count, mass probs[i]/P(A) on A, zero off A.
SpacePtr conditional_measure(const SpacePtr& space, const Event& a);

// Same-index-set "a.s. equality": the symmetric difference carries zero mass.
bool events_equal_as(const FiniteProbSpace& space, const Event& a,
                     const Event& b);

class RandomVariable {
 public:
  RandomVariable(SpacePtr space, std::vector<double> values);

  const FiniteProbSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  std::size_t size() const { return values_.size(); }
  double value(std::size_t atom) const { return values_[atom]; }
  const std::vector<double>& values() const { return values_; }

  double expectation() const { return space_->expectation(values_); }
  bool distinct_values() const;

 private:
  SpacePtr space_;
  std::vector<double> values_;
};

enum class Monotonicity { none, nondecreasing, nonincreasing };

// A named real->real map; the id shows up in reports so g and h can be told
// apart. The monotonicity tag is advisory.
class FunctionHandle {
 public:
  FunctionHandle(std::string id, std::function<double(double)> fn,
                 Monotonicity tag = Monotonicity::none);

  double operator()(double x) const { return fn_(x); }
  const std::string& id() const { return id_; }
  Monotonicity tag() const { return tag_; }

  // Validates an advisory tag against sampled points; no-op for untagged.
  void check_tag_on(std::span<const double> points) const;

 private:
  std::string id_;
  std::function<double(double)> fn_;
  Monotonicity tag_;
};

// Probability measure on the real line: discrete atoms, a uniform interval,
// or a weighted reweighting h(x)/E[h] of a base measure.
class LineMeasure {
 public:
  enum class Kind { discrete_atoms, uniform_interval, weighted };

  static LineMeasure discrete_atoms(std::vector<double> points,
                                    std::vector<double> masses);
  static LineMeasure point_mass(double x);
  static LineMeasure uniform_interval(double a, double b);

  Kind kind() const { return kind_; }
  std::string describe() const;

  // E[f] and a quadrature error estimate (zero for purely discrete measures).
  QuadratureResult expectation(const std::function<double(double)>& f,
                               const QuadratureConfig& cfg = {}) const;

  // accessors for the discrete kind
  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& masses() const { return masses_; }
  // accessors for the interval kind
  double lower() const { return a_; }
  double upper() const { return b_; }
  double weight_normalizer() const { return normalizer_; }

  friend LineMeasure weighted_measure(const LineMeasure& base,
                                      const FunctionHandle& w,
                                      const QuadratureConfig& cfg);

 private:
  LineMeasure() = default;

  Kind kind_ = Kind::discrete_atoms;
  std::vector<double> points_;  // discrete
  std::vector<double> masses_;
  double a_ = 0.0, b_ = 1.0;  // interval
  std::shared_ptr<const LineMeasure> base_;  // weighted
  std::shared_ptr<const FunctionHandle> weight_;
  double normalizer_ = 1.0;  // E_base[w], cached at construction
};

// F^h(dx) = h(x)/E[h] F(dx). Rejects negative weights on the support and a
// vanishing or non-finite normalizer.
LineMeasure weighted_measure(const LineMeasure& base, const FunctionHandle& w,
                             const QuadratureConfig& cfg = {});

struct ProductMeasure {
  LineMeasure first;
  LineMeasure second;
  std::string describe() const;
};

inline ProductMeasure independent_product(LineMeasure rho1, LineMeasure rho2) {
  return {std::move(rho1), std::move(rho2)};
}

// Measure on a pair of finite index sets (rows x cols). Square matrices model
// measures on Omega^2; rectangular ones with value grids model bivariate
// distributions of (V, W).
class JointMeasure {
 public:
  static JointMeasure from_matrix(const std::vector<std::vector<double>>& w);
  static JointMeasure from_matrix(const std::vector<std::vector<double>>& w,
                                  std::vector<double> row_points,
                                  std::vector<double> col_points);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  double weight(std::size_t i, std::size_t j) const {
    return weights_[i * cols_ + j];
  }

  const std::vector<double>& row_marginal() const { return row_marginal_; }
  const std::vector<double>& col_marginal() const { return col_marginal_; }
  bool symmetric() const { return symmetric_; }

  bool has_points() const { return !row_points_.empty(); }
  const std::vector<double>& row_points() const { return row_points_; }
  const std::vector<double>& col_points() const { return col_points_; }

  // The independent coupling with the same marginals.
  JointMeasure product_of_marginals() const;

 private:
  JointMeasure() = default;

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> weights_;  // row-major, sums to 1
  std::vector<double> row_marginal_;
  std::vector<double> col_marginal_;
  bool symmetric_ = false;
  std::vector<double> row_points_;
  std::vector<double> col_points_;
};

inline JointMeasure joint_from_matrix(
    const std::vector<std::vector<double>>& w) {
  return JointMeasure::from_matrix(w);
}

// Mean / covariance / correlation of atom-indexed values under a measure
// given as a probability vector over the same atoms.
double mean_under(std::span<const double> probs, std::span<const double> v);
double cov_under(std::span<const double> probs, std::span<const double> x,
                 std::span<const double> y);

}  // namespace weakcomo
