#include "weakcomo/prob_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace weakcomo {

namespace detail {

double kahan_sum(std::span<const double> xs) {
  double sum = 0.0;
  double comp = 0.0;
  for (double x : xs) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace detail

FiniteProbSpace::FiniteProbSpace(std::vector<double> probs)
    : probs_(std::move(probs)) {
  prefix_.resize(probs_.size());
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    const double y = probs_[i] - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    prefix_[i] = sum;
  }
  if (!prefix_.empty()) prefix_.back() = 1.0;
}

bool FiniteProbSpace::equal_weight(double tol) const {
  if (probs_.empty()) return false;
  const double w = 1.0 / static_cast<double>(probs_.size());
  return std::all_of(probs_.begin(), probs_.end(),
                     [&](double p) { return std::abs(p - w) <= tol; });
}

double FiniteProbSpace::expectation(std::span<const double> values) const {
  if (values.size() != probs_.size())
    fail(ErrorCode::space_mismatch, "expectation: value count != atom count");
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    const double y = probs_[i] * values[i] - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

SpacePtr make_space(std::vector<double> probs) {
  if (probs.empty()) fail(ErrorCode::empty_space, "make_space: no atoms");
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p))
      fail(ErrorCode::negative_mass, "make_space: negative or invalid mass");
  }
  const double total = detail::kahan_sum(probs);
  if (!(total > 0.0))
    fail(ErrorCode::zero_total_mass, "make_space: total mass is zero");
  for (double& p : probs) p /= total;
  return SpacePtr(new FiniteProbSpace(std::move(probs)));
}

Event::Event(std::size_t atom_count, std::vector<std::size_t> members)
    : atom_count_(atom_count), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
  if (!members_.empty() && members_.back() >= atom_count_)
    fail(ErrorCode::invalid_argument, "Event: atom index out of range");
}

Event Event::full(std::size_t atom_count) {
  std::vector<std::size_t> all(atom_count);
  for (std::size_t i = 0; i < atom_count; ++i) all[i] = i;
  return Event(atom_count, std::move(all));
}

bool Event::contains(std::size_t atom) const {
  return std::binary_search(members_.begin(), members_.end(), atom);
}

Event Event::complement() const {
  std::vector<std::size_t> rest;
  rest.reserve(atom_count_ - members_.size());
  for (std::size_t i = 0; i < atom_count_; ++i)
    if (!contains(i)) rest.push_back(i);
  return Event(atom_count_, std::move(rest));
}

double Event::probability(const FiniteProbSpace& space) const {
  if (space.atom_count() != atom_count_)
    fail(ErrorCode::space_mismatch, "Event::probability: wrong space");
  double p = 0.0;
  for (std::size_t atom : members_) p += space.prob(atom);
  return p;
}

SpacePtr conditional_measure(const SpacePtr& space, const Event& a) {
  const double pa = a.probability(*space);
  if (!(pa > 0.0))
    fail(ErrorCode::null_event, "conditional_measure: P(A) = 0");
  std::vector<double> probs(space->atom_count(), 0.0);
  for (std::size_t atom : a.members()) probs[atom] = space->prob(atom) / pa;
  return make_space(std::move(probs));
}

bool events_equal_as(const FiniteProbSpace& space, const Event& a,
                     const Event& b) {
  if (a.atom_count() != b.atom_count() ||
      a.atom_count() != space.atom_count())
    fail(ErrorCode::space_mismatch, "events_equal_as: mismatched spaces");
  for (std::size_t atom : a.members())
    if (!b.contains(atom) && space.prob(atom) > 0.0) return false;
  for (std::size_t atom : b.members())
    if (!a.contains(atom) && space.prob(atom) > 0.0) return false;
  return true;
}

RandomVariable::RandomVariable(SpacePtr space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_) fail(ErrorCode::invalid_argument, "RandomVariable: null space");
  if (values_.size() != space_->atom_count())
    fail(ErrorCode::space_mismatch,
         "RandomVariable: value count != atom count");
  for (double v : values_)
    if (!std::isfinite(v))
      fail(ErrorCode::invalid_argument, "RandomVariable: non-finite value");
}

bool RandomVariable::distinct_values() const {
  std::vector<double> sorted = values_;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

FunctionHandle::FunctionHandle(std::string id,
                               std::function<double(double)> fn,
                               Monotonicity tag)
    : id_(std::move(id)), fn_(std::move(fn)), tag_(tag) {
  if (!fn_) fail(ErrorCode::invalid_argument, "FunctionHandle: null evaluator");
}

void FunctionHandle::check_tag_on(std::span<const double> points) const {
  if (tag_ == Monotonicity::none || points.size() < 2) return;
  std::vector<double> xs(points.begin(), points.end());
  std::sort(xs.begin(), xs.end());
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double d = fn_(xs[i + 1]) - fn_(xs[i]);
    if (tag_ == Monotonicity::nondecreasing && d < -1e-12)
      fail(ErrorCode::invalid_argument,
           "FunctionHandle '" + id_ + "': nondecreasing tag violated");
    if (tag_ == Monotonicity::nonincreasing && d > 1e-12)
      fail(ErrorCode::invalid_argument,
           "FunctionHandle '" + id_ + "': nonincreasing tag violated");
  }
}

LineMeasure LineMeasure::discrete_atoms(std::vector<double> points,
                                        std::vector<double> masses) {
  if (points.empty() || points.size() != masses.size())
    fail(ErrorCode::invalid_argument,
         "LineMeasure::discrete_atoms: points/masses size mismatch");
  for (double m : masses)
    if (!(m >= 0.0)) fail(ErrorCode::negative_mass, "discrete mass < 0");
  const double total = detail::kahan_sum(masses);
  if (!(total > 0.0))
    fail(ErrorCode::zero_total_mass, "discrete masses sum to zero");
  if (std::abs(total - 1.0) > 1e-9)
    fail(ErrorCode::invalid_argument,
         "discrete masses must sum to 1 within 1e-9");
  for (double& m : masses) m /= total;
  LineMeasure lm;
  lm.kind_ = Kind::discrete_atoms;
  lm.points_ = std::move(points);
  lm.masses_ = std::move(masses);
  return lm;
}

LineMeasure LineMeasure::point_mass(double x) {
  return discrete_atoms({x}, {1.0});
}

LineMeasure LineMeasure::uniform_interval(double a, double b) {
  if (!(a < b))
    fail(ErrorCode::invalid_argument, "uniform_interval: requires a < b");
  LineMeasure lm;
  lm.kind_ = Kind::uniform_interval;
  lm.a_ = a;
  lm.b_ = b;
  return lm;
}

std::string LineMeasure::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::discrete_atoms:
      if (points_.size() == 1) {
        os << "delta(" << points_[0] << ")";
      } else {
        os << "atoms[" << points_.size() << "]";
      }
      break;
    case Kind::uniform_interval:
      os << "U[" << a_ << "," << b_ << "]";
      break;
    case Kind::weighted:
      os << "weighted(" << base_->describe() << "," << weight_->id() << ")";
      break;
  }
  return os.str();
}

QuadratureResult LineMeasure::expectation(
    const std::function<double(double)>& f, const QuadratureConfig& cfg) const {
  switch (kind_) {
    case Kind::discrete_atoms: {
      std::vector<double> terms(points_.size());
      for (std::size_t i = 0; i < points_.size(); ++i)
        terms[i] = masses_[i] * f(points_[i]);
      return {detail::kahan_sum(terms), 0.0};
    }
    case Kind::uniform_interval: {
      QuadratureResult r = integrate(f, a_, b_, cfg.nodes);
      const double width = b_ - a_;
      return {r.value / width, r.error_estimate / width};
    }
    case Kind::weighted: {
      const auto& w = *weight_;
      QuadratureResult num = base_->expectation(
          [&](double x) { return f(x) * w(x); }, cfg);
      return {num.value / normalizer_, num.error_estimate / normalizer_};
    }
  }
  fail(ErrorCode::invalid_argument, "LineMeasure: unknown kind");
}

LineMeasure weighted_measure(const LineMeasure& base, const FunctionHandle& w,
                             const QuadratureConfig& cfg) {
  // Support check is numerical: atoms for discrete measures, quadrature
  // nodes for intervals.
  if (base.kind() == LineMeasure::Kind::discrete_atoms) {
    for (double x : base.points())
      if (w(x) < 0.0)
        fail(ErrorCode::negative_weight,
             "weighted_measure: weight negative at atom");
  } else if (base.kind() == LineMeasure::Kind::uniform_interval) {
    const auto rule = gauss_legendre(cfg.nodes);
    const double mid = 0.5 * (base.lower() + base.upper());
    const double half = 0.5 * (base.upper() - base.lower());
    for (double node : rule.nodes)
      if (w(mid + half * node) < 0.0)
        fail(ErrorCode::negative_weight,
             "weighted_measure: weight negative on support");
  }
  const QuadratureResult norm =
      base.expectation([&](double x) { return w(x); }, cfg);
  if (!(norm.value > 0.0) || !std::isfinite(norm.value))
    fail(ErrorCode::degenerate_normalizer,
         "weighted_measure: E[w] must be positive and finite");
  LineMeasure lm;
  lm.kind_ = LineMeasure::Kind::weighted;
  lm.base_ = std::make_shared<LineMeasure>(base);
  lm.weight_ = std::make_shared<FunctionHandle>(w);
  lm.normalizer_ = norm.value;
  return lm;
}

std::string ProductMeasure::describe() const {
  return first.describe() + " x " + second.describe();
}

JointMeasure JointMeasure::from_matrix(
    const std::vector<std::vector<double>>& w) {
  if (w.empty() || w.front().empty())
    fail(ErrorCode::invalid_argument, "joint_from_matrix: empty matrix");
  const std::size_t rows = w.size();
  const std::size_t cols = w.front().size();
  JointMeasure jm;
  jm.rows_ = rows;
  jm.cols_ = cols;
  jm.weights_.reserve(rows * cols);
  for (const auto& row : w) {
    if (row.size() != cols)
      fail(ErrorCode::invalid_argument, "joint_from_matrix: ragged matrix");
    for (double x : row) {
      if (!(x >= 0.0) || !std::isfinite(x))
        fail(ErrorCode::negative_mass, "joint_from_matrix: negative mass");
      jm.weights_.push_back(x);
    }
  }
  const double total = detail::kahan_sum(jm.weights_);
  if (!(total > 0.0))
    fail(ErrorCode::zero_total_mass, "joint_from_matrix: zero total mass");
  if (std::abs(total - 1.0) > 1e-9)
    fail(ErrorCode::invalid_argument,
         "joint_from_matrix: masses must sum to 1 within 1e-9");
  for (double& x : jm.weights_) x /= total;

  jm.row_marginal_.assign(rows, 0.0);
  jm.col_marginal_.assign(cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      jm.row_marginal_[i] += jm.weights_[i * cols + j];
      jm.col_marginal_[j] += jm.weights_[i * cols + j];
    }
  jm.symmetric_ = rows == cols;
  if (jm.symmetric_) {
    for (std::size_t i = 0; i < rows && jm.symmetric_; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (jm.weights_[i * cols + j] != jm.weights_[j * cols + i]) {
          jm.symmetric_ = false;
          break;
        }
  }
  return jm;
}

JointMeasure JointMeasure::from_matrix(
    const std::vector<std::vector<double>>& w, std::vector<double> row_points,
    std::vector<double> col_points) {
  JointMeasure jm = from_matrix(w);
  if (row_points.size() != jm.rows_ || col_points.size() != jm.cols_)
    fail(ErrorCode::invalid_argument,
         "joint_from_matrix: grid point count mismatch");
  jm.row_points_ = std::move(row_points);
  jm.col_points_ = std::move(col_points);
  return jm;
}

JointMeasure JointMeasure::product_of_marginals() const {
  std::vector<std::vector<double>> w(rows_, std::vector<double>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      w[i][j] = row_marginal_[i] * col_marginal_[j];
  if (has_points()) return from_matrix(w, row_points_, col_points_);
  return from_matrix(w);
}

double mean_under(std::span<const double> probs, std::span<const double> v) {
  if (probs.size() != v.size())
    fail(ErrorCode::space_mismatch, "mean_under: size mismatch");
  std::vector<double> terms(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) terms[i] = probs[i] * v[i];
  return detail::kahan_sum(terms);
}

double cov_under(std::span<const double> probs, std::span<const double> x,
                 std::span<const double> y) {
  const double mx = mean_under(probs, x);
  const double my = mean_under(probs, y);
  std::vector<double> terms(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    terms[i] = probs[i] * (x[i] - mx) * (y[i] - my);
  return detail::kahan_sum(terms);
}

}  // namespace weakcomo
