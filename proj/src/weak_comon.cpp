#include "weakcomo/weak_comon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace weakcomo {

namespace {

std::string join_atoms(const std::vector<std::size_t>& atoms) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) os << ",";
    os << atoms[i];
  }
  os << "}";
  return os.str();
}

void require_same_atoms(const RandomVariable& x, const RandomVariable& y) {
  if (x.size() != y.size())
    fail(ErrorCode::space_mismatch, "random variables live on different spaces");
}

}  // namespace

std::string WcVerdict::classification() const {
  const bool com = comonotonic_witness();
  const bool anti = antimonotonic_witness();
  if (com && anti) return "both";
  return com ? "comonotonic" : "antimonotonic";
}

WcVerdict wc_fun(const FunctionHandle& g, const FunctionHandle& h,
                 const ProductMeasure& pm, const QuadratureConfig& cfg) {
  const auto gh = [&](double x) { return g(x) * h(x); };
  const QuadratureResult e1g = pm.first.expectation(g, cfg);
  const QuadratureResult e1h = pm.first.expectation(h, cfg);
  const QuadratureResult e1gh = pm.first.expectation(gh, cfg);
  const QuadratureResult e2g = pm.second.expectation(g, cfg);
  const QuadratureResult e2h = pm.second.expectation(h, cfg);
  const QuadratureResult e2gh = pm.second.expectation(gh, cfg);

  const double value = e1gh.value + e2gh.value - e1g.value * e2h.value -
                       e2g.value * e1h.value;
  const double est = e1gh.error_estimate + e2gh.error_estimate +
                     e1g.error_estimate * std::abs(e2h.value) +
                     std::abs(e1g.value) * e2h.error_estimate +
                     e2g.error_estimate * std::abs(e1h.value) +
                     std::abs(e2g.value) * e1h.error_estimate;
  if (est > cfg.error_budget)
    fail(ErrorCode::quadrature_failure,
         "wc_fun: quadrature error estimate exceeds budget");
  WcVerdict verdict;
  verdict.value = value;
  verdict.tolerance = kWcTol + est;
  verdict.measure_id = pm.describe();
  return verdict;
}

WcVerdict wc_rv(const RandomVariable& x, const RandomVariable& y,
                const FiniteProbSpace& pi1, const FiniteProbSpace& pi2) {
  require_same_atoms(x, y);
  if (pi1.atom_count() != x.size() || pi2.atom_count() != x.size())
    fail(ErrorCode::space_mismatch, "wc_rv: measures on a different atom set");
  std::vector<double> xy(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    xy[i] = x.value(i) * y.value(i);
  const double e1xy = pi1.expectation(xy);
  const double e2xy = pi2.expectation(xy);
  const double e1x = pi1.expectation(x.values());
  const double e1y = pi1.expectation(y.values());
  const double e2x = pi2.expectation(x.values());
  const double e2y = pi2.expectation(y.values());
  WcVerdict verdict;
  verdict.value = e1xy + e2xy - e1x * e2y - e2x * e1y;
  verdict.measure_id = "pi1 x pi2";
  return verdict;
}

WcVerdict wc_joint(const RandomVariable& x, const RandomVariable& y,
                   const JointMeasure& pi) {
  require_same_atoms(x, y);
  if (!pi.square() || pi.rows() != x.size())
    fail(ErrorCode::space_mismatch,
         "wc_joint: joint measure does not match the atom set");
  double sum = 0.0;
  for (std::size_t i = 0; i < pi.rows(); ++i)
    for (std::size_t j = 0; j < pi.cols(); ++j) {
      const double w = pi.weight(i, j);
      if (w == 0.0) continue;
      sum += w * (x.value(i) - x.value(j)) * (y.value(i) - y.value(j));
    }
  WcVerdict verdict;
  verdict.value = sum;
  verdict.measure_id = "joint";
  return verdict;
}

Event tail_event(const RandomVariable& x, double p) {
  check_level_open(p);
  const SortedDist dist = SortedDist::from(x);
  const double q = quantile_left_level(dist, p);
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x.value(i) > q) members.push_back(i);
  return Event(x.size(), std::move(members));
}

MeasureFamily MeasureFamily::from_point_pairs(std::string id,
                                              std::vector<PointPairMember> pairs,
                                              Provenance prov) {
  if (pairs.empty())
    fail(ErrorCode::invalid_argument, "MeasureFamily: empty point-pair list");
  MeasureFamily fam;
  fam.id_ = std::move(id);
  fam.provenance_ = prov;
  fam.point_pairs_ = std::move(pairs);
  return fam;
}

MeasureFamily MeasureFamily::from_events(std::string id, SpacePtr base,
                                         std::vector<Event> events,
                                         bool diagonal, Provenance prov) {
  if (events.empty())
    fail(ErrorCode::invalid_argument, "MeasureFamily: empty event list");
  MeasureFamily fam;
  fam.id_ = std::move(id);
  fam.provenance_ = prov;
  fam.base_ = std::move(base);
  fam.events_ = std::move(events);
  fam.diagonal_ = diagonal;
  return fam;
}

MeasureFamily MeasureFamily::from_products(
    std::string id, std::vector<AtomProductMember> members) {
  if (members.empty())
    fail(ErrorCode::invalid_argument, "MeasureFamily: empty product list");
  MeasureFamily fam;
  fam.id_ = std::move(id);
  fam.provenance_ = Provenance::explicit_list;
  fam.products_ = std::move(members);
  return fam;
}

std::size_t MeasureFamily::member_count() const {
  if (!point_pairs_.empty()) return point_pairs_.size();
  if (!events_.empty())
    return diagonal_ ? events_.size() : events_.size() * events_.size();
  return products_.size();
}

std::string MeasureFamily::member_id(std::size_t index) const {
  std::ostringstream os;
  if (!point_pairs_.empty()) {
    const auto& m = point_pairs_[index];
    os << "delta[" << m.omega << "]xdelta[" << m.omega_prime << "]";
  } else if (!events_.empty()) {
    std::size_t a = index, b = index;
    if (!diagonal_) {
      a = index / events_.size();
      b = index % events_.size();
    }
    os << "cond" << join_atoms(events_[a].members()) << "xcond"
       << join_atoms(events_[b].members());
  } else {
    return products_[index].id;
  }
  return os.str();
}

namespace {

std::pair<Event, Event> tail_and_complement(const RandomVariable& x, double p) {
  const Event a = tail_event(x, p);
  // a.s. representatives: drop zero-probability atoms from both sides
  std::vector<std::size_t> tail, rest;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x.space().prob(i) <= 0.0) continue;
    if (a.contains(i))
      tail.push_back(i);
    else
      rest.push_back(i);
  }
  if (tail.empty() || rest.empty())
    fail(ErrorCode::degenerate_tail,
         "tail family: tail event is empty or full");
  return {Event(x.size(), std::move(tail)), Event(x.size(), std::move(rest))};
}

}  // namespace

MeasureFamily family_tail_P(const RandomVariable& x, double p) {
  auto [tail, rest] = tail_and_complement(x, p);
  std::vector<PointPairMember> pairs;
  pairs.reserve(tail.members().size() * rest.members().size());
  for (std::size_t w : tail.members())
    for (std::size_t wp : rest.members()) pairs.push_back({w, wp});
  std::ostringstream id;
  id << "tail_P(p=" << p << ")";
  return MeasureFamily::from_point_pairs(id.str(), std::move(pairs),
                                         MeasureFamily::Provenance::tail_P);
}

MeasureFamily family_tail_Q(const RandomVariable& x, double p) {
  auto [tail, rest] = tail_and_complement(x, p);
  (void)rest;
  std::vector<PointPairMember> pairs;
  pairs.reserve(tail.members().size() * tail.members().size());
  for (std::size_t w : tail.members())
    for (std::size_t wp : tail.members()) pairs.push_back({w, wp});
  std::ostringstream id;
  id << "tail_Q(p=" << p << ")";
  return MeasureFamily::from_point_pairs(id.str(), std::move(pairs),
                                         MeasureFamily::Provenance::tail_Q);
}

MeasureFamily family_point_masses(const RandomVariable& x, bool diagonal) {
  std::vector<std::size_t> atoms;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x.space().prob(i) > 0.0) atoms.push_back(i);
  std::vector<PointPairMember> pairs;
  if (diagonal) {
    for (std::size_t i : atoms) pairs.push_back({i, i});
  } else {
    for (std::size_t i : atoms)
      for (std::size_t j : atoms) pairs.push_back({i, j});
  }
  return MeasureFamily::from_point_pairs(
      diagonal ? "point_masses_diagonal" : "point_masses_all", std::move(pairs),
      diagonal ? MeasureFamily::Provenance::point_masses_diagonal
               : MeasureFamily::Provenance::point_masses_all);
}

MeasureFamily family_set_masses(const RandomVariable& x, bool diagonal,
                                const SetMassOptions& options) {
  // level sets of X, in ascending value order
  std::map<double, std::vector<std::size_t>> levels;
  for (std::size_t i = 0; i < x.size(); ++i)
    levels[x.value(i)].push_back(i);
  std::vector<std::vector<std::size_t>> level_sets;
  level_sets.reserve(levels.size());
  for (auto& [value, atoms] : levels) level_sets.push_back(std::move(atoms));

  const std::size_t d = level_sets.size();
  std::vector<Event> events;
  auto event_from_mask = [&](const std::vector<bool>& mask) {
    std::vector<std::size_t> atoms;
    for (std::size_t k = 0; k < d; ++k)
      if (mask[k])
        atoms.insert(atoms.end(), level_sets[k].begin(), level_sets[k].end());
    return Event(x.size(), std::move(atoms));
  };

  if (d <= options.max_exhaustive_levels) {
    const std::size_t limit = std::size_t{1} << d;
    for (std::size_t bits = 1; bits < limit; ++bits) {
      std::vector<bool> mask(d);
      for (std::size_t k = 0; k < d; ++k) mask[k] = (bits >> k) & 1;
      Event ev = event_from_mask(mask);
      if (ev.probability(x.space()) > 0.0) events.push_back(std::move(ev));
    }
  } else {
    std::mt19937_64 rng(options.seed);
    while (events.size() < options.sample_count) {
      std::vector<bool> mask(d);
      bool any = false;
      for (std::size_t k = 0; k < d; ++k) {
        mask[k] = (rng() & 1) != 0;
        any = any || mask[k];
      }
      if (!any) continue;
      Event ev = event_from_mask(mask);
      if (ev.probability(x.space()) > 0.0) events.push_back(std::move(ev));
    }
  }

  return MeasureFamily::from_events(
      diagonal ? "set_masses_diagonal" : "set_masses_pairs", x.space_ptr(),
      std::move(events), diagonal,
      diagonal ? MeasureFamily::Provenance::set_masses_diagonal
               : MeasureFamily::Provenance::set_masses_pairs);
}

FamilyVerdict wc_family(const RandomVariable& x, const RandomVariable& y,
                        const MeasureFamily& family, double tol) {
  require_same_atoms(x, y);
  FamilyVerdict out;
  out.tolerance = tol;
  out.member_count = family.member_count();

  double min_v = std::numeric_limits<double>::infinity();
  double max_v = -std::numeric_limits<double>::infinity();
  std::size_t min_idx = 0, max_idx = 0;
  auto record = [&](std::size_t idx, double v) {
    if (v < min_v) {
      min_v = v;
      min_idx = idx;
    }
    if (v > max_v) {
      max_v = v;
      max_idx = idx;
    }
  };

  if (family.is_point_pairs()) {
    const auto& pairs = family.point_pairs();
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto& m = pairs[k];
      const double v = (x.value(m.omega) - x.value(m.omega_prime)) *
                       (y.value(m.omega) - y.value(m.omega_prime));
      record(k, v);
    }
  } else if (!family.events().empty()) {
    const auto& events = family.events();
    const FiniteProbSpace& base = *family.base_space();
    if (base.atom_count() != x.size())
      fail(ErrorCode::space_mismatch, "wc_family: family on a different space");
    // per-event conditional moments make each pair O(1)
    std::vector<double> mx(events.size()), my(events.size()),
        mxy(events.size());
    for (std::size_t e = 0; e < events.size(); ++e) {
      const double pa = events[e].probability(base);
      if (!(pa > 0.0))
        fail(ErrorCode::null_event, "wc_family: zero-probability event");
      double sx = 0.0, sy = 0.0, sxy = 0.0;
      for (std::size_t atom : events[e].members()) {
        const double w = base.prob(atom);
        sx += w * x.value(atom);
        sy += w * y.value(atom);
        sxy += w * x.value(atom) * y.value(atom);
      }
      mx[e] = sx / pa;
      my[e] = sy / pa;
      mxy[e] = sxy / pa;
    }
    if (family.diagonal_events()) {
      for (std::size_t e = 0; e < events.size(); ++e)
        record(e, 2.0 * (mxy[e] - mx[e] * my[e]));
    } else {
      for (std::size_t a = 0; a < events.size(); ++a)
        for (std::size_t b = 0; b < events.size(); ++b)
          record(a * events.size() + b,
                 mxy[a] + mxy[b] - mx[a] * my[b] - mx[b] * my[a]);
    }
  } else {
    const auto& products = family.products();
    for (std::size_t k = 0; k < products.size(); ++k)
      record(k, wc_rv(x, y, *products[k].pi1, *products[k].pi2).value);
  }

  out.min_value = min_v;
  out.max_value = max_v;
  out.min_member_id = family.member_id(min_idx);
  out.max_member_id = family.member_id(max_idx);
  out.all_comonotonic = min_v >= -tol;
  out.all_antimonotonic = max_v <= tol;
  return out;
}

LemmaVarResult lemma_var_check(const RandomVariable& x,
                               const RandomVariable& y, double p) {
  require_same_atoms(x, y);
  if (!x.space().equal_weight() || !grid_aligned(p, x.space()))
    fail(ErrorCode::continuity_surrogate_violated,
         "lemma_var_check: needs an equal-weight space with p on the grid");
  if (!x.distinct_values() || !y.distinct_values())
    fail(ErrorCode::continuity_surrogate_violated,
         "lemma_var_check: needs distinct values");
  LemmaVarResult r;
  r.wc_px = wc_family(x, y, family_tail_P(x, p)).all_comonotonic;
  r.wc_py = wc_family(x, y, family_tail_P(y, p)).all_comonotonic;
  r.tails_equal =
      events_equal_as(x.space(), tail_event(x, p), tail_event(y, p));
  if (r.wc_px != r.wc_py || r.wc_px != r.tails_equal)
    fail(ErrorCode::numerical_inconsistency,
         "lemma_var_check: the three equivalent statements disagree");
  return r;
}

double cond_corr(const RandomVariable& x, const RandomVariable& y,
                 const Event& a) {
  require_same_atoms(x, y);
  const SpacePtr cond = conditional_measure(x.space_ptr(), a);
  const double cxy = cov_under(cond->probs(), x.values(), y.values());
  const double vx = cov_under(cond->probs(), x.values(), x.values());
  const double vy = cov_under(cond->probs(), y.values(), y.values());
  if (!(vx > 0.0) || !(vy > 0.0))
    fail(ErrorCode::degenerate_variance,
         "cond_corr: zero conditional variance");
  return cxy / std::sqrt(vx * vy);
}

double cpi(const FunctionHandle& g, const FunctionHandle& h,
           const JointMeasure& joint) {
  if (!joint.has_points())
    fail(ErrorCode::invalid_argument, "cpi: joint measure needs a value grid");
  const std::size_t r = joint.rows(), c = joint.cols();
  std::vector<double> gv(r), hv(r), gw(c), hw(c);
  for (std::size_t i = 0; i < r; ++i) {
    gv[i] = g(joint.row_points()[i]);
    hv[i] = h(joint.row_points()[i]);
  }
  for (std::size_t j = 0; j < c; ++j) {
    gw[j] = g(joint.col_points()[j]);
    hw[j] = h(joint.col_points()[j]);
  }
  double e_gh = 0.0, e_hg = 0.0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      const double w = joint.weight(i, j);
      e_gh += w * gv[i] * hw[j];
      e_hg += w * hv[i] * gw[j];
    }
  const double cov_gh = e_gh - mean_under(joint.row_marginal(), gv) *
                                   mean_under(joint.col_marginal(), hw);
  const double cov_hg = e_hg - mean_under(joint.row_marginal(), hv) *
                                   mean_under(joint.col_marginal(), gw);
  return 0.5 * cov_gh + 0.5 * cov_hg;
}

double cpi_rv(const RandomVariable& x, const RandomVariable& y,
              const JointMeasure& joint) {
  require_same_atoms(x, y);
  if (!joint.square() || joint.rows() != x.size())
    fail(ErrorCode::space_mismatch, "cpi_rv: joint does not match atom set");
  double e_xy = 0.0, e_yx = 0.0;
  for (std::size_t i = 0; i < joint.rows(); ++i)
    for (std::size_t j = 0; j < joint.cols(); ++j) {
      const double w = joint.weight(i, j);
      e_xy += w * x.value(i) * y.value(j);
      e_yx += w * y.value(i) * x.value(j);
    }
  const double cross_xy = e_xy - mean_under(joint.row_marginal(), x.values()) *
                                     mean_under(joint.col_marginal(), y.values());
  const double cross_yx = e_yx - mean_under(joint.row_marginal(), y.values()) *
                                     mean_under(joint.col_marginal(), x.values());
  return 0.5 * cross_xy + 0.5 * cross_yx;
}

DominanceGap product_dominance_gap(const RandomVariable& x,
                                   const RandomVariable& y,
                                   const JointMeasure& joint) {
  DominanceGap gap;
  gap.lhs = wc_joint(x, y, joint).value;
  const SpacePtr pi1 = make_space(joint.row_marginal());
  const SpacePtr pi2 = make_space(joint.col_marginal());
  gap.rhs = wc_rv(x, y, *pi1, *pi2).value;
  gap.cpi_value = cpi_rv(x, y, joint);
  if (std::abs(gap.rhs - gap.lhs - 2.0 * gap.cpi_value) > 1e-10)
    fail(ErrorCode::numerical_inconsistency,
         "product_dominance_gap: rhs - lhs != 2*C^pi");
  return gap;
}

FunctionHandle h_star(const FunctionHandle& h, const JointMeasure& joint) {
  if (!joint.has_points())
    fail(ErrorCode::invalid_argument, "h_star: joint measure needs a value grid");
  const std::size_t r = joint.rows(), c = joint.cols();
  std::vector<double> grid = joint.row_points();
  std::vector<double> table(r);
  for (std::size_t i = 0; i < r; ++i) {
    const double mass = joint.row_marginal()[i];
    if (!(mass > 0.0))
      fail(ErrorCode::null_conditioning_atom,
           "h_star: conditioning atom has zero mass");
    double sum = 0.0;
    for (std::size_t j = 0; j < c; ++j)
      sum += joint.weight(i, j) * h(joint.col_points()[j]);
    table[i] = sum / mass;
  }
  auto lookup = [grid, table](double x) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double d = std::abs(grid[i] - x);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    return table[best];
  };
  return FunctionHandle("cond_exp[" + h.id() + "]", lookup);
}

bool prd_check(const JointMeasure& joint) {
  if (!joint.has_points())
    fail(ErrorCode::invalid_argument,
         "prd_check: joint measure needs a value grid");
  const std::size_t r = joint.rows(), c = joint.cols();
  std::vector<std::size_t> row_order(r), col_order(c);
  std::iota(row_order.begin(), row_order.end(), 0);
  std::iota(col_order.begin(), col_order.end(), 0);
  std::sort(row_order.begin(), row_order.end(), [&](std::size_t a, std::size_t b) {
    return joint.row_points()[a] < joint.row_points()[b];
  });
  std::sort(col_order.begin(), col_order.end(), [&](std::size_t a, std::size_t b) {
    return joint.col_points()[a] < joint.col_points()[b];
  });
  // conditional cdf along ordered columns, one row at a time
  std::vector<std::vector<double>> cdf(r, std::vector<double>(c));
  for (std::size_t ri = 0; ri < r; ++ri) {
    const std::size_t i = row_order[ri];
    const double mass = joint.row_marginal()[i];
    if (!(mass > 0.0))
      fail(ErrorCode::null_conditioning_atom,
           "prd_check: conditioning atom has zero mass");
    double acc = 0.0;
    for (std::size_t cj = 0; cj < c; ++cj) {
      acc += joint.weight(i, col_order[cj]);
      cdf[ri][cj] = acc / mass;
    }
  }
  for (std::size_t cj = 0; cj < c; ++cj)
    for (std::size_t ri = 0; ri + 1 < r; ++ri)
      if (cdf[ri + 1][cj] > cdf[ri][cj] + 1e-12) return false;
  return true;
}

bool independence_test_S4(const JointMeasure& joint,
                          const IndependenceOptions& options) {
  const std::size_t r = joint.rows(), c = joint.cols();
  auto rect_cov = [&](const std::vector<bool>& a, const std::vector<bool>& b) {
    double pab = 0.0, pa = 0.0, pb = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
      if (!a[i]) continue;
      pa += joint.row_marginal()[i];
      for (std::size_t j = 0; j < c; ++j)
        if (b[j]) pab += joint.weight(i, j);
    }
    for (std::size_t j = 0; j < c; ++j)
      if (b[j]) pb += joint.col_marginal()[j];
    return pab - pa * pb;
  };

  const bool exhaustive =
      r <= options.max_exhaustive_dim && c <= options.max_exhaustive_dim;
  if (exhaustive) {
    for (std::size_t am = 1; am < (std::size_t{1} << r); ++am) {
      std::vector<bool> a(r);
      for (std::size_t i = 0; i < r; ++i) a[i] = (am >> i) & 1;
      for (std::size_t bm = 1; bm < (std::size_t{1} << c); ++bm) {
        std::vector<bool> b(c);
        for (std::size_t j = 0; j < c; ++j) b[j] = (bm >> j) & 1;
        if (std::abs(rect_cov(a, b)) > 1e-12) return false;
      }
    }
    return true;
  }
  std::mt19937_64 rng(options.seed);
  for (std::size_t s = 0; s < options.sample_count; ++s) {
    std::vector<bool> a(r), b(c);
    bool any_a = false, any_b = false;
    for (std::size_t i = 0; i < r; ++i) {
      a[i] = (rng() & 1) != 0;
      any_a = any_a || a[i];
    }
    for (std::size_t j = 0; j < c; ++j) {
      b[j] = (rng() & 1) != 0;
      any_b = any_b || b[j];
    }
    if (!any_a || !any_b) {
      --s;
      continue;
    }
    if (std::abs(rect_cov(a, b)) > 1e-12) return false;
  }
  return true;
}

StrongCheckResult strong_check(const RandomVariable& x,
                               const RandomVariable& y) {
  require_same_atoms(x, y);
  const std::size_t m = x.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x.value(a) < x.value(b);
  });

  auto aligned = [&](double sign) {
    // group atoms by X level; cross-level pairs must respect Y's order
    double prev_max = -std::numeric_limits<double>::infinity();
    std::size_t i = 0;
    while (i < m) {
      std::size_t j = i;
      double level_min = std::numeric_limits<double>::infinity();
      double level_max = -std::numeric_limits<double>::infinity();
      while (j < m && x.value(order[j]) == x.value(order[i])) {
        const double yv = sign * y.value(order[j]);
        level_min = std::min(level_min, yv);
        level_max = std::max(level_max, yv);
        ++j;
      }
      if (level_min < prev_max) return false;
      prev_max = std::max(prev_max, level_max);
      i = j;
    }
    return true;
  };

  StrongCheckResult r;
  r.comonotonic = aligned(1.0);
  r.antimonotonic = aligned(-1.0);
  r.injective_pair = x.distinct_values() && y.distinct_values();
  return r;
}

}  // namespace weakcomo
