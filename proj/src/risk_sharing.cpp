#include "weakcomo/risk_sharing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "weakcomo/risk_measures.hpp"
#include "weakcomo/weak_comon.hpp"

namespace weakcomo {

namespace {

std::size_t round_to_grid(double level, std::size_t m, const char* what) {
  const double scaled = level * static_cast<double>(m);
  const double rounded = std::round(scaled);
  if (std::abs(scaled - rounded) > 1e-9)
    fail(ErrorCode::continuity_surrogate_violated,
         std::string(what) + ": level is not a multiple of 1/m");
  return static_cast<std::size_t>(rounded);
}

// atoms ordered by descending X value (distinct values make this unique)
std::vector<std::size_t> descending_order(const RandomVariable& x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x.value(a) > x.value(b);
  });
  return order;
}

// left quantile at raw level on an equal-weight multiset, O(m)
double equal_weight_left_level(std::vector<double> values, double level) {
  const std::size_t m = values.size();
  if (level <= kLevelTol) {
    return *std::min_element(values.begin(), values.end());
  }
  const auto k = static_cast<std::size_t>(
      std::max(std::ceil(level * static_cast<double>(m) - 1e-9), 1.0));
  const std::size_t idx = std::min(k, m) - 1;
  std::nth_element(values.begin(), values.begin() + static_cast<long>(idx),
                   values.end());
  return values[static_cast<std::size_t>(idx)];
}

void require_problem_shape(const RandomVariable& x) {
  if (!x.space().equal_weight() || !x.distinct_values())
    fail(ErrorCode::continuity_surrogate_violated,
         "risk sharing: X must live on an equal-weight space with distinct "
         "values");
}

}  // namespace

double gamma_of(const std::vector<double>& alphas, double beta) {
  if (alphas.empty())
    fail(ErrorCode::invalid_argument, "gamma_of: no agents");
  const double max_alpha = *std::max_element(alphas.begin(), alphas.end());
  double surplus = 0.0;
  for (double a : alphas) surplus += std::max(a - beta, 0.0);
  return std::min(beta, max_alpha) + surplus;
}

SharingProblem make_sharing_problem(RandomVariable x,
                                    std::vector<double> alphas, double beta) {
  require_problem_shape(x);
  if (alphas.empty())
    fail(ErrorCode::invalid_argument, "sharing problem: no agents");
  check_level_closed(beta);
  double total = 0.0;
  for (double a : alphas) {
    if (!(a > 0.0))
      fail(ErrorCode::invalid_argument, "sharing problem: alpha_i must be > 0");
    total += a;
  }
  if (!(total < 1.0 - kLevelTol))
    fail(ErrorCode::invalid_argument,
         "sharing problem: sum of alphas must stay below 1");
  const std::size_t m = x.size();
  round_to_grid(beta, m, "beta");
  for (double a : alphas) round_to_grid(a, m, "alpha");
  round_to_grid(gamma_of(alphas, beta), m, "gamma");
  return SharingProblem{std::move(x), std::move(alphas), beta};
}

double v_beta(const SharingProblem& prob) {
  return left_q(prob.x, gamma_of(prob.alphas, prob.beta));
}

bool up_beta_check(const RandomVariable& y, const RandomVariable& z,
                   double beta) {
  check_level_closed(beta);
  if (y.size() != z.size())
    fail(ErrorCode::space_mismatch, "up_beta_check: mismatched spaces");
  if (beta <= kLevelTol) return true;  // empty union of tail families
  if (!z.space().equal_weight() || !z.distinct_values())
    fail(ErrorCode::continuity_surrogate_violated,
         "up_beta_check: Z must be distinct-valued on an equal-weight space");
  const std::size_t m = z.size();
  const std::size_t k0 = m - round_to_grid(beta, m, "up_beta_check");
  for (std::size_t k = std::max<std::size_t>(k0, 1); k < m; ++k) {
    const double p = static_cast<double>(k) / static_cast<double>(m);
    if (!wc_family(y, z, family_tail_P(z, p)).all_comonotonic) return false;
  }
  return true;
}

bool up_beta_aligned(const RandomVariable& y, const RandomVariable& z,
                     double beta) {
  check_level_closed(beta);
  if (y.size() != z.size())
    fail(ErrorCode::space_mismatch, "up_beta_aligned: mismatched spaces");
  if (beta <= kLevelTol) return true;
  if (!z.space().equal_weight() || !z.distinct_values())
    fail(ErrorCode::continuity_surrogate_violated,
         "up_beta_aligned: Z must be distinct-valued on an equal-weight space");
  const std::size_t m = z.size();
  const std::size_t s_max =
      std::min(round_to_grid(beta, m, "up_beta_aligned"), m - 1);
  const std::vector<std::size_t> order = descending_order(z);
  std::vector<double> suffix_max(m + 1,
                                 -std::numeric_limits<double>::infinity());
  for (std::size_t i = m; i-- > 0;)
    suffix_max[i] = std::max(suffix_max[i + 1], y.value(order[i]));
  double run_min = std::numeric_limits<double>::infinity();
  for (std::size_t s = 1; s <= s_max; ++s) {
    run_min = std::min(run_min, y.value(order[s - 1]));
    if (run_min < suffix_max[s]) return false;
  }
  return true;
}

Allocation solve(const SharingProblem& prob) {
  const RandomVariable& x = prob.x;
  const std::size_t m = x.size();
  const std::size_t n = prob.alphas.size();
  const double beta = prob.beta;

  const double max_alpha =
      *std::max_element(prob.alphas.begin(), prob.alphas.end());
  const std::size_t leader = static_cast<std::size_t>(
      std::max_element(prob.alphas.begin(), prob.alphas.end()) -
      prob.alphas.begin());

  Allocation out;
  out.gamma = gamma_of(prob.alphas, beta);
  const SortedDist dist = SortedDist::from(x);
  out.z = quantile_left_level(dist, 1.0 - out.gamma);
  out.y = quantile_left_level(dist, 1.0 - beta);
  out.leader = leader;

  std::vector<std::vector<double>> parts(n, std::vector<double>(m, 0.0));

  if (beta >= max_alpha - kLevelTol) {
    parts[leader] = x.values();
    out.agent_order = {leader};
  } else {
    // agents with alpha_i > beta, leader first, then descending alpha with
    // ties broken by original index
    std::vector<std::size_t> j_set;
    for (std::size_t i = 0; i < n; ++i)
      if (prob.alphas[i] > beta + kLevelTol) j_set.push_back(i);
    std::sort(j_set.begin(), j_set.end(), [&](std::size_t a, std::size_t b) {
      if (prob.alphas[a] != prob.alphas[b])
        return prob.alphas[a] > prob.alphas[b];
      return a < b;
    });
    out.agent_order = j_set;

    const std::size_t b_count = round_to_grid(beta, m, "solve");
    const std::size_t g_count = round_to_grid(out.gamma, m, "solve");
    std::vector<std::size_t> chunk(n, 0);
    std::size_t chunk_total = 0;
    for (std::size_t i : j_set) {
      const double scaled =
          (prob.alphas[i] - beta) * static_cast<double>(m);
      const double rounded = std::round(scaled);
      if (std::abs(scaled - rounded) > 1e-9 || rounded < 1.0)
        fail(ErrorCode::partition_infeasible,
             "solve: alpha_i - beta is not a positive multiple of 1/m");
      chunk[i] = static_cast<std::size_t>(rounded);
      chunk_total += chunk[i];
    }
    if (b_count + chunk_total != g_count)
      fail(ErrorCode::partition_infeasible,
           "solve: partition sizes do not add up to the gamma tail");

    const std::vector<std::size_t> order = descending_order(x);
    const double y_plus = std::max(out.y, 0.0);

    // leader takes X on B, on its own chunk and below the gamma tail; the
    // constant z elsewhere. Other tail agents take y_+ on B and X - z on
    // their chunk.
    parts[leader].assign(m, out.z);
    for (std::size_t r = 0; r < b_count; ++r) {
      const std::size_t atom = order[r];
      parts[leader][atom] = x.value(atom);
      for (std::size_t i : j_set)
        if (i != leader) parts[i][atom] = y_plus;
    }
    std::size_t next = b_count;
    for (std::size_t i : j_set) {
      for (std::size_t r = 0; r < chunk[i]; ++r, ++next) {
        const std::size_t atom = order[next];
        if (i == leader)
          parts[leader][atom] = x.value(atom);
        else
          parts[i][atom] = x.value(atom) - out.z;
      }
    }
    for (std::size_t r = g_count; r < m; ++r) {
      const std::size_t atom = order[r];
      parts[leader][atom] = x.value(atom);
    }
  }

  out.parts.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.parts.emplace_back(x.space_ptr(), std::move(parts[i]));

  bool covers = true;
  for (std::size_t atom = 0; atom < m && covers; ++atom) {
    double total = 0.0;
    for (const auto& part : out.parts) total += part.value(atom);
    covers = total >= x.value(atom) - 1e-9;
  }
  out.certificates.covers_total = covers;
  out.certificates.up_beta.reserve(n);
  for (const auto& part : out.parts)
    out.certificates.up_beta.push_back(up_beta_check(part, x, beta));
  double objective = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    objective += left_q(out.parts[i], prob.alphas[i]);
  out.certificates.objective = objective;
  return out;
}

std::array<LemmaPart, 5> lemma_rs1_predicates(const RandomVariable& y,
                                              const RandomVariable& x,
                                              double beta, double alpha,
                                              double z) {
  if (y.size() != x.size())
    fail(ErrorCode::space_mismatch, "lemma_rs1_predicates: mismatched spaces");
  require_problem_shape(x);
  if (!(beta > 0.0 && beta < 1.0) || !(alpha > 0.0 && alpha < 1.0))
    fail(ErrorCode::precondition_violated,
         "lemma_rs1_predicates: beta and alpha must lie in (0,1)");
  const std::size_t m = x.size();
  round_to_grid(beta, m, "lemma_rs1_predicates");
  round_to_grid(alpha, m, "lemma_rs1_predicates");

  const Event b = tail_event(x, 1.0 - beta);
  const bool up_beta = up_beta_check(y, x, beta);
  const double q_beta_y = left_q(y, beta);
  const double q_alpha_y = left_q(y, alpha);

  auto mix = [&](bool z_on_b) {
    std::vector<double> w(m);
    for (std::size_t i = 0; i < m; ++i) {
      const bool in_b = b.contains(i);
      w[i] = (in_b == z_on_b) ? z : y.value(i);
    }
    return RandomVariable(y.space_ptr(), std::move(w));
  };

  std::array<LemmaPart, 5> parts;

  // (i) B inside {Y >= Q_beta(Y)}, complement inside {Y <= Q_beta(Y)}
  parts[0].precondition_ok = up_beta;
  if (parts[0].precondition_ok) {
    bool holds = true;
    for (std::size_t i = 0; i < m; ++i) {
      if (b.contains(i))
        holds = holds && y.value(i) >= q_beta_y;
      else
        holds = holds && y.value(i) <= q_beta_y;
    }
    parts[0].holds = holds;
  }

  // (ii) alpha > beta, z <= Q_alpha(Y):
  //      Q_alpha(Y) == Q_{alpha-beta}(z 1_B + Y 1_{B^c})
  parts[1].precondition_ok =
      up_beta && alpha > beta + kLevelTol && z <= q_alpha_y;
  if (parts[1].precondition_ok)
    parts[1].holds = left_q(mix(true), alpha - beta) == q_alpha_y;

  // (iii) alpha > beta, z >= Q_alpha(Y):
  //       Q_alpha(Y) == Q_alpha(z 1_B + Y 1_{B^c})
  parts[2].precondition_ok =
      up_beta && alpha > beta + kLevelTol && z >= q_alpha_y;
  if (parts[2].precondition_ok)
    parts[2].holds = left_q(mix(true), alpha) == q_alpha_y;

  // (iv) alpha <= beta, z <= Q_alpha(Y):
  //      Q_alpha(Y) == Q_alpha(Y 1_B + z 1_{B^c})
  // At alpha == beta the constant z already carries mass 1 - alpha, so the
  // identity only survives with z == Q_alpha(Y); the theorem uses exactly
  // that boundary value.
  parts[3].precondition_ok =
      up_beta && alpha <= beta + kLevelTol && z <= q_alpha_y &&
      (alpha < beta - kLevelTol || z == q_alpha_y);
  if (parts[3].precondition_ok)
    parts[3].holds = left_q(mix(false), alpha) == q_alpha_y;

  // (v) alpha + beta < 1, any Z and z:
  //     Q_alpha(Z) >= Q_{alpha+beta}(z 1_B + Z 1_{B^c})
  parts[4].precondition_ok = alpha + beta < 1.0 - kLevelTol;
  if (parts[4].precondition_ok)
    parts[4].holds = q_alpha_y >= left_q(mix(true), alpha + beta);

  return parts;
}

namespace {

struct TrialContext {
  const SharingProblem* prob = nullptr;
  std::vector<std::size_t> order;  // descending X
  std::size_t b_count = 0;
  double min_b_x = 0.0;
  double spread = 1.0;
};

double candidate_objective(const TrialContext& ctx,
                           const std::vector<std::vector<double>>& parts) {
  double total = 0.0;
  for (std::size_t i = 0; i < parts.size(); ++i)
    total += equal_weight_left_level(parts[i],
                                     1.0 - ctx.prob->alphas[i]);
  return total;
}

bool candidate_admissible(const TrialContext& ctx,
                          const std::vector<std::vector<double>>& parts) {
  const RandomVariable& x = ctx.prob->x;
  for (std::size_t atom = 0; atom < x.size(); ++atom) {
    double total = 0.0;
    for (const auto& part : parts) total += part[atom];
    if (total < x.value(atom) - 1e-9) return false;
  }
  for (const auto& part : parts) {
    RandomVariable rv(x.space_ptr(), part);
    if (!up_beta_aligned(rv, x, ctx.prob->beta)) return false;
  }
  return true;
}

// Random allocation: affine-in-X comonotone shares on the beta tail, random
// non-negative redistributions below it, capped so the tail keeps dominating.
std::vector<std::vector<double>> random_candidate(const TrialContext& ctx,
                                                  std::mt19937_64& rng) {
  const RandomVariable& x = ctx.prob->x;
  const std::size_t m = x.size();
  const std::size_t n = ctx.prob->alphas.size();
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<double> lambda(n), shift(n);
  double lambda_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    lambda[i] = 0.05 + unit(rng);
    lambda_total += lambda[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    lambda[i] /= lambda_total;
    shift[i] = unit(rng) * ctx.spread;
  }

  std::vector<std::vector<double>> parts(n, std::vector<double>(m, 0.0));
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t atom = ctx.order[r];
    const double xv = x.value(atom);
    if (r < ctx.b_count) {
      for (std::size_t i = 0; i < n; ++i)
        parts[i][atom] = shift[i] + lambda[i] * xv;
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        const double base = lambda[i] * xv;
        const double headroom =
            ctx.b_count > 0
                ? shift[i] + lambda[i] * (ctx.min_b_x - xv)
                : ctx.spread;
        parts[i][atom] = base + unit(rng) * std::max(headroom, 0.0);
      }
    }
  }
  return parts;
}

}  // namespace

SearchResult randomized_admissible_search(const SharingProblem& prob,
                                          std::size_t trials,
                                          std::uint64_t seed) {
  TrialContext ctx;
  ctx.prob = &prob;
  ctx.order = descending_order(prob.x);
  ctx.b_count = round_to_grid(prob.beta, prob.x.size(), "search");
  ctx.min_b_x = ctx.b_count > 0
                    ? prob.x.value(ctx.order[ctx.b_count - 1])
                    : 0.0;
  const auto [lo, hi] = std::minmax_element(prob.x.values().begin(),
                                            prob.x.values().end());
  ctx.spread = std::max(*hi - *lo, 1.0);

  const Allocation optimum = solve(prob);
  std::vector<std::vector<double>> opt_parts;
  opt_parts.reserve(optimum.parts.size());
  for (const auto& part : optimum.parts) opt_parts.push_back(part.values());

  SearchResult result;
  result.trials = trials;
  result.min_objective = std::numeric_limits<double>::infinity();

  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (trial + 1)));
    std::vector<std::vector<double>> parts;
    if (trial == 0) {
      parts = opt_parts;  // the optimum itself is always a candidate
    } else if (trial % 4 == 3) {
      // perturb the optimum off the tail; rejected if a cap breaks
      parts = opt_parts;
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      const std::size_t agent = rng() % parts.size();
      for (std::size_t r = ctx.b_count; r < ctx.order.size(); ++r)
        if ((rng() & 3) == 0)
          parts[agent][ctx.order[r]] += unit(rng) * 0.1 * ctx.spread;
    } else {
      parts = random_candidate(ctx, rng);
    }
    if (!candidate_admissible(ctx, parts)) continue;
    ++result.accepted;
    result.min_objective =
        std::min(result.min_objective, candidate_objective(ctx, parts));
  }
  return result;
}

}  // namespace weakcomo
