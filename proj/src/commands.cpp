#include "weakcomo/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "weakcomo/aggregation.hpp"
#include "weakcomo/csv.hpp"
#include "weakcomo/gaussian.hpp"
#include "weakcomo/prob_core.hpp"
#include "weakcomo/risk_measures.hpp"
#include "weakcomo/risk_sharing.hpp"
#include "weakcomo/weak_comon.hpp"

namespace weakcomo {

namespace {

using nlohmann::json;

// Round to 12 significant digits so reports are reproducible byte for byte.
double j12(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.11e", x);
  return std::strtod(buf, nullptr);
}

json number_array(const std::vector<double>& xs) {
  json arr = json::array();
  for (double x : xs) arr.push_back(j12(x));
  return arr;
}

struct CommonConfig {
  std::uint64_t seed = 0;
  double tol = kWcTol;
  std::string out_dir;
  std::string base_dir = ".";
  QuadratureConfig quadrature;
};

CommonConfig parse_common(const json& cfg) {
  CommonConfig common;
  if (cfg.contains("seed")) common.seed = cfg.at("seed").get<std::uint64_t>();
  if (cfg.contains("tol")) common.tol = cfg.at("tol").get<double>();
  if (!(common.tol > 0.0))
    fail(ErrorCode::parse_error, "config: tol must be > 0");
  if (cfg.contains("out")) common.out_dir = cfg.at("out").get<std::string>();
  if (cfg.contains("base_dir"))
    common.base_dir = cfg.at("base_dir").get<std::string>();
  if (cfg.contains("quad_nodes")) {
    const auto nodes = cfg.at("quad_nodes").get<long long>();
    if (nodes < 8) fail(ErrorCode::parse_error, "config: quad_nodes must be >= 8");
    common.quadrature.nodes = static_cast<std::size_t>(nodes);
  }
  return common;
}

std::string resolve_path(const CommonConfig& common, const std::string& path) {
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(common.base_dir) / p).string();
}

json envelope(const std::string& command, const CommonConfig& common) {
  json report;
  report["command"] = command;
  report["version"] = kToolVersion;
  report["seed"] = common.seed;
  report["tolerance"] = j12(common.tol);
  report["quad_nodes"] = common.quadrature.nodes;
  return report;
}

json verdict_json(const WcVerdict& v) {
  return {{"measure_id", v.measure_id},
          {"value", j12(v.value)},
          {"tolerance", j12(v.tolerance)},
          {"classification", v.classification()}};
}

// ---- wc-check -------------------------------------------------------------

json run_wc_check(const json& cfg, const CommonConfig& common) {
  if (!cfg.contains("scenario_csv"))
    fail(ErrorCode::parse_error, "wc-check: config needs scenario_csv");
  const Scenario scenario =
      load_scenario_csv(resolve_path(common, cfg.at("scenario_csv")));
  if (scenario.names.size() < 2)
    fail(ErrorCode::parse_error, "wc-check: scenario needs >= 2 named columns");

  const std::string x_name =
      cfg.value("x", scenario.names[0]);
  const std::string y_name =
      cfg.value("y", scenario.names[1]);
  const RandomVariable x = scenario.variable(x_name);
  const RandomVariable y = scenario.variable(y_name);

  const json fam_cfg = cfg.value("family", json{{"kind", "explicit"}});
  const std::string kind = fam_cfg.value("kind", "explicit");

  json report = envelope("wc-check", common);
  report["x"] = x_name;
  report["y"] = y_name;

  MeasureFamily family = [&]() {
    if (kind == "explicit") {
      return MeasureFamily::from_products(
          "explicit",
          {AtomProductMember{x.space_ptr(), x.space_ptr(), "P x P"}});
    }
    if (kind == "tail_P" || kind == "tail_Q") {
      if (!fam_cfg.contains("p"))
        fail(ErrorCode::parse_error, "wc-check: tail family needs p");
      const double p = fam_cfg.at("p").get<double>();
      return kind == "tail_P" ? family_tail_P(x, p) : family_tail_Q(x, p);
    }
    if (kind == "set_masses") {
      SetMassOptions options;
      options.seed = common.seed;
      const bool diagonal = fam_cfg.value("mode", "pairs") == "diagonal";
      return family_set_masses(x, diagonal, options);
    }
    fail(ErrorCode::parse_error, "wc-check: unknown family kind '" + kind + "'");
  }();
  report["family"] = family.id();

  const FamilyVerdict summary = wc_family(x, y, family, common.tol);
  report["summary"] = {{"all_comonotonic", summary.all_comonotonic},
                       {"all_antimonotonic", summary.all_antimonotonic},
                       {"member_count", summary.member_count},
                       {"min_value", j12(summary.min_value)},
                       {"min_member", summary.min_member_id},
                       {"max_value", j12(summary.max_value)},
                       {"max_member", summary.max_member_id},
                       {"tolerance", j12(summary.tolerance)}};

  // per-member verdicts, capped to keep reports reviewable
  constexpr std::size_t kMaxListed = 1000;
  json members = json::array();
  const std::size_t listed = std::min(family.member_count(), kMaxListed);
  for (std::size_t idx = 0; idx < listed; ++idx) {
    WcVerdict v;
    v.tolerance = common.tol;
    v.measure_id = family.member_id(idx);
    if (family.is_point_pairs()) {
      const auto& pair = family.point_pairs()[idx];
      v.value = (x.value(pair.omega) - x.value(pair.omega_prime)) *
                (y.value(pair.omega) - y.value(pair.omega_prime));
    } else if (!family.events().empty()) {
      std::size_t a = idx, b = idx;
      if (!family.diagonal_events()) {
        a = idx / family.events().size();
        b = idx % family.events().size();
      }
      const SpacePtr pa =
          conditional_measure(family.base_space(), family.events()[a]);
      const SpacePtr pb =
          conditional_measure(family.base_space(), family.events()[b]);
      v.value = wc_rv(x, y, *pa, *pb).value;
    } else {
      const auto& member = family.products()[idx];
      v.value = wc_rv(x, y, *member.pi1, *member.pi2).value;
    }
    members.push_back(verdict_json(v));
  }
  report["members"] = members;
  report["members_truncated"] = family.member_count() > kMaxListed;
  return report;
}

// ---- aggregate ------------------------------------------------------------

json run_aggregate(const json& cfg, const CommonConfig& common) {
  if (!cfg.contains("fx") || !cfg.contains("fy") || !cfg.contains("p"))
    fail(ErrorCode::parse_error, "aggregate: config needs fx, fy and p");
  const auto fx = cfg.at("fx").get<std::vector<double>>();
  const auto fy = cfg.at("fy").get<std::vector<double>>();
  const double p = cfg.at("p").get<double>();

  json report = envelope("aggregate", common);
  report["p"] = j12(p);
  report["m"] = fx.size();
  report["worst_var"] = j12(worst_var_two(fx, fy, p));
  report["worst_es"] = j12(worst_es_two(fx, fy, p));

  // the explicit coupling construction needs tie-free marginals; the bounds
  // above do not
  auto tie_free = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };
  if (tie_free(fx) && tie_free(fy)) {
    const Coupling coupling = build_worst_coupling(fx, fy, p);
    report["coupling"] = {{"x", number_array(coupling.x.values())},
                          {"y", number_array(coupling.y.values())}};
    const EsMaximizerResult es_chk = es_maximizer_check(coupling, p);
    report["es_maximizer"] = {{"es_additive", es_chk.es_additive},
                              {"wc_tail", es_chk.wc_tail}};
  } else {
    report["coupling"] = nullptr;
    report["es_maximizer"] = nullptr;
  }

  if (fx.size() <= 8) {
    const BruteForceResult oracle = brute_force_worst_var(fx, fy, p);
    json perm = json::array();
    for (std::size_t i : oracle.permutation) perm.push_back(i);
    report["oracle"] = {
        {"max_value", j12(oracle.max_value)},
        {"permutation", perm},
        {"agrees",
         std::abs(oracle.max_value - report["worst_var"].get<double>()) <=
             1e-9}};
  }
  return report;
}

// ---- share ----------------------------------------------------------------

json run_share(const json& cfg, const CommonConfig& common) {
  if (!cfg.contains("alphas") || !cfg.contains("beta") ||
      !cfg.contains("scenario_csv"))
    fail(ErrorCode::parse_error,
         "share: config needs alphas, beta and scenario_csv");
  const auto alphas = cfg.at("alphas").get<std::vector<double>>();
  const double beta = cfg.at("beta").get<double>();
  const Scenario scenario =
      load_scenario_csv(resolve_path(common, cfg.at("scenario_csv")));
  if (scenario.names.empty())
    fail(ErrorCode::parse_error, "share: scenario needs a value column");
  const std::string column = cfg.value("column", scenario.names[0]);
  const RandomVariable x = scenario.variable(column);

  const SharingProblem prob = make_sharing_problem(x, alphas, beta);
  const Allocation allocation = solve(prob);

  json report = envelope("share", common);
  report["column"] = column;
  report["alphas"] = number_array(alphas);
  report["beta"] = j12(beta);
  report["gamma"] = j12(allocation.gamma);
  report["v_beta"] = j12(v_beta(prob));
  report["objective"] = j12(allocation.certificates.objective);

  json parts = json::array();
  for (const auto& part : allocation.parts)
    parts.push_back(number_array(part.values()));
  json up_beta = json::array();
  for (bool ok : allocation.certificates.up_beta) up_beta.push_back(ok);
  json order = json::array();
  for (std::size_t i : allocation.agent_order) order.push_back(i);
  report["allocation"] = {{"parts", parts},
                          {"leader", allocation.leader},
                          {"agent_order", order},
                          {"y", j12(allocation.y)},
                          {"z", j12(allocation.z)}};
  report["certificates"] = {
      {"covers_total", allocation.certificates.covers_total},
      {"up_beta", up_beta}};

  const auto trials = cfg.value("trials", std::size_t{0});
  if (trials > 0) {
    const SearchResult oracle =
        randomized_admissible_search(prob, trials, common.seed);
    report["oracle"] = {{"min_objective", j12(oracle.min_objective)},
                        {"accepted", oracle.accepted},
                        {"trials", oracle.trials}};
  }
  return report;
}

// ---- demo -----------------------------------------------------------------

std::string format12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

json run_demo(const json& cfg, const CommonConfig& common) {
  (void)cfg;
  const std::filesystem::path out_dir =
      common.out_dir.empty() ? std::filesystem::path(".")
                             : std::filesystem::path(common.out_dir);
  std::filesystem::create_directories(out_dir);

  json report = envelope("demo", common);

  // (a) the sin/cos window curves: closed forms against quadrature
  const FunctionHandle g("sin", [](double v) { return std::sin(v); });
  const FunctionHandle h("cos", [](double v) { return std::cos(v); });
  const double pi = std::numbers::pi;
  auto closed_right = [&](double a) {
    return 2.0 * std::sin(a) * (1.0 - std::cos(a)) / (a * a) -
           std::sin(a) * std::sin(a) / a;
  };

  double max_disc_left = 0.0, max_disc_center = 0.0, max_disc_right = 0.0;
  std::ostringstream csv;
  csv << "a,delta_left,delta_center,delta_right\n";
  const int steps = 200;
  for (int k = 1; k <= steps; ++k) {
    const double a = pi * static_cast<double>(k) / steps;
    const double left = -closed_right(a);
    const double center = 0.0;
    const double right = closed_right(a);

    const LineMeasure f_left = LineMeasure::uniform_interval(0.0, a);
    const LineMeasure f_center =
        LineMeasure::uniform_interval(0.5 * (pi - a), 0.5 * (pi + a));
    const LineMeasure f_right = LineMeasure::uniform_interval(pi - a, pi);
    const double q_left =
        wc_fun(g, h, {f_left, f_left}, common.quadrature).value;
    const double q_center =
        wc_fun(g, h, {f_center, f_center}, common.quadrature).value;
    const double q_right =
        wc_fun(g, h, {f_right, f_right}, common.quadrature).value;

    max_disc_left = std::max(max_disc_left, std::abs(q_left - left));
    max_disc_center = std::max(max_disc_center, std::abs(q_center - center));
    max_disc_right = std::max(max_disc_right, std::abs(q_right - right));

    csv << format12(a) << "," << format12(left) << "," << format12(center)
        << "," << format12(right) << "\n";
  }
  const double worst_disc =
      std::max({max_disc_left, max_disc_center, max_disc_right});
  if (worst_disc > 1e-6)
    fail(ErrorCode::numerical_inconsistency,
         "demo: closed form vs quadrature discrepancy exceeds 1e-6");
  {
    std::ofstream out(out_dir / "delta.csv", std::ios::binary);
    out << csv.str();
  }
  report["delta_csv"] = (out_dir / "delta.csv").string();
  report["max_discrepancy"] = {{"left", j12(max_disc_left)},
                               {"center", j12(max_disc_center)},
                               {"right", j12(max_disc_right)}};

  // (b) the 2x2 dependence example and its symmetric cross-covariance
  const JointMeasure joint51 = JointMeasure::from_matrix(
      {{0.1, 0.2}, {0.2, 0.5}}, {0.0, pi / 2.0}, {2.0 * pi / 3.0, pi});
  auto cross_cov = [&](const FunctionHandle& u, const FunctionHandle& v) {
    double e = 0.0;
    std::vector<double> ur(joint51.rows()), vc(joint51.cols());
    for (std::size_t i = 0; i < joint51.rows(); ++i)
      ur[i] = u(joint51.row_points()[i]);
    for (std::size_t j = 0; j < joint51.cols(); ++j)
      vc[j] = v(joint51.col_points()[j]);
    for (std::size_t i = 0; i < joint51.rows(); ++i)
      for (std::size_t j = 0; j < joint51.cols(); ++j)
        e += joint51.weight(i, j) * ur[i] * vc[j];
    return e - mean_under(joint51.row_marginal(), ur) *
                   mean_under(joint51.col_marginal(), vc);
  };
  const double cov1 = cross_cov(g, h);
  const double cov2 = cross_cov(h, g);
  json example51 = {{"cov_gv_hw", j12(cov1)},
                    {"cov_hv_gw", j12(cov2)},
                    {"cpi", j12(cpi(g, h, joint51))}};
  {
    std::ofstream out(out_dir / "example51.json", std::ios::binary);
    out << example51.dump(2) << "\n";
  }
  report["example51"] = example51;

  // (c) conditional correlations of a bivariate Gaussian pair
  const auto samples = cfg.value("mc_samples", std::size_t{1000000});
  json gaussian = json::array();
  for (double c : {-0.5, 0.0, 0.5}) {
    for (GaussEvent event : {GaussEvent::x_positive, GaussEvent::abs_x_below_one,
                             GaussEvent::x_below_minus_one}) {
      const GaussCondCorr r =
          gaussian_cond_corr(c, event, samples, common.seed);
      gaussian.push_back({{"c", j12(c)},
                          {"event", gauss_event_name(event)},
                          {"estimate", j12(r.estimate)},
                          {"std_error", j12(r.std_error)},
                          {"samples_in_event", r.samples_in_event}});
    }
  }
  {
    std::ofstream out(out_dir / "gaussian.json", std::ios::binary);
    out << gaussian.dump(2) << "\n";
  }
  report["gaussian"] = (out_dir / "gaussian.json").string();
  report["mc_samples"] = samples;
  return report;
}

}  // namespace

CommandResult run_command(const std::string& name,
                          const std::string& config_json) {
  CommandResult result;
  try {
    json cfg;
    try {
      cfg = json::parse(config_json);
    } catch (const json::exception& e) {
      fail(ErrorCode::parse_error, std::string("config: ") + e.what());
    }
    const CommonConfig common = [&]() {
      try {
        return parse_common(cfg);
      } catch (const json::exception& e) {
        fail(ErrorCode::parse_error, std::string("config: ") + e.what());
      }
    }();
    json report;
    try {
      if (name == "wc-check")
        report = run_wc_check(cfg, common);
      else if (name == "aggregate")
        report = run_aggregate(cfg, common);
      else if (name == "share")
        report = run_share(cfg, common);
      else if (name == "demo")
        report = run_demo(cfg, common);
      else
        fail(ErrorCode::parse_error, "unknown command: " + name);
    } catch (const json::exception& e) {
      fail(ErrorCode::parse_error, std::string("config: ") + e.what());
    }
    result.exit_code = 0;
    result.report_json = report.dump(2) + "\n";
  } catch (const Error& e) {
    json err = {{"error", {{"code", error_code_name(e.code())},
                           {"message", e.what()}}}};
    result.exit_code = error_code_exit_class(e.code());
    result.report_json = err.dump(2) + "\n";
  } catch (const std::exception& e) {
    json err = {{"error", {{"code", "Internal"}, {"message", e.what()}}}};
    result.exit_code = 4;
    result.report_json = err.dump(2) + "\n";
  }
  return result;
}

}  // namespace weakcomo
