#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "weakcomo/csv.hpp"
#include "weakcomo/prob_core.hpp"

using namespace weakcomo;

TEST_CASE("make_space basics") {
  const auto space = make_space({0.5, 0.5});
  CHECK(space->atom_count() == 2);
  CHECK(space->prob(0) == doctest::Approx(0.5));

  const auto equal = make_space({1.0, 1.0, 1.0, 1.0});
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(equal->prob(i) == doctest::Approx(0.25));
  CHECK(equal->equal_weight());

  // the Example 5.1 marginal weights
  const auto skew = make_space({0.3, 0.7});
  CHECK(skew->prob(0) == doctest::Approx(0.3));
  CHECK(skew->prob(1) == doctest::Approx(0.7));
}

TEST_CASE("make_space rejects bad input") {
  CHECK_THROWS_WITH_AS(make_space({}), doctest::Contains("no atoms"), Error);
  CHECK_THROWS_AS(make_space({0.5, -0.1}), Error);
  CHECK_THROWS_AS(make_space({0.0, 0.0}), Error);
  try {
    make_space({0.0, 0.0});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::zero_total_mass);
  }
}

TEST_CASE("conditional_measure") {
  const auto equal4 = make_space({1, 1, 1, 1});
  const auto cond = conditional_measure(equal4, Event(4, {2, 3}));
  CHECK(cond->prob(0) == 0.0);
  CHECK(cond->prob(1) == 0.0);
  CHECK(cond->prob(2) == doctest::Approx(0.5));
  CHECK(cond->prob(3) == doctest::Approx(0.5));

  const auto skew = make_space({0.3, 0.7});
  const auto point = conditional_measure(skew, Event(2, {1}));
  CHECK(point->prob(0) == 0.0);
  CHECK(point->prob(1) == doctest::Approx(1.0));

  const auto equal5 = make_space(std::vector<double>(5, 1.0));
  const auto head = conditional_measure(equal5, Event(5, {0, 1, 2}));
  CHECK(head->prob(0) == doctest::Approx(1.0 / 3));
  CHECK(head->prob(4) == 0.0);

  CHECK_THROWS_AS(conditional_measure(point, Event(2, {0})), Error);
}

TEST_CASE("conditional_measure is idempotent") {
  const auto space = make_space({0.1, 0.2, 0.3, 0.4});
  const Event a(4, {1, 3});
  const auto once = conditional_measure(space, a);
  const auto twice = conditional_measure(once, a);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(twice->prob(i) == doctest::Approx(once->prob(i)).epsilon(1e-14));
}

TEST_CASE("weighted_measure matches the reweighting identity") {
  const auto base = LineMeasure::discrete_atoms({0.0, 1.0}, {0.5, 0.5});
  const FunctionHandle exp_w("exp", [](double x) { return std::exp(x); });
  const LineMeasure tilted = weighted_measure(base, exp_w);

  const auto identity = [](double x) { return x; };
  const double e = std::exp(1.0);
  CHECK(tilted.expectation(identity).value ==
        doctest::Approx(e / (1.0 + e)).epsilon(1e-12));

  // E^h[g] - E[g] has the sign of Cov[g(X), h(X)]; compute the covariance
  // directly as the oracle
  const double mean_g = base.expectation(identity).value;
  const double lift = tilted.expectation(identity).value - mean_g;
  const double cov_oracle =
      0.5 * (0.0 * std::exp(0.0) + 1.0 * e) -
      mean_g * base.expectation([](double x) { return std::exp(x); }).value;
  CHECK(cov_oracle > 0.0);
  CHECK(lift == doctest::Approx(0.231059).epsilon(1e-5));
  CHECK(lift > 0.0);

  // w == c > 0 leaves the measure unchanged
  for (double c : {1.0, 0.25, 40.0}) {
    const LineMeasure same = weighted_measure(
        base, FunctionHandle("const", [c](double) { return c; }));
    CHECK(same.expectation(identity).value ==
          doctest::Approx(mean_g).epsilon(1e-14));
  }
}

TEST_CASE("weighted_measure over an interval base") {
  // exponential tilting of U[0,1]: E^h[X] = 1/(e-1) in closed form
  const auto base = LineMeasure::uniform_interval(0.0, 1.0);
  const FunctionHandle exp_w("exp", [](double x) { return std::exp(x); });
  const LineMeasure tilted = weighted_measure(base, exp_w);
  CHECK(tilted.expectation([](double x) { return x; }).value ==
        doctest::Approx(1.0 / (std::exp(1.0) - 1.0)).epsilon(1e-12));
  CHECK(tilted.weight_normalizer() ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
}

TEST_CASE("weighted_measure error paths") {
  const auto base = LineMeasure::discrete_atoms({-1.0, 1.0}, {0.5, 0.5});
  CHECK_THROWS_AS(
      weighted_measure(base, FunctionHandle("id", [](double x) { return x; })),
      Error);
  CHECK_THROWS_AS(weighted_measure(
                      base, FunctionHandle("zero", [](double) { return 0.0; })),
                  Error);
}

TEST_CASE("weighted expectation identity E^h[g] = E[gh]/E[h] on atoms") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.1, 2.0);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t m = 2 + rng() % 6;
    std::vector<double> points(m), masses = oracles::random_probs(rng, m);
    for (auto& p : points) p = dist(rng);
    const auto base = LineMeasure::discrete_atoms(points, masses);
    const FunctionHandle w("sq", [](double x) { return x * x; });
    const LineMeasure tilted = weighted_measure(base, w);
    const auto g = [](double x) { return std::sin(x) + 2.0; };
    const double lhs = tilted.expectation(g).value;
    const double rhs =
        base.expectation([&](double x) { return g(x) * x * x; }).value /
        base.expectation([](double x) { return x * x; }).value;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("independent_product wraps the pair") {
  const auto pm = independent_product(LineMeasure::point_mass(0.0),
                                      LineMeasure::point_mass(1.0));
  CHECK(pm.first.points()[0] == 0.0);
  CHECK(pm.second.points()[0] == 1.0);
  CHECK(pm.describe() == "delta(0) x delta(1)");

  const auto window = independent_product(
      LineMeasure::uniform_interval(std::numbers::pi / 2, std::numbers::pi),
      LineMeasure::uniform_interval(std::numbers::pi / 2, std::numbers::pi));
  CHECK(window.first.lower() == doctest::Approx(std::numbers::pi / 2));
}

TEST_CASE("joint_from_matrix marginals and symmetry") {
  const JointMeasure j51 = joint_from_matrix({{0.1, 0.2}, {0.2, 0.5}});
  CHECK(j51.row_marginal()[0] == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(j51.row_marginal()[1] == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(j51.col_marginal()[0] == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(j51.col_marginal()[1] == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(j51.symmetric());

  const JointMeasure indep = j51.product_of_marginals();
  CHECK(indep.weight(0, 0) == doctest::Approx(0.09));
  CHECK(indep.symmetric());

  const JointMeasure comon = joint_from_matrix({{0.5, 0.0}, {0.0, 0.5}});
  CHECK(comon.symmetric());
  CHECK(comon.row_marginal()[0] == doctest::Approx(0.5));

  CHECK_THROWS_AS(joint_from_matrix({{0.5, -0.1}, {0.3, 0.3}}), Error);
  CHECK_THROWS_AS(joint_from_matrix({{0.0, 0.0}, {0.0, 0.0}}), Error);
}

TEST_CASE("joint marginals equal cached row/column sums exactly") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 2 + rng() % 5;
    const auto w = oracles::random_joint_matrix(rng, n, n);
    const JointMeasure joint = joint_from_matrix(w);
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0, col = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        row += joint.weight(i, j);
        col += joint.weight(j, i);
      }
      CHECK(row == doctest::Approx(joint.row_marginal()[i]).epsilon(1e-14));
      CHECK(col == doctest::Approx(joint.col_marginal()[i]).epsilon(1e-14));
    }
  }
}

TEST_CASE("scenario CSV round trip") {
  const std::string text =
      "weight,loss_a,loss_b\n"
      "1,1.5,2.5\n"
      "1,2.5,1.5\n"
      "2,3.5,0.5\n";
  const Scenario sc = parse_scenario_csv(text);
  CHECK(sc.names == std::vector<std::string>{"loss_a", "loss_b"});
  CHECK(sc.space->atom_count() == 3);
  CHECK(sc.space->prob(2) == doctest::Approx(0.5));
  const RandomVariable a = sc.variable("loss_a");
  CHECK(a.value(2) == 3.5);
  CHECK_THROWS_AS(sc.variable("missing"), Error);
}

TEST_CASE("scenario CSV rejects malformed input") {
  CHECK_THROWS_AS(parse_scenario_csv(""), Error);
  CHECK_THROWS_AS(parse_scenario_csv("weight\n1\n"), Error);
  CHECK_THROWS_AS(parse_scenario_csv("w,x\n1,2\n"), Error);
  CHECK_THROWS_AS(parse_scenario_csv("weight,x\n1\n"), Error);
  CHECK_THROWS_AS(parse_scenario_csv("weight,x\n1,abc\n"), Error);
  CHECK_THROWS_AS(parse_scenario_csv("weight,x\noops,1\n"), Error);
}

TEST_CASE("matrix CSV") {
  const auto m = parse_matrix_csv("0.1,0.2\n0.2,0.5\n");
  CHECK(m.size() == 2);
  CHECK(m[1][1] == 0.5);
  CHECK_THROWS_AS(parse_matrix_csv("1,2,3\n4,5\n"), Error);
  CHECK_THROWS_AS(parse_matrix_csv("1,2,3\n4,5,6\n"), Error);
}

TEST_CASE("function handle monotonicity tags are checked") {
  const FunctionHandle up("inc", [](double x) { return 2 * x; },
                          Monotonicity::nondecreasing);
  const std::vector<double> grid{0.0, 0.5, 1.0};
  CHECK_NOTHROW(up.check_tag_on(grid));
  const FunctionHandle lying("dec?", [](double x) { return x * x - x; },
                             Monotonicity::nonincreasing);
  CHECK_THROWS_AS(lying.check_tag_on(grid), Error);
}

TEST_CASE("events validate and complement") {
  const Event a(5, {4, 1, 1});
  CHECK(a.members() == std::vector<std::size_t>{1, 4});
  CHECK(a.complement().members() == std::vector<std::size_t>{0, 2, 3});
  CHECK_THROWS_AS(Event(3, {5}), Error);

  const auto space = make_space({0.0, 0.5, 0.5});
  // zero-probability atoms do not break a.s. equality
  CHECK(events_equal_as(*space, Event(3, {0, 1}), Event(3, {1})));
  CHECK_FALSE(events_equal_as(*space, Event(3, {1}), Event(3, {2})));
}
