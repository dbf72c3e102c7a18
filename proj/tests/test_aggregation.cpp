#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "weakcomo/aggregation.hpp"
#include "weakcomo/risk_measures.hpp"
#include "weakcomo/risk_sharing.hpp"

using namespace weakcomo;

namespace {

std::vector<double> iota_values(std::size_t m) {
  std::vector<double> v(m);
  for (std::size_t i = 0; i < m; ++i) v[i] = static_cast<double>(i + 1);
  return v;
}

double coupling_var(const Coupling& c, double p) {
  std::vector<double> sums(c.space->atom_count());
  for (std::size_t i = 0; i < sums.size(); ++i)
    sums[i] = c.x.value(i) + c.y.value(i);
  return var(RandomVariable(c.space, std::move(sums)), p);
}

std::vector<double> midpoint_uniform(std::size_t m) {
  std::vector<double> v(m);
  for (std::size_t i = 0; i < m; ++i)
    v[i] = (2.0 * static_cast<double>(i) + 1.0) / (2.0 * static_cast<double>(m));
  return v;
}

}  // namespace

TEST_CASE("worst_var_two on the five-point ladder") {
  const auto fx = iota_values(5);
  // the 5! permutation oracle fixes the expected maximum
  const BruteForceResult oracle = brute_force_worst_var(fx, fx, 0.6);
  CHECK(oracle.max_value == 9.0);
  CHECK(worst_var_two(fx, fx, 0.6) == 9.0);
}

TEST_CASE("worst_var_two on a discretized uniform") {
  const auto fx = midpoint_uniform(1000);
  // the continuous infimum is the constant (0.5+t) + (1-t) = 1.5
  CHECK(worst_var_two(fx, fx, 0.5) ==
        doctest::Approx(1.5).epsilon(2.0 / 1000.0));
}

TEST_CASE("worst_var_two and worst_es_two on constants") {
  const std::vector<double> fa(6, 2.5), fb(6, -1.0);
  for (double p : {1.0 / 6, 0.5, 5.0 / 6}) {
    CHECK(worst_var_two(fa, fb, p) == doctest::Approx(1.5));
    CHECK(worst_es_two(fa, fb, p) == doctest::Approx(1.5));
  }
}

TEST_CASE("worst_es_two is additive in the marginals") {
  const auto fx = iota_values(5);
  CHECK(worst_es_two(fx, fx, 0.6) == doctest::Approx(9.0));
  const auto fu = midpoint_uniform(1000);
  CHECK(worst_es_two(fu, fu, 0.5) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("grid misalignment is rejected") {
  const auto fx = iota_values(5);
  CHECK_THROWS_AS(worst_var_two(fx, fx, 0.55), Error);
  CHECK_THROWS_AS(worst_es_two(fx, fx, 0.55), Error);
  CHECK_THROWS_AS(build_worst_coupling(fx, fx, 0.55), Error);
}

TEST_CASE("build_worst_coupling pairs the tail in reverse") {
  const Coupling c = build_worst_coupling(iota_values(4), iota_values(4), 0.5);
  CHECK(c.x.values() == std::vector<double>{1, 2, 3, 4});
  CHECK(c.y.values() == std::vector<double>{1, 2, 4, 3});
  CHECK(coupling_var(c, 0.5) == 7.0);
  CHECK(brute_force_worst_var(iota_values(4), iota_values(4), 0.5).max_value ==
        7.0);

  const Coupling c2 = build_worst_coupling({1.0, 2.0}, {5.0, 6.0}, 0.5);
  CHECK(c2.y.value(1) == 6.0);  // single tail atom

  const Coupling c5 = build_worst_coupling(iota_values(5), iota_values(5), 0.6);
  CHECK(c5.y.values() == std::vector<double>{1, 2, 3, 5, 4});
  CHECK(coupling_var(c5, 0.6) == 9.0);

  CHECK_THROWS_AS(build_worst_coupling({1, 1, 2, 3}, {1, 2, 3, 4}, 0.5), Error);
}

TEST_CASE("coupling marginal fingerprints are preserved") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t m = 2 + rng() % 7;
    const std::size_t j = 1 + rng() % (m - 1);
    const double p = static_cast<double>(j) / static_cast<double>(m);
    const auto fx = oracles::distinct_values(rng, m);
    const auto fy = oracles::distinct_values(rng, m);
    const Coupling c = build_worst_coupling(fx, fy, p);
    std::vector<double> sx = c.x.values(), sy = c.y.values();
    std::sort(sx.begin(), sx.end());
    std::sort(sy.begin(), sy.end());
    CHECK(sx == c.x_marginal);
    CHECK(sy == c.y_marginal);
  }
}

TEST_CASE("es_maximizer_check equivalence on canonical couplings") {
  // comonotone coupling: both flags true
  const Coupling comon = make_coupling(iota_values(4), {2, 4, 6, 8});
  const EsMaximizerResult a = es_maximizer_check(comon, 0.5);
  CHECK(a.es_additive);
  CHECK(a.wc_tail);

  // the extremal construction also attains the ES bound
  const Coupling built = build_worst_coupling(iota_values(4), iota_values(4), 0.5);
  const EsMaximizerResult b = es_maximizer_check(built, 0.5);
  CHECK(b.es_additive);
  CHECK(b.wc_tail);

  // fully antimonotone coupling: both false, by direct ES computation
  const Coupling anti = make_coupling(iota_values(4), {4, 3, 2, 1});
  std::vector<double> sums(4);
  for (std::size_t i = 0; i < 4; ++i)
    sums[i] = anti.x.value(i) + anti.y.value(i);
  const RandomVariable total(anti.space, sums);
  CHECK(es(total, 0.5) < es(anti.x, 0.5) + es(anti.y, 0.5) - 1e-9);
  const EsMaximizerResult d = es_maximizer_check(anti, 0.5);
  CHECK_FALSE(d.es_additive);
  CHECK_FALSE(d.wc_tail);
}

TEST_CASE("es_maximizer_check booleans agree on random couplings") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 500; ++rep) {
    const std::size_t m = 3 + rng() % 5;
    const std::size_t j = 1 + rng() % (m - 1);
    const double p = static_cast<double>(j) / static_cast<double>(m);
    auto xv = oracles::distinct_values(rng, m);
    auto yv = oracles::distinct_values(rng, m);
    std::shuffle(yv.begin(), yv.end(), rng);
    // es_maximizer_check raises when its sides disagree
    CHECK_NOTHROW(es_maximizer_check(make_coupling(xv, yv), p));
  }
}

TEST_CASE("brute_force_worst_var fixed points") {
  const BruteForceResult two = brute_force_worst_var({1, 2}, {1, 2}, 0.5);
  CHECK(two.max_value == 4.0);  // comonotone sums {2,4}
  CHECK(two.permutation == std::vector<std::size_t>{0, 1});

  CHECK(brute_force_worst_var(iota_values(4), iota_values(4), 0.5).max_value ==
        7.0);
  CHECK_THROWS_AS(
      brute_force_worst_var(iota_values(9), iota_values(9), 1.0 / 3.0), Error);
}

TEST_CASE("formula, construction and enumeration agree at desk scale") {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 120; ++rep) {
    const std::size_t m = 4 + rng() % 4;  // 4..7
    const auto fx = oracles::distinct_values(rng, m);
    const auto fy = oracles::distinct_values(rng, m);
    for (std::size_t j = 1; j < m; ++j) {
      const double p = static_cast<double>(j) / static_cast<double>(m);
      const double formula = worst_var_two(fx, fy, p);
      const double oracle = brute_force_worst_var(fx, fy, p).max_value;
      const double attained = coupling_var(build_worst_coupling(fx, fy, p), p);
      CHECK(formula == doctest::Approx(oracle).epsilon(1e-12));
      CHECK(attained == doctest::Approx(oracle).epsilon(1e-12));
      CHECK(formula <= worst_es_two(fx, fy, p) + 1e-12);
    }
  }
}

TEST_CASE("the built coupling satisfies the tail lemma and the up relation") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t m = 4 + rng() % 5;
    const std::size_t j = 1 + rng() % (m - 1);
    const double p = static_cast<double>(j) / static_cast<double>(m);
    const Coupling c = build_worst_coupling(oracles::distinct_values(rng, m),
                                            oracles::distinct_values(rng, m), p);
    const LemmaVarResult lemma = lemma_var_check(c.x, c.y, p);
    CHECK(lemma.wc_px);
    CHECK(lemma.wc_py);
    CHECK(lemma.tails_equal);
    CHECK(wc_family(c.x, c.y, family_tail_P(c.x, p)).all_comonotonic);
    CHECK(wc_family(c.x, c.y, family_tail_Q(c.x, p)).all_antimonotonic);
  }
}

TEST_CASE("comonotonicity attains the ES bound but can miss the VaR bound") {
  // the classic gap: with {1..4} at p = 0.5 the comonotone coupling gives
  // VaR 6 while the maximum is 7
  const auto fx = iota_values(4);
  const Coupling comon = make_coupling(fx, fx);
  CHECK(coupling_var(comon, 0.5) == 6.0);
  CHECK(worst_var_two(fx, fx, 0.5) == 7.0);
  const EsMaximizerResult r = es_maximizer_check(comon, 0.5);
  CHECK(r.es_additive);

  std::mt19937_64 rng(19);
  int gaps_seen = 0;
  for (int rep = 0; rep < 80; ++rep) {
    const std::size_t m = 4 + rng() % 4;
    const std::size_t j = 1 + rng() % (m - 1);
    const double p = static_cast<double>(j) / static_cast<double>(m);
    auto ax = oracles::distinct_values(rng, m);
    auto ay = oracles::distinct_values(rng, m);
    std::sort(ax.begin(), ax.end());
    std::sort(ay.begin(), ay.end());
    const Coupling c = make_coupling(ax, ay);  // ranks aligned: comonotone
    CHECK(es_maximizer_check(c, p).es_additive);
    const double worst = worst_var_two(ax, ay, p);
    const double attained = coupling_var(c, p);
    CHECK(attained <= worst + 1e-12);
    if (attained < worst - 1e-12) ++gaps_seen;
  }
  CHECK(gaps_seen > 0);
}
