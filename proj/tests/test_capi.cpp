#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include <json.hpp>

#include "weakcomo.h"

namespace {

struct SpaceGuard {
  wcm_space* ptr = nullptr;
  ~SpaceGuard() { wcm_space_destroy(ptr); }
};
struct RvGuard {
  wcm_rv* ptr = nullptr;
  ~RvGuard() { wcm_rv_destroy(ptr); }
};

}  // namespace

TEST_CASE("space and rv lifecycle") {
  const double probs[] = {1.0, 1.0, 1.0, 1.0, 1.0};
  SpaceGuard space;
  REQUIRE(wcm_space_create(probs, 5, &space.ptr) == WCM_OK);
  CHECK(wcm_space_atom_count(space.ptr) == 5);
  double p = 0.0;
  REQUIRE(wcm_space_prob(space.ptr, 2, &p) == WCM_OK);
  CHECK(p == doctest::Approx(0.2));
  CHECK(wcm_space_prob(space.ptr, 9, &p) == WCM_ERR_INVALID_ARGUMENT);

  const double values[] = {1, 2, 3, 4, 5};
  RvGuard rv;
  REQUIRE(wcm_rv_create(space.ptr, values, 5, &rv.ptr) == WCM_OK);

  double out = 0.0;
  CHECK(wcm_var(rv.ptr, 0.6, &out) == WCM_OK);
  CHECK(out == 4.0);
  CHECK(wcm_es(rv.ptr, 0.6, &out) == WCM_OK);
  CHECK(out == doctest::Approx(4.5));
  CHECK(wcm_left_q(rv.ptr, 0.4, &out) == WCM_OK);
  CHECK(out == 3.0);

  int aligned = 0;
  CHECK(wcm_grid_aligned(space.ptr, 0.6, &aligned) == WCM_OK);
  CHECK(aligned == 1);
  CHECK(wcm_grid_aligned(space.ptr, 0.55, &aligned) == WCM_OK);
  CHECK(aligned == 0);
}

TEST_CASE("error codes and messages surface through the boundary") {
  SpaceGuard space;
  const double bad[] = {0.0, 0.0};
  CHECK(wcm_space_create(bad, 2, &space.ptr) == WCM_ERR_ZERO_TOTAL_MASS);
  CHECK(std::strlen(wcm_last_error()) > 0);
  CHECK(wcm_space_create(nullptr, 2, &space.ptr) == WCM_ERR_INVALID_ARGUMENT);

  const double probs[] = {1.0, 1.0};
  REQUIRE(wcm_space_create(probs, 2, &space.ptr) == WCM_OK);
  RvGuard rv;
  const double values[] = {1.0, 2.0, 3.0};
  CHECK(wcm_rv_create(space.ptr, values, 3, &rv.ptr) ==
        WCM_ERR_SPACE_MISMATCH);

  RvGuard ok;
  REQUIRE(wcm_rv_create(space.ptr, values, 2, &ok.ptr) == WCM_OK);
  double out = 0.0;
  CHECK(wcm_var(ok.ptr, 1.5, &out) == WCM_ERR_INVALID_ARGUMENT);

  CHECK(wcm_status_exit_class(WCM_OK) == 0);
  CHECK(wcm_status_exit_class(WCM_ERR_PARSE) == 2);
  CHECK(wcm_status_exit_class(WCM_ERR_GRID_MISALIGNED) == 3);
  CHECK(wcm_status_exit_class(WCM_ERR_NUMERICAL) == 4);
  CHECK(std::string(wcm_status_name(WCM_ERR_TIED_VALUES)) == "TiedValues");
}

TEST_CASE("weak comonotonicity checks through the C surface") {
  const double probs[] = {1, 1, 1, 1};
  SpaceGuard space;
  REQUIRE(wcm_space_create(probs, 4, &space.ptr) == WCM_OK);
  const double xs[] = {1, 2, 3, 4};
  const double ys[] = {2, 4, 6, 8};
  const double zs[] = {4, 3, 2, 1};
  RvGuard x, y, z;
  REQUIRE(wcm_rv_create(space.ptr, xs, 4, &x.ptr) == WCM_OK);
  REQUIRE(wcm_rv_create(space.ptr, ys, 4, &y.ptr) == WCM_OK);
  REQUIRE(wcm_rv_create(space.ptr, zs, 4, &z.ptr) == WCM_OK);

  double value = 0.0;
  REQUIRE(wcm_wc_rv(x.ptr, y.ptr, space.ptr, space.ptr, &value) == WCM_OK);
  CHECK(value > 0.0);
  REQUIRE(wcm_wc_rv(x.ptr, z.ptr, space.ptr, space.ptr, &value) == WCM_OK);
  CHECK(value < 0.0);

  int com = 0, anti = 0, inj = 0;
  REQUIRE(wcm_strong_check(x.ptr, y.ptr, &com, &anti, &inj) == WCM_OK);
  CHECK(com == 1);
  CHECK(anti == 0);
  CHECK(inj == 1);

  const size_t atoms[] = {1, 2, 3};
  double corr = 0.0;
  REQUIRE(wcm_cond_corr(x.ptr, y.ptr, atoms, 3, &corr) == WCM_OK);
  CHECK(corr == doctest::Approx(1.0));

  int up = 0;
  REQUIRE(wcm_up_beta_check(y.ptr, x.ptr, 0.5, &up) == WCM_OK);
  CHECK(up == 1);
  REQUIRE(wcm_up_beta_check(z.ptr, x.ptr, 0.5, &up) == WCM_OK);
  CHECK(up == 0);
}

TEST_CASE("aggregation through the C surface") {
  const double fx[] = {1, 2, 3, 4};
  double out = 0.0;
  REQUIRE(wcm_worst_var_two(fx, fx, 4, 0.5, &out) == WCM_OK);
  CHECK(out == 7.0);
  REQUIRE(wcm_worst_es_two(fx, fx, 4, 0.5, &out) == WCM_OK);
  CHECK(out == 7.0);  // 3.5 + 3.5
  CHECK(wcm_worst_var_two(fx, fx, 4, 0.3, &out) == WCM_ERR_GRID_MISALIGNED);

  double cx[4] = {0}, cy[4] = {0};
  REQUIRE(wcm_build_worst_coupling(fx, fx, 4, 0.5, cx, cy) == WCM_OK);
  CHECK(cx[2] == 3.0);
  CHECK(cy[2] == 4.0);
  CHECK(cy[3] == 3.0);
}

TEST_CASE("risk sharing through the C surface") {
  double gamma = 0.0;
  const double alphas[] = {0.05, 0.10};
  REQUIRE(wcm_sharing_gamma(alphas, 2, 0.03, &gamma) == WCM_OK);
  CHECK(gamma == doctest::Approx(0.12));

  std::vector<double> x(20);
  for (std::size_t i = 0; i < 20; ++i) x[i] = static_cast<double>(i + 1);
  std::vector<double> parts(2 * 20, 0.0);
  double objective = 0.0;
  REQUIRE(wcm_sharing_solve(x.data(), 20, alphas, 2, 0.05, parts.data(),
                            &objective) == WCM_OK);
  CHECK(objective == doctest::Approx(18.0));
  for (std::size_t atom = 0; atom < 20; ++atom)
    CHECK(parts[atom] + parts[20 + atom] >= x[atom] - 1e-9);

  CHECK(wcm_sharing_solve(x.data(), 20, alphas, 2, 0.013, parts.data(),
                          &objective) == WCM_ERR_CONTINUITY_SURROGATE);
}

TEST_CASE("command layer round trip") {
  const std::string cfg =
      R"({"fx": [1, 2, 3, 4], "fy": [1, 2, 3, 4], "p": 0.5})";
  char* report = nullptr;
  REQUIRE(wcm_run_command("aggregate", cfg.c_str(), &report) == WCM_OK);
  REQUIRE(report != nullptr);
  const auto parsed = nlohmann::json::parse(report);
  CHECK(parsed.at("worst_var").get<double>() == 7.0);
  CHECK(parsed.at("oracle").at("agrees").get<bool>());
  wcm_string_free(report);

  report = nullptr;
  CHECK(wcm_run_command("aggregate", "{not json", &report) == WCM_ERR_PARSE);
  REQUIRE(report != nullptr);
  CHECK(nlohmann::json::parse(report).contains("error"));
  wcm_string_free(report);

  report = nullptr;
  CHECK(wcm_run_command("nope", "{}", &report) == WCM_ERR_PARSE);
  wcm_string_free(report);
}
