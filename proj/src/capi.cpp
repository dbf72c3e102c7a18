#include "weakcomo.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "weakcomo/aggregation.hpp"
#include "weakcomo/commands.hpp"
#include "weakcomo/prob_core.hpp"
#include "weakcomo/risk_measures.hpp"
#include "weakcomo/risk_sharing.hpp"
#include "weakcomo/weak_comon.hpp"

using namespace weakcomo;

struct wcm_space {
  SpacePtr impl;
};
struct wcm_rv {
  RandomVariable impl;
};

namespace {

thread_local std::string g_last_error;

wcm_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse_error: return WCM_ERR_PARSE;
    case ErrorCode::invalid_argument: return WCM_ERR_INVALID_ARGUMENT;
    case ErrorCode::empty_space: return WCM_ERR_EMPTY_SPACE;
    case ErrorCode::negative_mass: return WCM_ERR_NEGATIVE_MASS;
    case ErrorCode::zero_total_mass: return WCM_ERR_ZERO_TOTAL_MASS;
    case ErrorCode::null_event: return WCM_ERR_NULL_EVENT;
    case ErrorCode::negative_weight: return WCM_ERR_NEGATIVE_WEIGHT;
    case ErrorCode::degenerate_normalizer: return WCM_ERR_DEGENERATE_NORMALIZER;
    case ErrorCode::space_mismatch: return WCM_ERR_SPACE_MISMATCH;
    case ErrorCode::degenerate_tail: return WCM_ERR_DEGENERATE_TAIL;
    case ErrorCode::grid_misaligned: return WCM_ERR_GRID_MISALIGNED;
    case ErrorCode::tied_values: return WCM_ERR_TIED_VALUES;
    case ErrorCode::continuity_surrogate_violated:
      return WCM_ERR_CONTINUITY_SURROGATE;
    case ErrorCode::partition_infeasible: return WCM_ERR_PARTITION_INFEASIBLE;
    case ErrorCode::degenerate_variance: return WCM_ERR_DEGENERATE_VARIANCE;
    case ErrorCode::null_conditioning_atom:
      return WCM_ERR_NULL_CONDITIONING_ATOM;
    case ErrorCode::too_large: return WCM_ERR_TOO_LARGE;
    case ErrorCode::precondition_violated: return WCM_ERR_PRECONDITION;
    case ErrorCode::quadrature_failure: return WCM_ERR_QUADRATURE;
    case ErrorCode::numerical_inconsistency: return WCM_ERR_NUMERICAL;
  }
  return WCM_ERR_INTERNAL;
}

template <typename Fn>
wcm_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return WCM_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return WCM_ERR_INTERNAL;
  }
}

wcm_status require(bool condition, const char* message) {
  if (condition) return WCM_OK;
  g_last_error = message;
  return WCM_ERR_INVALID_ARGUMENT;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* wcm_version(void) { return kToolVersion; }

const char* wcm_status_name(wcm_status status) {
  switch (status) {
    case WCM_OK: return "OK";
    case WCM_ERR_PARSE: return "ParseError";
    case WCM_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case WCM_ERR_EMPTY_SPACE: return "EmptySpace";
    case WCM_ERR_NEGATIVE_MASS: return "NegativeMass";
    case WCM_ERR_ZERO_TOTAL_MASS: return "ZeroTotalMass";
    case WCM_ERR_NULL_EVENT: return "NullEvent";
    case WCM_ERR_NEGATIVE_WEIGHT: return "NegativeWeight";
    case WCM_ERR_DEGENERATE_NORMALIZER: return "DegenerateNormalizer";
    case WCM_ERR_SPACE_MISMATCH: return "SpaceMismatch";
    case WCM_ERR_DEGENERATE_TAIL: return "DegenerateTail";
    case WCM_ERR_GRID_MISALIGNED: return "GridMisaligned";
    case WCM_ERR_TIED_VALUES: return "TiedValues";
    case WCM_ERR_CONTINUITY_SURROGATE: return "ContinuitySurrogateViolated";
    case WCM_ERR_PARTITION_INFEASIBLE: return "PartitionInfeasible";
    case WCM_ERR_DEGENERATE_VARIANCE: return "DegenerateVariance";
    case WCM_ERR_NULL_CONDITIONING_ATOM: return "NullConditioningAtom";
    case WCM_ERR_TOO_LARGE: return "TooLarge";
    case WCM_ERR_PRECONDITION: return "PreconditionViolated";
    case WCM_ERR_QUADRATURE: return "QuadratureFailure";
    case WCM_ERR_NUMERICAL: return "NumericalInconsistency";
    case WCM_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

int wcm_status_exit_class(wcm_status status) {
  switch (status) {
    case WCM_OK: return 0;
    case WCM_ERR_PARSE: return 2;
    case WCM_ERR_QUADRATURE:
    case WCM_ERR_NUMERICAL:
    case WCM_ERR_INTERNAL: return 4;
    default: return 3;
  }
}

const char* wcm_last_error(void) { return g_last_error.c_str(); }

wcm_status wcm_space_create(const double* probs, size_t count,
                            wcm_space** out) {
  if (auto rc = require(probs != nullptr && out != nullptr,
                        "wcm_space_create: null argument"))
    return rc;
  return guarded([&] {
    *out = new wcm_space{make_space(std::vector<double>(probs, probs + count))};
  });
}

void wcm_space_destroy(wcm_space* space) { delete space; }

size_t wcm_space_atom_count(const wcm_space* space) {
  return space != nullptr ? space->impl->atom_count() : 0;
}

wcm_status wcm_space_prob(const wcm_space* space, size_t atom, double* out) {
  if (auto rc = require(space != nullptr && out != nullptr,
                        "wcm_space_prob: null argument"))
    return rc;
  if (auto rc = require(atom < space->impl->atom_count(),
                        "wcm_space_prob: atom out of range"))
    return rc;
  *out = space->impl->prob(atom);
  return WCM_OK;
}

wcm_status wcm_rv_create(const wcm_space* space, const double* values,
                         size_t count, wcm_rv** out) {
  if (auto rc = require(space != nullptr && values != nullptr && out != nullptr,
                        "wcm_rv_create: null argument"))
    return rc;
  return guarded([&] {
    *out = new wcm_rv{RandomVariable(
        space->impl, std::vector<double>(values, values + count))};
  });
}

void wcm_rv_destroy(wcm_rv* rv) { delete rv; }

wcm_status wcm_var(const wcm_rv* x, double p, double* out) {
  if (auto rc = require(x != nullptr && out != nullptr, "wcm_var: null argument"))
    return rc;
  return guarded([&] { *out = var(x->impl, p); });
}

wcm_status wcm_es(const wcm_rv* x, double p, double* out) {
  if (auto rc = require(x != nullptr && out != nullptr, "wcm_es: null argument"))
    return rc;
  return guarded([&] { *out = es(x->impl, p); });
}

wcm_status wcm_left_q(const wcm_rv* x, double alpha, double* out) {
  if (auto rc =
          require(x != nullptr && out != nullptr, "wcm_left_q: null argument"))
    return rc;
  return guarded([&] { *out = left_q(x->impl, alpha); });
}

wcm_status wcm_grid_aligned(const wcm_space* space, double level, int* out) {
  if (auto rc = require(space != nullptr && out != nullptr,
                        "wcm_grid_aligned: null argument"))
    return rc;
  return guarded([&] { *out = grid_aligned(level, *space->impl) ? 1 : 0; });
}

wcm_status wcm_wc_rv(const wcm_rv* x, const wcm_rv* y, const wcm_space* pi1,
                     const wcm_space* pi2, double* value) {
  if (auto rc = require(x != nullptr && y != nullptr && pi1 != nullptr &&
                            pi2 != nullptr && value != nullptr,
                        "wcm_wc_rv: null argument"))
    return rc;
  return guarded(
      [&] { *value = wc_rv(x->impl, y->impl, *pi1->impl, *pi2->impl).value; });
}

wcm_status wcm_strong_check(const wcm_rv* x, const wcm_rv* y, int* comonotonic,
                            int* antimonotonic, int* injective_pair) {
  if (auto rc = require(x != nullptr && y != nullptr && comonotonic != nullptr &&
                            antimonotonic != nullptr &&
                            injective_pair != nullptr,
                        "wcm_strong_check: null argument"))
    return rc;
  return guarded([&] {
    const StrongCheckResult r = strong_check(x->impl, y->impl);
    *comonotonic = r.comonotonic ? 1 : 0;
    *antimonotonic = r.antimonotonic ? 1 : 0;
    *injective_pair = r.injective_pair ? 1 : 0;
  });
}

wcm_status wcm_cond_corr(const wcm_rv* x, const wcm_rv* y, const size_t* atoms,
                         size_t count, double* out) {
  if (auto rc = require(x != nullptr && y != nullptr && atoms != nullptr &&
                            out != nullptr,
                        "wcm_cond_corr: null argument"))
    return rc;
  return guarded([&] {
    Event event(x->impl.size(),
                std::vector<std::size_t>(atoms, atoms + count));
    *out = cond_corr(x->impl, y->impl, event);
  });
}

wcm_status wcm_up_beta_check(const wcm_rv* y, const wcm_rv* z, double beta,
                             int* out) {
  if (auto rc = require(y != nullptr && z != nullptr && out != nullptr,
                        "wcm_up_beta_check: null argument"))
    return rc;
  return guarded([&] { *out = up_beta_check(y->impl, z->impl, beta) ? 1 : 0; });
}

wcm_status wcm_worst_var_two(const double* fx, const double* fy, size_t m,
                             double p, double* out) {
  if (auto rc = require(fx != nullptr && fy != nullptr && out != nullptr,
                        "wcm_worst_var_two: null argument"))
    return rc;
  return guarded([&] {
    *out = worst_var_two(std::vector<double>(fx, fx + m),
                         std::vector<double>(fy, fy + m), p);
  });
}

wcm_status wcm_worst_es_two(const double* fx, const double* fy, size_t m,
                            double p, double* out) {
  if (auto rc = require(fx != nullptr && fy != nullptr && out != nullptr,
                        "wcm_worst_es_two: null argument"))
    return rc;
  return guarded([&] {
    *out = worst_es_two(std::vector<double>(fx, fx + m),
                        std::vector<double>(fy, fy + m), p);
  });
}

wcm_status wcm_build_worst_coupling(const double* fx, const double* fy,
                                    size_t m, double p, double* x_out,
                                    double* y_out) {
  if (auto rc = require(fx != nullptr && fy != nullptr && x_out != nullptr &&
                            y_out != nullptr,
                        "wcm_build_worst_coupling: null argument"))
    return rc;
  return guarded([&] {
    const Coupling c = build_worst_coupling(std::vector<double>(fx, fx + m),
                                            std::vector<double>(fy, fy + m), p);
    for (size_t i = 0; i < m; ++i) {
      x_out[i] = c.x.value(i);
      y_out[i] = c.y.value(i);
    }
  });
}

wcm_status wcm_sharing_gamma(const double* alphas, size_t n, double beta,
                             double* out) {
  if (auto rc = require(alphas != nullptr && out != nullptr,
                        "wcm_sharing_gamma: null argument"))
    return rc;
  return guarded(
      [&] { *out = gamma_of(std::vector<double>(alphas, alphas + n), beta); });
}

wcm_status wcm_sharing_solve(const double* x_values, size_t m,
                             const double* alphas, size_t n, double beta,
                             double* parts_out, double* objective_out) {
  if (auto rc = require(x_values != nullptr && alphas != nullptr &&
                            parts_out != nullptr && objective_out != nullptr,
                        "wcm_sharing_solve: null argument"))
    return rc;
  return guarded([&] {
    SpacePtr space = make_space(std::vector<double>(m, 1.0));
    RandomVariable x(space, std::vector<double>(x_values, x_values + m));
    const SharingProblem prob = make_sharing_problem(
        std::move(x), std::vector<double>(alphas, alphas + n), beta);
    const Allocation allocation = solve(prob);
    for (size_t i = 0; i < n; ++i)
      for (size_t atom = 0; atom < m; ++atom)
        parts_out[i * m + atom] = allocation.parts[i].value(atom);
    *objective_out = allocation.certificates.objective;
  });
}

wcm_status wcm_run_command(const char* command, const char* config_json,
                           char** report_json) {
  if (auto rc = require(command != nullptr && config_json != nullptr &&
                            report_json != nullptr,
                        "wcm_run_command: null argument"))
    return rc;
  const CommandResult result = run_command(command, config_json);
  *report_json = copy_string(result.report_json);
  if (*report_json == nullptr) {
    g_last_error = "wcm_run_command: out of memory";
    return WCM_ERR_INTERNAL;
  }
  switch (result.exit_code) {
    case 0: return WCM_OK;
    case 2: return WCM_ERR_PARSE;
    case 3: return WCM_ERR_PRECONDITION;
    default: return WCM_ERR_NUMERICAL;
  }
}

void wcm_string_free(char* text) { std::free(text); }

}  // extern "C"
