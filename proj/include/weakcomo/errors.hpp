#pragma once

#include <stdexcept>
#include <string>

namespace weakcomo {

enum class ErrorCode {
  // input / parsing
  parse_error,
  invalid_argument,
  // construction and precondition failures
  empty_space,
  negative_mass,
  zero_total_mass,
  null_event,
  negative_weight,
  degenerate_normalizer,
  space_mismatch,
  degenerate_tail,
  grid_misaligned,
  tied_values,
  continuity_surrogate_violated,
  partition_infeasible,
  degenerate_variance,
  null_conditioning_atom,
  too_large,
  precondition_violated,
  // numerical consistency
  quadrature_failure,
  numerical_inconsistency,
};

const char* error_code_name(ErrorCode code);

// Exit-code class used by the CLI: 2 = input/parse, 3 = precondition/grid,
// 4 = numerical-consistency failure.
int error_code_exit_class(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace weakcomo
