#include "weakcomo/errors.hpp"

namespace weakcomo {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::empty_space: return "EmptySpace";
    case ErrorCode::negative_mass: return "NegativeMass";
    case ErrorCode::zero_total_mass: return "ZeroTotalMass";
    case ErrorCode::null_event: return "NullEvent";
    case ErrorCode::negative_weight: return "NegativeWeight";
    case ErrorCode::degenerate_normalizer: return "DegenerateNormalizer";
    case ErrorCode::space_mismatch: return "SpaceMismatch";
    case ErrorCode::degenerate_tail: return "DegenerateTail";
    case ErrorCode::grid_misaligned: return "GridMisaligned";
    case ErrorCode::tied_values: return "TiedValues";
    case ErrorCode::continuity_surrogate_violated:
      return "ContinuitySurrogateViolated";
    case ErrorCode::partition_infeasible: return "PartitionInfeasible";
    case ErrorCode::degenerate_variance: return "DegenerateVariance";
    case ErrorCode::null_conditioning_atom: return "NullConditioningAtom";
    case ErrorCode::too_large: return "TooLarge";
    case ErrorCode::precondition_violated: return "PreconditionViolated";
    case ErrorCode::quadrature_failure: return "QuadratureFailure";
    case ErrorCode::numerical_inconsistency: return "NumericalInconsistency";
  }
  return "Unknown";
}

int error_code_exit_class(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse_error:
      return 2;
    case ErrorCode::quadrature_failure:
    case ErrorCode::numerical_inconsistency:
      return 4;
    default:
      return 3;
  }
}

}  // namespace weakcomo
