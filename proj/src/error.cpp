#include "smalelab/error.hpp"

namespace smalelab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidDegree: return "invalid-degree";
    case ErrorKind::kConvergenceFailure: return "convergence-failure";
    case ErrorKind::kInvalidZero: return "invalid-zero";
    case ErrorKind::kPoleEvaluation: return "pole-evaluation";
    case ErrorKind::kConditioningFailure: return "conditioning-failure";
    case ErrorKind::kBoundaryAmbiguity: return "boundary-ambiguity";
    case ErrorKind::kDegenerateNormalization: return "degenerate-normalization";
    case ErrorKind::kNotNormalized: return "not-normalized";
    case ErrorKind::kVanishingDerivative: return "vanishing-derivative";
    case ErrorKind::kNoCriticalPoints: return "no-critical-points";
    case ErrorKind::kDegenerateQuotient: return "degenerate-quotient";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kSearchFailure: return "search-failure";
  }
  return "unknown";
}

bool is_domain_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConvergenceFailure:
    case ErrorKind::kConditioningFailure:
    case ErrorKind::kBoundaryAmbiguity:
    case ErrorKind::kSearchFailure:
      return false;
    default:
      return true;
  }
}

}  // namespace smalelab
