#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace smalelab {

enum class ErrorKind {
  kInvalidDegree,
  kConvergenceFailure,
  kInvalidZero,
  kPoleEvaluation,
  kConditioningFailure,
  kBoundaryAmbiguity,
  kDegenerateNormalization,
  kNotNormalized,
  kVanishingDerivative,
  kNoCriticalPoints,
  kDegenerateQuotient,
  kDomain,
  kSearchFailure,
};

std::string_view to_string(ErrorKind kind);

// Domain errors are caused by the caller's input; the rest signal that the
// numerics could not certify a result.
bool is_domain_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace smalelab
