#pragma once

#include <vector>

#include "smalelab/blaschke.hpp"
#include "smalelab/roots.hpp"

namespace smalelab {

/// N = P' P* - P (P*)', formal degree 2n - 2, with B' = e^{i rotation} N / (P*)^2.
ComplexPolynomial derivative_numerator(const BlaschkeProduct& b);

struct CriticalPoint {
  Complex location;
  int multiplicity = 1;
  double residual = 0.0;
};

struct CriticalSet {
  std::vector<CriticalPoint> interior;
  bool exterior_checked = false;
  int infinity_deficiency = 0;
  /// Largest mismatch between the reflected exterior roots and the interior
  /// critical points (infinite when the counts disagree).
  double reflection_error = 0.0;

  int total_multiplicity() const;
  std::vector<Complex> expanded() const;
};

inline constexpr double kReflectionTolerance = 1e-8;
inline constexpr double kBoundaryBand = 1e-8;

/// The n - 1 critical points of B in the disk.
///
/// Roots of the derivative numerator are split at the unit circle; roots in
/// the 1e-8 band around it get Newton refinement on B'/B before being
/// classified, otherwise kBoundaryAmbiguity. Simple interior roots receive a
/// polishing pass on B'/B with compensated summation. kConditioningFailure is
/// raised when the interior multiplicity is not n - 1.
CriticalSet critical_points(const BlaschkeProduct& b, double tol = 1e-12);

/// The n solutions of B(z) = w in the disk, repeated by multiplicity.
std::vector<Complex> preimages(const BlaschkeProduct& b, Complex w, double tol = 1e-12);

/// The constant a in B'(z) = e^{i rotation} a C(z) R(z)^2, where C is the
/// Blaschke product on the critical points and R = Q* / P*.
Complex derivative_scale(const BlaschkeProduct& b, const CriticalSet& crit);

}  // namespace smalelab
