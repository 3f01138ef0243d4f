#pragma once

#include <span>
#include <vector>

#include "smalelab/polynomial.hpp"

namespace smalelab {

// Zeros must satisfy |z| <= 1 - kZeroGuard.
inline constexpr double kZeroGuard = 1e-12;

/// e^{i rotation} prod (z - z_k) / (1 - conj(z_k) z), stored as rotation and
/// zeros so that evaluation never goes through expanded coefficients.
class BlaschkeProduct {
 public:
  /// Throws kInvalidZero for a zero outside the guard disk and kDomain for an
  /// empty zero list. Zeros are kept sorted by (modulus, argument).
  BlaschkeProduct(double rotation, std::vector<Complex> zeros);

  double rotation() const { return rotation_; }
  Complex phase() const { return std::polar(1.0, rotation_); }
  std::span<const Complex> zeros() const { return zeros_; }
  int degree() const { return static_cast<int>(zeros_.size()); }

  /// Number of zeros exactly at the origin. A value >= 2 is accepted here but
  /// puts the product outside the normalized class (B'(0) = 0).
  int origin_multiplicity() const;

  /// P(z) = prod (z - z_k).
  ComplexPolynomial numerator() const;
  /// P*(z) = prod (1 - conj(z_k) z).
  ComplexPolynomial denominator() const;

  BlaschkeProduct with_rotation(double rotation) const { return {rotation, zeros_}; }

 private:
  double rotation_;
  std::vector<Complex> zeros_;
};

BlaschkeProduct make_blaschke(double rotation, std::vector<Complex> zeros);

/// Factorwise evaluation; throws kPoleEvaluation within 1e-14 of a pole.
Complex b_eval(const BlaschkeProduct& b, Complex z);

/// B'(z) by the product rule over the factors.
Complex b_derivative(const BlaschkeProduct& b, Complex z);

/// B'(0) as e^{i rotation} prod(-z_k) over the nonzero zeros, assuming a
/// simple zero at the origin; returns 0 otherwise.
Complex derivative_at_origin(const BlaschkeProduct& b);

/// Complex pseudo-hyperbolic distance [z, w] = (z - w) / (1 - conj(w) z).
Complex pseudo_hyperbolic(Complex z, Complex w);

/// B'(w) (1 - |w|^2) / (1 - |B(w)|^2).
Complex hyperbolic_derivative(const BlaschkeProduct& b, Complex w);

/// Largest | |B(e^{i t})| - 1 | over equispaced boundary samples.
double boundary_modulus_check(const BlaschkeProduct& b, int sample_count);

}  // namespace smalelab
