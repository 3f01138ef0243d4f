#pragma once

#include <complex>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace smalelab {

using Complex = std::complex<double>;

// Coefficients below this magnitude at the top end are dropped; the degree
// lost that way is a root at infinity, tracked by callers via a formal degree.
inline constexpr double kTrimThreshold = 1e-300;

/// Dense polynomial over the complex numbers, coefficient k multiplies z^k.
class ComplexPolynomial {
 public:
  ComplexPolynomial() = default;
  explicit ComplexPolynomial(std::vector<Complex> coeffs);
  ComplexPolynomial(std::initializer_list<Complex> coeffs)
      : ComplexPolynomial(std::vector<Complex>(coeffs)) {}

  /// Monic polynomial prod (z - r) times `leading`.
  static ComplexPolynomial from_roots(std::span<const Complex> roots, Complex leading = 1.0);

  /// Empty for the zero polynomial.
  std::optional<int> degree() const;
  bool is_zero() const { return coeffs_.empty(); }

  std::span<const Complex> coeffs() const { return coeffs_; }
  Complex coeff(int k) const;
  Complex leading() const { return coeffs_.empty() ? Complex{} : coeffs_.back(); }
  double max_abs_coeff() const;

  Complex operator()(Complex z) const;

  friend ComplexPolynomial operator+(const ComplexPolynomial& a, const ComplexPolynomial& b);
  friend ComplexPolynomial operator-(const ComplexPolynomial& a, const ComplexPolynomial& b);
  friend ComplexPolynomial operator*(const ComplexPolynomial& a, const ComplexPolynomial& b);
  friend ComplexPolynomial operator*(Complex s, const ComplexPolynomial& p);
  friend bool operator==(const ComplexPolynomial&, const ComplexPolynomial&) = default;

 private:
  void trim();

  std::vector<Complex> coeffs_;
};

Complex poly_eval(const ComplexPolynomial& p, Complex z);

ComplexPolynomial poly_derivative(const ComplexPolynomial& p);

/// z^n conj(p(1/conj z)); coefficient k of the result is conj(coeff_{n-k}).
/// Throws kInvalidDegree when n < degree(p).
ComplexPolynomial conjugate_reciprocal(const ComplexPolynomial& p, int n);

/// Coefficients of p(center + t) in powers of t.
std::vector<Complex> taylor_coefficients(const ComplexPolynomial& p, Complex center);

/// Backward error |p(z)| / sum |a_k| |z|^k, evaluated in the reversed basis
/// outside the unit disk so large roots do not overflow.
double relative_residual(const ComplexPolynomial& p, Complex z);

}  // namespace smalelab
