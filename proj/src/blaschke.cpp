#include "smalelab/blaschke.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "smalelab/error.hpp"

namespace smalelab {

namespace {

constexpr double kPoleGuard = 1e-14;

double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(a, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r -= two_pi;
  return r;
}

}  // namespace

BlaschkeProduct::BlaschkeProduct(double rotation, std::vector<Complex> zeros)
    : rotation_(wrap_angle(rotation)), zeros_(std::move(zeros)) {
  if (zeros_.empty()) throw Error(ErrorKind::kDomain, "a Blaschke product needs at least one zero");
  if (!std::isfinite(rotation)) throw Error(ErrorKind::kDomain, "rotation must be finite");
  for (std::size_t k = 0; k < zeros_.size(); ++k) {
    const Complex& z = zeros_[k];
    if (!(std::abs(z) <= 1.0 - kZeroGuard)) {
      std::ostringstream os;
      os.precision(17);
      os << "zero #" << k << " (" << z.real() << ", " << z.imag() << ") has modulus "
         << std::abs(z) << ", outside the disk |z| <= 1 - 1e-12";
      throw Error(ErrorKind::kInvalidZero, os.str());
    }
  }
  std::sort(zeros_.begin(), zeros_.end(), [](Complex a, Complex b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma < mb;
    return std::arg(a) < std::arg(b);
  });
}

int BlaschkeProduct::origin_multiplicity() const {
  return static_cast<int>(std::count(zeros_.begin(), zeros_.end(), Complex{}));
}

ComplexPolynomial BlaschkeProduct::numerator() const { return ComplexPolynomial::from_roots(zeros_); }

ComplexPolynomial BlaschkeProduct::denominator() const {
  return conjugate_reciprocal(numerator(), degree());
}

BlaschkeProduct make_blaschke(double rotation, std::vector<Complex> zeros) {
  return {rotation, std::move(zeros)};
}

Complex b_eval(const BlaschkeProduct& b, Complex z) {
  Complex value = b.phase();
  for (const Complex& zk : b.zeros()) {
    const Complex den = 1.0 - std::conj(zk) * z;
    if (std::abs(den) <= kPoleGuard) {
      throw Error(ErrorKind::kPoleEvaluation, "evaluation point is at a pole");
    }
    value *= (z - zk) / den;
  }
  return value;
}

Complex b_derivative(const BlaschkeProduct& b, Complex z) {
  const auto zeros = b.zeros();
  const std::size_t n = zeros.size();
  std::vector<Complex> factor(n), factor_prime(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex den = 1.0 - std::conj(zeros[k]) * z;
    if (std::abs(den) <= kPoleGuard) {
      throw Error(ErrorKind::kPoleEvaluation, "evaluation point is at a pole");
    }
    factor[k] = (z - zeros[k]) / den;
    factor_prime[k] = (1.0 - std::norm(zeros[k])) / (den * den);
  }
  // Prefix/suffix products avoid dividing by a vanishing factor.
  std::vector<Complex> prefix(n + 1, 1.0), suffix(n + 1, 1.0);
  for (std::size_t k = 0; k < n; ++k) prefix[k + 1] = prefix[k] * factor[k];
  for (std::size_t k = n; k > 0; --k) suffix[k - 1] = suffix[k] * factor[k - 1];
  Complex sum{};
  for (std::size_t k = 0; k < n; ++k) sum += factor_prime[k] * prefix[k] * suffix[k + 1];
  return b.phase() * sum;
}

Complex derivative_at_origin(const BlaschkeProduct& b) {
  if (b.origin_multiplicity() != 1) return {};
  Complex value = b.phase();
  for (const Complex& zk : b.zeros()) {
    if (zk != Complex{}) value *= -zk;
  }
  return value;
}

Complex pseudo_hyperbolic(Complex z, Complex w) { return (z - w) / (1.0 - std::conj(w) * z); }

Complex hyperbolic_derivative(const BlaschkeProduct& b, Complex w) {
  const Complex value = b_eval(b, w);
  return b_derivative(b, w) * (1.0 - std::norm(w)) / (1.0 - std::norm(value));
}

double boundary_modulus_check(const BlaschkeProduct& b, int sample_count) {
  if (sample_count < 1) throw Error(ErrorKind::kDomain, "sample_count must be >= 1");
  double worst = 0.0;
  for (int i = 0; i < sample_count; ++i) {
    const double t = 2.0 * std::numbers::pi * i / sample_count;
    worst = std::max(worst, std::abs(std::abs(b_eval(b, std::polar(1.0, t))) - 1.0));
  }
  return worst;
}

}  // namespace smalelab
