#include "smalelab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smalelab/error.hpp"

namespace smalelab {

ComplexPolynomial::ComplexPolynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

ComplexPolynomial ComplexPolynomial::from_roots(std::span<const Complex> roots, Complex leading) {
  std::vector<Complex> c{leading};
  for (const Complex& r : roots) {
    c.push_back(Complex{});
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
    c[0] = -r * c[0];
  }
  return ComplexPolynomial(std::move(c));
}

void ComplexPolynomial::trim() {
  while (!coeffs_.empty() && std::abs(coeffs_.back()) < kTrimThreshold) coeffs_.pop_back();
}

std::optional<int> ComplexPolynomial::degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return static_cast<int>(coeffs_.size()) - 1;
}

Complex ComplexPolynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return {};
  return coeffs_[static_cast<std::size_t>(k)];
}

double ComplexPolynomial::max_abs_coeff() const {
  double m = 0.0;
  for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Complex ComplexPolynomial::operator()(Complex z) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

ComplexPolynomial operator+(const ComplexPolynomial& a, const ComplexPolynomial& b) {
  std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
  }
  return ComplexPolynomial(std::move(c));
}

ComplexPolynomial operator-(const ComplexPolynomial& a, const ComplexPolynomial& b) {
  return a + Complex(-1.0) * b;
}

ComplexPolynomial operator*(const ComplexPolynomial& a, const ComplexPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Complex> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return ComplexPolynomial(std::move(c));
}

ComplexPolynomial operator*(Complex s, const ComplexPolynomial& p) {
  std::vector<Complex> c(p.coeffs_.begin(), p.coeffs_.end());
  for (Complex& x : c) x *= s;
  return ComplexPolynomial(std::move(c));
}

Complex poly_eval(const ComplexPolynomial& p, Complex z) { return p(z); }

ComplexPolynomial poly_derivative(const ComplexPolynomial& p) {
  const auto c = p.coeffs();
  if (c.size() <= 1) return {};
  std::vector<Complex> d(c.size() - 1);
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = static_cast<double>(k + 1) * c[k + 1];
  return ComplexPolynomial(std::move(d));
}

ComplexPolynomial conjugate_reciprocal(const ComplexPolynomial& p, int n) {
  if (n < 0 || (p.degree() && *p.degree() > n)) {
    throw Error(ErrorKind::kInvalidDegree,
                "formal degree " + std::to_string(n) + " is below the polynomial degree " +
                    std::to_string(p.degree().value_or(0)));
  }
  std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = std::conj(p.coeff(n - k));
  return ComplexPolynomial(std::move(c));
}

std::vector<Complex> taylor_coefficients(const ComplexPolynomial& p, Complex center) {
  std::vector<Complex> c(p.coeffs().begin(), p.coeffs().end());
  const std::size_t n = c.size();
  // Repeated synthetic division by (z - center).
  for (std::size_t j = 0; j + 1 < n; ++j) {
    for (std::size_t k = n - 1; k > j; --k) c[k - 1] += center * c[k];
  }
  return c;
}

double relative_residual(const ComplexPolynomial& p, Complex z) {
  const auto c = p.coeffs();
  if (c.empty()) return 0.0;
  Complex value{};
  double scale = 0.0;
  if (std::abs(z) <= 1.0) {
    const double r = std::abs(z);
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      value = value * z + *it;
      scale = scale * r + std::abs(*it);
    }
  } else {
    const Complex w = 1.0 / z;
    const double r = std::abs(w);
    for (const Complex& a : c) {
      value = value * w + a;
      scale = scale * r + std::abs(a);
    }
  }
  return scale > 0.0 ? std::abs(value) / scale : 0.0;
}

}  // namespace smalelab
