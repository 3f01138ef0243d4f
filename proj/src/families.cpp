#include "smalelab/families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "smalelab/error.hpp"
#include "smalelab/mobius.hpp"

namespace smalelab {

namespace {

void require_degree(int n) {
  if (n < 2) throw Error(ErrorKind::kDomain, "family needs degree n >= 2");
}

void require_parameter(const char* name, double value) {
  if (!(value > 0.0 && value < kFamilyEdge)) {
    throw Error(ErrorKind::kDomain, std::string(name) + " = " + std::to_string(value) +
                                        " is outside the validity range (0, 1 - 1e-6)");
  }
}

// Exact unit roots from angle arithmetic.
Complex unit_root(int k, int d) { return std::polar(1.0, 2.0 * std::numbers::pi * k / d); }

}  // namespace

BlaschkeProduct thm2_family(int n, double alpha) {
  require_degree(n);
  require_parameter("alpha", alpha);
  const int d = n - 1;
  std::vector<Complex> zeros{Complex{}};
  for (int k = 0; k < d; ++k) zeros.push_back(alpha * unit_root(k, d));
  return BlaschkeProduct(0.0, std::move(zeros));
}

double thm2_closed_S(int n, double beta) {
  require_degree(n);
  require_parameter("beta", beta);
  const double d = n - 1.0;
  const double root = std::sqrt((d + 1) * (d + 1) - (d - 1) * (d - 1) * beta * beta);
  const double s = std::sqrt(1.0 - beta * beta);
  return (root - (d + 1) * s) / (root - (d - 1) * s) / (beta * beta);
}

std::vector<Complex> thm2_critical_points(int n, double beta) {
  require_degree(n);
  require_parameter("beta", beta);
  const int d = n - 1;
  const double dd = d;
  const double zeta = ((dd + 1) - (dd - 1) * beta * beta -
                       std::sqrt(((dd + 1) * (dd + 1) - (dd - 1) * (dd - 1) * beta * beta) * (1.0 - beta * beta))) /
                      (2.0 * beta);
  const double radius = std::pow(zeta, 1.0 / d);
  std::vector<Complex> out;
  for (int k = 0; k < d; ++k) out.push_back(radius * unit_root(k, d));
  return out;
}

BlaschkeProduct thm4_family(int n, double a) {
  require_degree(n);
  require_parameter("a", a);
  std::vector<Complex> zeros;
  for (int k = 0; k < n; ++k) zeros.push_back(a * unit_root(k, n));
  const BlaschkeProduct c(0.0, std::move(zeros));
  const BlaschkeProduct composed = compose_pre(c, MobiusAutomorphism::sending_origin_to(Complex(a, 0.0)));
  // M^{-1}(a) = 0 exactly in real arithmetic; pin the rounded zero.
  std::vector<Complex> fixed(composed.zeros().begin(), composed.zeros().end());
  auto nearest = std::min_element(fixed.begin(), fixed.end(),
                                  [](Complex x, Complex y) { return std::abs(x) < std::abs(y); });
  *nearest = Complex{};
  return BlaschkeProduct(composed.rotation(), std::move(fixed));
}

double thm4_closed_T(int n, double a) {
  require_degree(n);
  require_parameter("a", a);
  return (1.0 - std::pow(a, 2 * n)) / (1.0 - a * a) / n;
}

RescalePair rescale_family(std::vector<Complex> poly_zeros, double m) {
  if (poly_zeros.empty()) throw Error(ErrorKind::kDomain, "rescaling needs at least one nonzero zero");
  if (!(m > 0.0)) throw Error(ErrorKind::kDomain, "scale m must be positive");
  std::vector<Complex> zeros{Complex{}};
  for (const Complex& a : poly_zeros) {
    if (a == Complex{}) throw Error(ErrorKind::kVanishingDerivative, "source zeros must be nonzero");
    zeros.push_back(a / m);
  }
  return {m, BlaschkeProduct(0.0, std::move(zeros)), std::move(poly_zeros)};
}

Complex rescaled_polynomial_eval(const RescalePair& pair, Complex z) {
  Complex value = z;
  const double m2 = pair.m * pair.m;
  for (const Complex& a : pair.source_zeros) value *= (z - a) / (1.0 - std::conj(a) * z / m2);
  return value;
}

RescaleQuotients rescale_quotients(const RescalePair& pair, double tol) {
  RescaleQuotients out;
  Complex blaschke_slope = 1.0;  // B_m'(0)
  Complex poly_slope = 1.0;      // f_m'(0)
  for (const Complex& a : pair.source_zeros) {
    blaschke_slope *= -a / pair.m;
    poly_slope *= -a;
  }
  out.blaschke_critical = critical_points(pair.rescaled, tol).expanded();
  for (const Complex& c : out.blaschke_critical) {
    const Complex d = pair.m * c;
    out.polynomial_critical.push_back(d);
    out.blaschke_values.push_back(b_eval(pair.rescaled, c) / (c * blaschke_slope));
    out.polynomial_values.push_back(rescaled_polynomial_eval(pair, d) / (d * poly_slope));
    out.identity_residual =
        std::max(out.identity_residual, std::abs(out.blaschke_values.back() - out.polynomial_values.back()));
  }
  out.limit_values = poly_smale_quotients(pair.source_zeros, tol).values;

  std::vector<double> mags;
  for (const Complex& v : out.blaschke_values) mags.push_back(std::abs(v));
  std::vector<double> limit = out.limit_values;
  std::sort(mags.begin(), mags.end());
  std::sort(limit.begin(), limit.end());
  for (std::size_t i = 0; i < mags.size() && i < limit.size(); ++i) {
    out.limit_distance = std::max(out.limit_distance, std::abs(mags[i] - limit[i]));
  }
  return out;
}

}  // namespace smalelab
