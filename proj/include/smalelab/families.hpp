#pragma once

#include <vector>

#include "smalelab/blaschke.hpp"
#include "smalelab/critical.hpp"

namespace smalelab {

// Family parameters must lie in the open interval (0, kFamilyEdge).
inline constexpr double kFamilyEdge = 1.0 - 1e-6;

/// z (z^d - alpha^d) / (1 - alpha^d z^d) with d = n - 1: zeros 0 and
/// alpha times the d-th roots of unity.
BlaschkeProduct thm2_family(int n, double alpha);

/// Closed-form S of the d-th roots family in terms of beta = alpha^d.
double thm2_closed_S(int n, double beta);

/// Closed-form critical points: the d-th roots of
/// ((d+1) - (d-1) beta^2 - sqrt(((d+1)^2 - (d-1)^2 beta^2)(1 - beta^2))) / (2 beta).
std::vector<Complex> thm2_critical_points(int n, double beta);

/// C o M with C(z) = (z^n - a^n) / (1 - a^n z^n) and M(z) = (z + a) / (1 + a z);
/// a single critical point -a of multiplicity n - 1.
BlaschkeProduct thm4_family(int n, double a);

/// (1/n) (1 - a^{2n}) / (1 - a^2).
double thm4_closed_T(int n, double a);

/// Bridge between the polynomial z prod (z - a_i) and the Blaschke product
/// B_m with zeros 0 and a_i / m; f_m(z) = m^n B_m(z / m).
struct RescalePair {
  double m;
  BlaschkeProduct rescaled;
  std::vector<Complex> source_zeros;
};

/// Throws kInvalidZero when some |a_i / m| leaves the guard disk.
RescalePair rescale_family(std::vector<Complex> poly_zeros, double m);

/// f_m(z) = z prod (z - a_i) / (1 - conj(a_i) z / m^2), evaluated directly.
Complex rescaled_polynomial_eval(const RescalePair& pair, Complex z);

struct RescaleQuotients {
  std::vector<Complex> blaschke_critical;    // c_{m,i}
  std::vector<Complex> polynomial_critical;  // d_{m,i} = m c_{m,i}
  std::vector<Complex> blaschke_values;      // B_m(c) / (c B_m'(0))
  std::vector<Complex> polynomial_values;    // f_m(d) / (d f_m'(0))
  double identity_residual = 0.0;            // max |difference| of the two routes
  std::vector<double> limit_values;          // quotients of the source polynomial
  double limit_distance = 0.0;               // max gap between sorted magnitudes
};

RescaleQuotients rescale_quotients(const RescalePair& pair, double tol = 1e-12);

}  // namespace smalelab
