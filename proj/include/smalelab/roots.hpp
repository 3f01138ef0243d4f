#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "smalelab/error.hpp"
#include "smalelab/polynomial.hpp"

namespace smalelab {

struct Root {
  Complex location;
  int multiplicity = 1;
  double residual = 0.0;  // relative backward error at `location`
};

struct RootSet {
  std::vector<Root> roots;  // ordered by (modulus, argument)
  int infinity_deficiency = 0;

  int total_multiplicity() const;
  /// Locations repeated according to multiplicity.
  std::vector<Complex> expanded() const;
};

struct RootOptions {
  double tol = 1e-12;
  int max_iterations = 500;
  /// Degree the polynomial is meant to have; the shortfall is reported as
  /// roots at infinity.
  std::optional<int> formal_degree;
  /// Structured test for a candidate group of nearby roots of total
  /// multiplicity m. It may move `center` and replaces the coefficient Taylor
  /// test when set; returning false keeps the roots apart.
  std::function<bool(Complex& center, int m)> cluster_test;
};

/// Thrown when neither the simultaneous iteration nor the companion-matrix
/// fallback reaches the residual tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(Complex best_iterate, double residual);

  Complex best_iterate() const { return best_iterate_; }
  double residual() const { return residual_; }

 private:
  Complex best_iterate_;
  double residual_;
};

/// All roots of p with multiplicity clusters merged.
///
/// Aberth-Ehrlich iteration started from a Newton-polygon distribution of
/// circles, with an eigenvalue fallback on the companion matrix. Roots that
/// form a numerically multiple root (all Taylor coefficients below the
/// cluster size vanish to working precision at the refined centroid, or the
/// caller's cluster_test accepts them) are merged and reported once.
RootSet poly_roots(const ComplexPolynomial& p, const RootOptions& options = {});
RootSet poly_roots(const ComplexPolynomial& p, double tol);

struct PolyQuotients {
  std::vector<Complex> critical_points;  // with multiplicity
  std::vector<double> values;            // |P(b) / (b P'(0))| per critical point
  double min = 0.0;
  double max = 0.0;
};

/// Smale quotients of P(z) = z prod (z - a_i) at every critical point.
PolyQuotients poly_smale_quotients(std::span<const Complex> zeros, double tol = 1e-12);

}  // namespace smalelab
