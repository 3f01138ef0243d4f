#include "doctest.h"
#include "smalelab/error.hpp"
#include "smalelab/polynomial.hpp"
#include "support.hpp"

using namespace smalelab;

TEST_CASE("coefficients are stored low to high and trailing zeros trimmed") {
  const ComplexPolynomial p{1.0, 2.0, 0.0};
  REQUIRE(p.degree() == 1);
  CHECK(p.coeff(0) == Complex(1.0));
  CHECK(p.coeff(1) == Complex(2.0));
  CHECK(p.coeff(5) == Complex(0.0));
  CHECK_FALSE(ComplexPolynomial{}.degree().has_value());
  CHECK(ComplexPolynomial{0.0, 0.0}.is_zero());
}

TEST_CASE("from_roots expands the product") {
  // (z - 1)(z + 2)(z - i) = z^3 + (1 - i) z^2 + (-2 - i) z + 2i, by hand
  const std::vector<Complex> roots{1.0, -2.0, Complex(0, 1)};
  const auto p = ComplexPolynomial::from_roots(roots);
  CHECK(std::abs(p.coeff(3) - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(p.coeff(2) - Complex(1, -1)) < 1e-15);
  CHECK(std::abs(p.coeff(1) - Complex(-2, -1)) < 1e-15);
  CHECK(std::abs(p.coeff(0) - Complex(0, 2)) < 1e-15);
  for (const Complex& r : roots) CHECK(std::abs(p(r)) < 1e-14);
}

TEST_CASE("arithmetic agrees with pointwise evaluation") {
  auto rng = testing::rng_for(3);
  const ComplexPolynomial a{Complex(1, 2), Complex(-0.5, 0.25), 3.0};
  const ComplexPolynomial b{Complex(0, -1), 2.0};
  for (int k = 0; k < 20; ++k) {
    const Complex z = testing::point_in_disk(rng, 2.0);
    CHECK(std::abs((a + b)(z) - (a(z) + b(z))) < 1e-13);
    CHECK(std::abs((a - b)(z) - (a(z) - b(z))) < 1e-13);
    CHECK(std::abs((a * b)(z) - a(z) * b(z)) < 1e-12);
    CHECK(std::abs((Complex(0, 2) * a)(z) - Complex(0, 2) * a(z)) < 1e-13);
  }
}

TEST_CASE("derivative matches a central difference") {
  const ComplexPolynomial p{0.3, Complex(1, -1), -2.0, Complex(0.5, 0.5), 1.0};
  const auto dp = poly_derivative(p);
  const Complex z(0.4, -0.7);
  const double h = 1e-6;
  const Complex fd = (p(z + h) - p(z - h)) / (2.0 * h);
  CHECK(std::abs(dp(z) - fd) < 1e-8);
  CHECK(poly_derivative(ComplexPolynomial{5.0}).is_zero());
}

TEST_CASE("conjugate reciprocal reflects roots and is an involution") {
  auto rng = testing::rng_for(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Complex> coeffs;
    const int degree = 1 + trial % 9;
    for (int k = 0; k <= degree; ++k) coeffs.push_back(testing::point_in_disk(rng, 3.0));
    const ComplexPolynomial p(coeffs);
    const int n = degree + trial % 3;
    CHECK(conjugate_reciprocal(conjugate_reciprocal(p, n), n) == p);
  }
  // root a of p becomes root 1/conj(a) of p*
  const Complex a(0.3, 0.6);
  const auto p = ComplexPolynomial::from_roots(std::vector<Complex>{a});
  CHECK(std::abs(conjugate_reciprocal(p, 1)(1.0 / std::conj(a))) < 1e-15);
  CHECK_THROWS_AS(conjugate_reciprocal(p * p, 1), Error);
}

TEST_CASE("Taylor coefficients follow the binomial expansion") {
  // p(z) = z^3 about c: (c + t)^3 = c^3 + 3c^2 t + 3c t^2 + t^3
  const ComplexPolynomial p{0.0, 0.0, 0.0, 1.0};
  const Complex c(0.5, -0.2);
  const auto t = taylor_coefficients(p, c);
  REQUIRE(t.size() == 4);
  CHECK(std::abs(t[0] - c * c * c) < 1e-15);
  CHECK(std::abs(t[1] - 3.0 * c * c) < 1e-15);
  CHECK(std::abs(t[2] - 3.0 * c) < 1e-15);
  CHECK(std::abs(t[3] - 1.0) < 1e-15);
}

TEST_CASE("relative residual vanishes at roots and is scale free") {
  const auto p = ComplexPolynomial::from_roots(std::vector<Complex>{0.5, 4.0, Complex(0, -20)});
  CHECK(relative_residual(p, 0.5) < 1e-15);
  CHECK(relative_residual(p, Complex(0, -20)) < 1e-15);
  CHECK(relative_residual(p, 1.0) > 1e-3);
  CHECK(relative_residual(Complex(1e8, 0) * p, 1.0) == doctest::Approx(relative_residual(p, 1.0)).epsilon(1e-12));
}
