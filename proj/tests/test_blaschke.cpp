#include <numbers>

#include "doctest.h"
#include "smalelab/blaschke.hpp"
#include "smalelab/error.hpp"
#include "smalelab/search.hpp"
#include "support.hpp"

using namespace smalelab;

namespace {

// Straight product formula, kept independent of the library evaluator.
Complex direct_eval(double rotation, const std::vector<Complex>& zeros, Complex z) {
  Complex v = std::polar(1.0, rotation);
  for (const Complex& a : zeros) v *= (z - a) / (1.0 - std::conj(a) * z);
  return v;
}

BlaschkeProduct random_product(std::mt19937_64& rng, int n) {
  std::vector<Complex> zeros;
  for (int k = 0; k < n; ++k) zeros.push_back(testing::point_in_disk(rng, 0.95));
  return BlaschkeProduct(testing::uniform(rng, 0.0, 6.0), zeros);
}

}  // namespace

TEST_CASE("construction validates zeros and wraps the rotation") {
  CHECK_THROWS_AS(BlaschkeProduct(0.0, {}), Error);
  CHECK_THROWS_AS(BlaschkeProduct(0.0, {Complex(1.0, 0.0)}), Error);
  CHECK_THROWS_AS(BlaschkeProduct(std::nan(""), {Complex(0.1)}), Error);
  try {
    BlaschkeProduct(0.0, {0.2, Complex(0.0, 1.5)});
    FAIL("expected an invalid-zero error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInvalidZero);
    CHECK(std::string(e.what()).find("1") != std::string::npos);
  }
  const BlaschkeProduct b(-0.5, {0.1});
  CHECK(b.rotation() == doctest::Approx(2.0 * std::numbers::pi - 0.5));
  CHECK(make_blaschke(7.0, {0.1}).rotation() == doctest::Approx(7.0 - 2.0 * std::numbers::pi));
}

TEST_CASE("evaluation matches the product formula") {
  auto rng = testing::rng_for(2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto b = random_product(rng, 1 + trial % 8);
    const std::vector<Complex> zeros(b.zeros().begin(), b.zeros().end());
    const Complex z = testing::point_in_disk(rng, 0.99);
    CHECK(std::abs(b_eval(b, z) - direct_eval(b.rotation(), zeros, z)) < 1e-13);
  }
}

TEST_CASE("numerator over denominator reproduces the product") {
  const BlaschkeProduct b(0.4, {0.0, Complex(0.3, 0.2), Complex(-0.6, 0.1)});
  const Complex z(0.2, -0.5);
  CHECK(std::abs(b.phase() * b.numerator()(z) / b.denominator()(z) - b_eval(b, z)) < 1e-14);
  CHECK(b.origin_multiplicity() == 1);
}

TEST_CASE("unit modulus on the circle") {
  auto rng = testing::rng_for(4);
  for (int trial = 0; trial < 50; ++trial) {
    CHECK(boundary_modulus_check(random_product(rng, 1 + trial % 8), 256) <= 1e-10);
  }
}

TEST_CASE("reflection identity B(1/conj z) conj B(z) = 1") {
  auto rng = testing::rng_for(6);
  for (int trial = 0; trial < 200; ++trial) {
    const auto b = random_product(rng, 1 + trial % 8);
    Complex z = testing::point_in_disk(rng, 0.99);
    if (std::abs(z) < 1e-3) z = 0.5;
    CHECK(std::abs(b_eval(b, 1.0 / std::conj(z)) * std::conj(b_eval(b, z)) - 1.0) < 1e-9);
  }
}

TEST_CASE("derivative matches a central difference") {
  auto rng = testing::rng_for(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto b = random_product(rng, 1 + trial % 6);
    const Complex z = testing::point_in_disk(rng, 0.8);
    const double h = 1e-6;
    const Complex fd = (b_eval(b, z + h) - b_eval(b, z - h)) / (2.0 * h);
    CHECK(std::abs(b_derivative(b, z) - fd) < 1e-6 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("derivative at the origin") {
  // e^{i t} z (z - a)/(1 - conj(a) z): B'(0) = -a e^{i t}
  const Complex a(0.3, -0.4);
  const BlaschkeProduct b(1.1, {0.0, a});
  CHECK(std::abs(derivative_at_origin(b) - (-a) * std::polar(1.0, 1.1)) < 1e-15);
  CHECK(derivative_at_origin(BlaschkeProduct(0.0, {0.0, 0.0, a})) == Complex{});
  CHECK(derivative_at_origin(BlaschkeProduct(0.0, {a})) == Complex{});
}

TEST_CASE("Schwarz-Pick contraction of the hyperbolic derivative") {
  auto rng = testing::rng_for(10);
  for (int trial = 0; trial < 300; ++trial) {
    const auto b = random_product(rng, 1 + trial % 8);
    CHECK(std::abs(hyperbolic_derivative(b, testing::point_in_disk(rng, 0.99))) <= 1.0 + 1e-12);
  }
  // degree one is an isometry
  const BlaschkeProduct m(0.3, {Complex(0.2, 0.5)});
  CHECK(std::abs(hyperbolic_derivative(m, Complex(-0.1, 0.4))) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pseudo-hyperbolic distance") {
  CHECK(pseudo_hyperbolic(0.5, 0.0) == Complex(0.5));
  const Complex z(0.3, 0.1), w(-0.2, 0.6);
  CHECK(std::abs(pseudo_hyperbolic(z, w)) == doctest::Approx(std::abs(pseudo_hyperbolic(w, z))));
  CHECK(std::abs(pseudo_hyperbolic(z, z)) == 0.0);
}

TEST_CASE("evaluating at a pole is refused") {
  const Complex a(0.5, 0.0);
  const BlaschkeProduct b(0.0, {a});
  CHECK_THROWS_AS(b_eval(b, 1.0 / std::conj(a)), Error);
}

TEST_CASE("sampled products are normalized and reproducible") {
  auto r1 = stream_rng(9, 4);
  auto r2 = stream_rng(9, 4);
  const auto a = sample_blaschke(5, r1);
  const auto b = sample_blaschke(5, r2);
  CHECK(a.origin_multiplicity() == 1);
  CHECK(a.rotation() == 0.0);
  REQUIRE(a.degree() == 5);
  for (int k = 0; k < 5; ++k) CHECK(a.zeros()[static_cast<std::size_t>(k)] == b.zeros()[static_cast<std::size_t>(k)]);
  for (const Complex& z : a.zeros()) CHECK(std::abs(z) <= 0.95);
}
