#include <algorithm>

#include "doctest.h"
#include "smalelab/error.hpp"
#include "smalelab/families.hpp"
#include "smalelab/smale.hpp"
#include "support.hpp"

using namespace smalelab;

TEST_CASE("roots family: zeros, closed-form critical points and S") {
  // mpmath, n = 3, beta = 0.49: S = 0.687267738956898730, critical points +-0.428395126230167044
  CHECK(thm2_closed_S(3, 0.49) == doctest::Approx(0.687267738956898730).epsilon(1e-14));
  const auto cps = thm2_critical_points(3, 0.49);
  REQUIRE(cps.size() == 2);
  for (const Complex& c : cps) CHECK(std::abs(std::abs(c) - 0.428395126230167044) < 1e-14);

  for (int n = 2; n <= 6; ++n) {
    double previous = 0.0;
    for (int k = 0; k < 50; ++k) {
      const double beta = 0.1 + (0.999 - 0.1) * k / 49.0;
      const BlaschkeProduct b = thm2_family(n, std::pow(beta, 1.0 / (n - 1)));
      CHECK(b.degree() == n);
      CHECK(b.origin_multiplicity() == 1);
      for (const Complex& c : thm2_critical_points(n, beta)) CHECK(std::abs(b_derivative(b, c)) < 1e-8);
      const double closed = thm2_closed_S(n, beta);
      CHECK(closed < 1.0);
      CHECK(closed > previous);
      previous = closed;
      CHECK(std::abs(smale_quotients(b).S - closed) < 1e-8);
    }
    CHECK(thm2_closed_S(n, 0.999) > 0.95);
  }
  CHECK_THROWS_AS(thm2_family(3, 0.0), Error);
  CHECK_THROWS_AS(thm2_family(3, 1.0), Error);
  CHECK_THROWS_AS(thm2_family(1, 0.5), Error);
}

TEST_CASE("automorphism family: one multiple critical point and T above 1/n") {
  CHECK(thm4_closed_T(3, 0.5) == doctest::Approx(0.4375));  // (1 - 1/64) / (3 * 0.75)
  CHECK(thm4_closed_T(2, 0.5) == doctest::Approx(0.625));
  for (int n = 2; n <= 6; ++n) {
    double previous = 1.0 / n;
    CHECK(thm4_closed_T(n, 0.01) - 1.0 / n > 0.0);
    CHECK(thm4_closed_T(n, 0.01) - 1.0 / n < 1e-3);
    for (double a : {0.01, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
      const BlaschkeProduct b = thm4_family(n, a);
      CHECK(b.degree() == n);
      const double closed = thm4_closed_T(n, a);
      CHECK(closed > 1.0 / n);
      CHECK(closed > previous);
      previous = closed;
      const QuotientReport r = smale_quotients(b);
      INFO("n = " << n << ", a = " << a);
      // one entry per critical point counted with multiplicity
      REQUIRE(r.quotients.size() == static_cast<std::size_t>(n - 1));
      for (const auto& q : r.quotients) CHECK(std::abs(q.zeta + a) < 1e-7);
      CHECK(std::abs(r.T - closed) < 1e-8);
    }
  }
}

TEST_CASE("rescaling: f_m matches m^n B_m(z/m) and the quotient identity holds") {
  auto rng = testing::rng_for(61);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Complex> zeros;
    for (int k = 0; k < 1 + trial % 5; ++k) zeros.push_back(testing::point_in_disk(rng, 2.0) + 0.05);
    for (double m : {10.0, 100.0}) {
      const RescalePair pair = rescale_family(zeros, m);
      const int n = pair.rescaled.degree();
      const Complex z = testing::point_in_disk(rng, 3.0);
      const Complex direct = rescaled_polynomial_eval(pair, z);
      const Complex via = std::pow(m, n) * b_eval(pair.rescaled, z / m) / pair.rescaled.phase();
      CHECK(std::abs(direct - via) < 1e-9 * std::max(1.0, std::abs(direct)));
      const RescaleQuotients q = rescale_quotients(pair);
      CHECK(q.identity_residual < 1e-9);
      for (std::size_t k = 0; k < q.blaschke_critical.size(); ++k) {
        CHECK(std::abs(q.polynomial_critical[k] - m * q.blaschke_critical[k]) < 1e-12 * m);
      }
    }
  }
  CHECK_THROWS_AS(rescale_family({Complex(5.0, 0.0)}, 2.0), Error);
}

TEST_CASE("rescaling error against the degree-two closed form") {
  // zeros 0 and 1/m: quotient (1 - sqrt(1 - b^2)) / b^2 with b = 1/m, limit 1/2.
  for (double m : {10.0, 30.0, 100.0, 1000.0}) {
    const double b = 1.0 / m;
    const double expected = (1.0 - std::sqrt(1.0 - b * b)) / (b * b) - 0.5;
    const RescaleQuotients q = rescale_quotients(rescale_family({Complex(1.0, 0.0)}, m));
    CHECK(std::abs(q.limit_distance - expected) < 1e-10);
  }
  // mpmath: m = 10 gives 1.25628933800452655e-3, m = 100 gives 1.25006250390652346e-5
  CHECK(rescale_quotients(rescale_family({Complex(1.0, 0.0)}, 10.0)).limit_distance ==
        doctest::Approx(1.25628933800452655e-3).epsilon(1e-9));
  CHECK(rescale_quotients(rescale_family({Complex(1.0, 0.0)}, 100.0)).limit_distance ==
        doctest::Approx(1.25006250390652346e-5).epsilon(1e-6));
}
