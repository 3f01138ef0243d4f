#include <algorithm>

#include "doctest.h"
#include "smalelab/error.hpp"
#include "smalelab/families.hpp"
#include "smalelab/mobius.hpp"
#include "smalelab/search.hpp"
#include "smalelab/smale.hpp"
#include "support.hpp"

using namespace smalelab;

namespace {

// Degree-two quotient in closed form: (1 - sqrt(1 - beta^2)) / beta^2.
double degree_two_quotient(double beta) { return (1.0 - std::sqrt(1.0 - beta * beta)) / (beta * beta); }

std::vector<double> values_of(const QuotientReport& r) {
  std::vector<double> v;
  for (const auto& q : r.quotients) v.push_back(q.value);
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("bound values") {
  CHECK(thm1_bound(2) == doctest::Approx(13.0 / 6.0).epsilon(1e-15));
  CHECK(std::abs(thm1_bound(3) - 2.6) < 1e-12);
  CHECK(thm3_lower(3) == 1.0 / 64.0);
  // the two branches cross at r = 1/2
  CHECK(lemma1_bound(0.25) == doctest::Approx(0.8));
  CHECK(lemma1_bound(0.1) == doctest::Approx(0.4 / 1.04));
  CHECK(lemma1_bound(0.6) == doctest::Approx(1.2));
  CHECK(lemma1_bound(0.5) == doctest::Approx(1.0));
  for (double r = 0.05; r < 1.0; r += 0.05) CHECK(lemma1_bound(r) < 4.0 * r);
  CHECK_THROWS_AS(thm1_bound(1), Error);
  CHECK_THROWS_AS(lemma1_bound(1.0), Error);
}

TEST_CASE("degree two: factorwise, closed form and normalized routes agree") {
  // mpmath, 30 digits: beta = 0.5 gives 0.535898384862245412945...
  CHECK(smale_quotients(BlaschkeProduct(0.0, {0.0, 0.5})).S == doctest::Approx(0.5358983848622454).epsilon(1e-14));
  auto rng = testing::rng_for(53);
  for (int trial = 0; trial < 50; ++trial) {
    const double beta = testing::uniform(rng, 0.01, 0.99);
    const Complex a = std::polar(beta, testing::uniform(rng, 0.0, 6.0));
    const QuotientReport r = smale_quotients(BlaschkeProduct(testing::uniform(rng, 0.0, 6.0), {0.0, a}));
    REQUIRE(r.quotients.size() == 1);
    CHECK(std::abs(r.S - degree_two_quotient(beta)) < 1e-10);
    CHECK(r.S > 0.5);
    CHECK(r.S < 1.0);
    // the same product seen from w = 0 through the general quotient
    CHECK(std::abs(general_quotients(BlaschkeProduct(0.0, {0.0, a}), 0.0)[0] - r.S) < 1e-10);
  }
}

TEST_CASE("report fields") {
  const QuotientReport r = smale_quotients(BlaschkeProduct(0.0, {0.0, 0.3, Complex(-0.2, 0.5)}));
  CHECK(r.quotients.size() == 2);
  CHECK(r.S <= r.T);
  CHECK(r.thm1_bound == thm1_bound(3));
  CHECK(r.thm3_lower == thm3_lower(3));
  CHECK(r.flags.empty());
  CHECK_FALSE(r.s_indices.empty());
  CHECK(r.quotients[r.s_indices[0]].value == r.S);
  CHECK(r.quotients[r.t_indices[0]].value == r.T);
}

TEST_CASE("ties are reported with every index") {
  // symmetric family: all quotients equal
  const QuotientReport r = smale_quotients(thm2_family(4, 0.6));
  CHECK(r.s_indices.size() == 3);
  CHECK(r.t_indices.size() == 3);
}

TEST_CASE("products outside the normalized class are refused") {
  try {
    smale_quotients(BlaschkeProduct(0.0, {0.0, 0.0, 0.5}));
    FAIL("expected vanishing derivative");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kVanishingDerivative);
  }
  try {
    smale_quotients(BlaschkeProduct(0.0, {0.2, 0.5}));
    FAIL("expected not normalized");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNotNormalized);
  }
  CHECK_THROWS_AS(smale_quotients(BlaschkeProduct(0.0, {0.0})), Error);
}

TEST_CASE("upper and lower bounds hold on random normalized products") {
  for (int n = 2; n <= 8; ++n) {
    for (int k = 0; k < 60; ++k) {
      auto rng = stream_rng(101, static_cast<std::uint64_t>(n * 1000 + k));
      const QuotientReport r = smale_quotients(sample_blaschke(n, rng));
      CHECK(r.S <= thm1_bound(n) + 1e-9);
      CHECK(r.T > thm3_lower(n));
      CHECK(r.flags.empty());
    }
  }
}

TEST_CASE("rotating every zero leaves the quotient multiset unchanged") {
  auto rng = testing::rng_for(59);
  for (int trial = 0; trial < 60; ++trial) {
    auto srng = stream_rng(59, static_cast<std::uint64_t>(trial));
    const BlaschkeProduct b = sample_blaschke(2 + trial % 7, srng);
    const Complex turn = std::polar(1.0, testing::uniform(rng, 0.0, 6.3));
    std::vector<Complex> zeros(b.zeros().begin(), b.zeros().end());
    for (Complex& z : zeros) z *= turn;
    const auto before = values_of(smale_quotients(b));
    const auto after = values_of(smale_quotients(BlaschkeProduct(testing::uniform(rng, 0.0, 6.0), zeros)));
    REQUIRE(before.size() == after.size());
    for (std::size_t k = 0; k < before.size(); ++k) CHECK(std::abs(before[k] - after[k]) < 1e-10);
  }
}

TEST_CASE("first-inequality report at the documented degree-two product") {
  // mpmath, beta = 0.99: r = (1-s)^2/beta^2 = 0.7527449039962068,
  // quotient (1-s)/beta^2 = 0.8763724519981034, s = sqrt(1 - beta^2).
  const Prop1Report r = prop1_check(BlaschkeProduct(0.0, {0.0, 0.99}));
  CHECK(r.hypothesis_met);
  CHECK(r.r == doctest::Approx(0.7527449039962068).epsilon(1e-12));
  CHECK(r.min_quotient == doctest::Approx(0.8763724519981034).epsilon(1e-12));
  CHECK(r.stated_bound == doctest::Approx(2.0 / 3.0));
  CHECK(r.koebe4_bound == doctest::Approx(8.0 / 3.0));
  CHECK(r.lower_bound == 0.25);
  REQUIRE(r.first_holds_stated.has_value());
  CHECK_FALSE(*r.first_holds_stated);
  CHECK(*r.first_holds_koebe4);
  CHECK(*r.second_holds);
  CHECK(r.log.size() == 4);

  const Prop1Report only_stated = prop1_check(BlaschkeProduct(0.0, {0.0, 0.99}), BoundVariant::kStated);
  CHECK(only_stated.first_holds_stated.has_value());
  CHECK_FALSE(only_stated.first_holds_koebe4.has_value());
}

TEST_CASE("first-inequality report when the hypothesis fails") {
  const Prop1Report r = prop1_check(BlaschkeProduct(0.0, {0.0, 0.5}));
  CHECK_FALSE(r.hypothesis_met);
  CHECK_FALSE(r.first_holds_stated.has_value());
  CHECK_FALSE(r.second_holds.has_value());
}
