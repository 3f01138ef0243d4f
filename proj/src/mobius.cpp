#include "smalelab/mobius.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "smalelab/critical.hpp"
#include "smalelab/error.hpp"

namespace smalelab {

namespace {

constexpr double kRotationMatch = 1e-10;
constexpr double kOriginSnap = 1e-10;

// Probes are taken where the rotation-free candidate is comfortably nonzero.
BlaschkeProduct fix_rotation(std::vector<Complex> zeros, const std::function<Complex(Complex)>& target) {
  const BlaschkeProduct candidate(0.0, std::move(zeros));
  constexpr std::array<Complex, 6> probes = {Complex(0.0, 0.0),  Complex(0.5, 0.0),   Complex(0.0, 0.5),
                                             Complex(-0.5, 0.0), Complex(0.0, -0.5), Complex(0.3, 0.4)};
  std::vector<Complex> good;
  for (const Complex& z : probes) {
    if (std::abs(b_eval(candidate, z)) > 1e-3) good.push_back(z);
    if (good.size() == 2) break;
  }
  if (good.size() < 2) throw Error(ErrorKind::kConditioningFailure, "no usable probe points for rotation");
  const double rotation = std::arg(target(good[0]) / b_eval(candidate, good[0]));
  const BlaschkeProduct result = candidate.with_rotation(rotation);
  if (!(std::abs(b_eval(result, good[1]) - target(good[1])) <= kRotationMatch)) {
    throw Error(ErrorKind::kConditioningFailure, "rotation does not match at the second probe point");
  }
  return result;
}

}  // namespace

MobiusAutomorphism::MobiusAutomorphism(double rotation, Complex center) : rotation_(rotation), center_(center) {
  if (!(std::abs(center) < 1.0)) throw Error(ErrorKind::kDomain, "automorphism center must lie in the disk");
}

Complex MobiusAutomorphism::operator()(Complex z) const {
  return std::polar(1.0, rotation_) * (z - center_) / (1.0 - std::conj(center_) * z);
}

Complex MobiusAutomorphism::inverse(Complex w) const {
  const Complex u = std::polar(1.0, -rotation_) * w;
  return (u + center_) / (1.0 + std::conj(center_) * u);
}

BlaschkeProduct compose_pre(const BlaschkeProduct& b, const MobiusAutomorphism& m) {
  std::vector<Complex> zeros;
  for (const Complex& zk : b.zeros()) zeros.push_back(m.inverse(zk));
  return fix_rotation(std::move(zeros), [&](Complex z) { return b_eval(b, m(z)); });
}

BlaschkeProduct compose_post(const MobiusAutomorphism& m, const BlaschkeProduct& b) {
  return fix_rotation(preimages(b, m.center()), [&](Complex z) { return m(b_eval(b, z)); });
}

BlaschkeProduct normalize(const BlaschkeProduct& b, Complex w) {
  if (!(std::abs(w) < 1.0)) throw Error(ErrorKind::kDomain, "normalization point must lie in the disk");
  if (!(std::abs(b_derivative(b, w)) > 1e-12)) {
    throw Error(ErrorKind::kDegenerateNormalization, "B'(w) vanishes at the normalization point");
  }
  const BlaschkeProduct moved = compose_pre(b, MobiusAutomorphism::sending_origin_to(w));
  const BlaschkeProduct centered = compose_post(MobiusAutomorphism(0.0, b_eval(b, w)), moved);

  // The construction forces a zero at the origin; pin it exactly.
  std::vector<Complex> zeros(centered.zeros().begin(), centered.zeros().end());
  auto nearest = std::min_element(zeros.begin(), zeros.end(),
                                  [](Complex a, Complex c) { return std::abs(a) < std::abs(c); });
  if (!(std::abs(*nearest) <= kOriginSnap)) {
    throw Error(ErrorKind::kConditioningFailure, "normalized product has no zero at the origin");
  }
  *nearest = Complex{};
  return BlaschkeProduct(0.0, std::move(zeros));
}

}  // namespace smalelab
