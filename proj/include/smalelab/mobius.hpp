#pragma once

#include "smalelab/blaschke.hpp"

namespace smalelab {

/// Disk automorphism e^{i rotation} (z - center) / (1 - conj(center) z).
class MobiusAutomorphism {
 public:
  MobiusAutomorphism(double rotation, Complex center);

  static MobiusAutomorphism identity() { return {0.0, Complex{}}; }
  /// The automorphism (z + p) / (1 + conj(p) z), which sends 0 to p.
  static MobiusAutomorphism sending_origin_to(Complex p) { return {0.0, -p}; }

  double rotation() const { return rotation_; }
  Complex center() const { return center_; }

  Complex operator()(Complex z) const;
  Complex inverse(Complex w) const;

 private:
  double rotation_;
  Complex center_;
};

/// B o M; zeros are M^{-1}(z_k), rotation recovered from a probe point.
BlaschkeProduct compose_pre(const BlaschkeProduct& b, const MobiusAutomorphism& m);

/// M o B; zeros are the preimages of the center of M under B.
BlaschkeProduct compose_post(const MobiusAutomorphism& m, const BlaschkeProduct& b);

/// Moves the evaluation point w to the origin: returns C with C(0) = 0 and
/// rotation 0 whose quotients match the hyperbolic quotients of B at w.
/// Throws kDegenerateNormalization when |B'(w)| <= 1e-12.
BlaschkeProduct normalize(const BlaschkeProduct& b, Complex w);

}  // namespace smalelab
