#include "smalelab/critical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "smalelab/error.hpp"

namespace smalelab {

namespace {

constexpr int kRefineSteps = 8;
constexpr int kPolishSweeps = 30;
constexpr double kPreimageTolerance = 1e-9;
// Relative size below which derivatives of B'/B count as vanishing.
constexpr double kMultipleRootTolerance = 1e-10;

// Neumaier summation, one accumulator per component.
class CompensatedSum {
 public:
  void add(Complex x) {
    add_component(sum_re_, comp_re_, x.real());
    add_component(sum_im_, comp_im_, x.imag());
  }
  Complex value() const { return {sum_re_ + comp_re_, sum_im_ + comp_im_}; }

 private:
  static void add_component(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double sum_re_ = 0.0, comp_re_ = 0.0, sum_im_ = 0.0, comp_im_ = 0.0;
};

// Logarithmic derivative B'/B = sum (1 - |z_k|^2) / ((z - z_k)(1 - conj(z_k) z))
// and its derivative.
struct LogDerivative {
  Complex value;
  Complex slope;
};

LogDerivative log_derivative(const BlaschkeProduct& b, Complex z) {
  CompensatedSum g, dg;
  for (const Complex& zk : b.zeros()) {
    const double w = 1.0 - std::norm(zk);
    const Complex den = (z - zk) * (1.0 - std::conj(zk) * z);
    g.add(w / den);
    dg.add(-w * (1.0 - 2.0 * std::conj(zk) * z + std::norm(zk)) / (den * den));
  }
  return {g.value(), dg.value()};
}

double distance_to_zeros(const BlaschkeProduct& b, Complex z) {
  double d = std::numeric_limits<double>::infinity();
  for (const Complex& zk : b.zeros()) d = std::min(d, std::abs(z - zk));
  return d;
}

// Newton on B'/B; only steps that reduce |B'/B| are kept.
Complex refine_on_log_derivative(const BlaschkeProduct& b, Complex z, int steps, double max_step) {
  if (distance_to_zeros(b, z) < 1e-10) return z;
  LogDerivative cur = log_derivative(b, z);
  for (int i = 0; i < steps; ++i) {
    if (cur.value == Complex{} || cur.slope == Complex{}) break;
    const Complex step = cur.value / cur.slope;
    if (!(std::abs(step) <= max_step)) break;
    const Complex next = z - step;
    if (distance_to_zeros(b, next) < 1e-10) break;
    const LogDerivative trial = log_derivative(b, next);
    if (!(std::abs(trial.value) < std::abs(cur.value))) break;
    z = next;
    cur = trial;
  }
  return z;
}

// j-th derivative of B'/B from the partial fractions
// 1/(z - z_k) + conj(z_k)/(1 - conj(z_k) z), with the sum of term moduli as
// a scale.
struct ScaledValue {
  Complex value;
  double scale;
};

ScaledValue log_derivative_order(const BlaschkeProduct& b, Complex z, int j) {
  double factorial = 1.0;
  for (int i = 2; i <= j; ++i) factorial *= i;
  const double sign = j % 2 == 0 ? 1.0 : -1.0;
  CompensatedSum sum;
  double scale = 0.0;
  for (const Complex& zk : b.zeros()) {
    const Complex pole = sign * factorial / std::pow(z - zk, j + 1);
    const Complex mirror = factorial * std::pow(std::conj(zk) / (1.0 - std::conj(zk) * z), j + 1);
    sum.add(pole);
    sum.add(mirror);
    scale += std::abs(pole) + std::abs(mirror);
  }
  return {sum.value(), scale};
}

// A group of m nearby roots of the derivative numerator is one m-fold
// critical point when the zero of (B'/B)^{(m-1)} near the group and the
// lower derivatives all vanish there relative to their scale.
bool is_multiple_critical_point(const BlaschkeProduct& b, Complex& center, int m) {
  Complex c = center;
  for (int i = 0; i < kRefineSteps; ++i) {
    if (distance_to_zeros(b, c) < 1e-10) return false;
    // Newton on f / f' with f = (B'/B)^{(m-1)}: quadratic whatever the
    // multiplicity left in f.
    const Complex f = log_derivative_order(b, c, m - 1).value;
    const Complex f1 = log_derivative_order(b, c, m).value;
    const Complex f2 = log_derivative_order(b, c, m + 1).value;
    const Complex step = f * f1 / (f1 * f1 - f * f2);
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
    c -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(c)) break;
  }
  if (!(std::abs(c - center) <= 0.1 * std::max(1.0, std::abs(center)))) return false;
  if (distance_to_zeros(b, c) < 1e-10) return false;
  for (int j = 0; j < m; ++j) {
    const ScaledValue v = log_derivative_order(b, c, j);
    if (!(std::abs(v.value) <= kMultipleRootTolerance * v.scale)) return false;
  }
  center = c;
  return true;
}

// N'/N for N = g P P* with g = B'/B, evaluated from the zeros:
// g'/g + sum 1/(z - z_k) - sum conj(z_k)/(1 - conj(z_k) z).
Complex numerator_log_derivative(const BlaschkeProduct& b, Complex z) {
  const LogDerivative g = log_derivative(b, z);
  CompensatedSum sum;
  sum.add(g.slope / g.value);
  for (const Complex& zk : b.zeros()) {
    sum.add(1.0 / (z - zk));
    sum.add(-std::conj(zk) / (1.0 - std::conj(zk) * z));
  }
  return sum.value();
}

// Aberth sweeps on the simple roots of the derivative numerator with the
// Newton correction taken from the zeros rather than the coefficients, which
// lose accuracy when zeros crowd the circle. Multiple roots stay fixed but
// still repel.
void polish_simple_roots(const BlaschkeProduct& b, std::vector<Root>& roots) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  std::vector<bool> done(roots.size(), false);
  for (int sweep = 0; sweep < kPolishSweeps; ++sweep) {
    bool moved = false;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (done[i] || roots[i].multiplicity != 1) continue;
      const Complex z = roots[i].location;
      const Complex inv_ratio = numerator_log_derivative(b, z);
      Complex repel{};
      for (std::size_t j = 0; j < roots.size(); ++j) {
        if (j != i) repel += static_cast<double>(roots[j].multiplicity) / (z - roots[j].location);
      }
      const Complex step = 1.0 / (inv_ratio - repel);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag()) || distance_to_zeros(b, z - step) < 1e-10) {
        done[i] = true;
        continue;
      }
      roots[i].location = z - step;
      if (std::abs(step) <= 4.0 * kEps * std::abs(roots[i].location)) {
        done[i] = true;
      } else {
        moved = true;
      }
    }
    if (!moved) break;
  }
}

// Greedy nearest matching of two equally sized point multisets.
double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  std::vector<bool> used(b.size(), false);
  for (const Complex& x : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(x - b[j]);
      if (d < best) {
        best = d;
        arg = j;
      }
    }
    used[arg] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

int CriticalSet::total_multiplicity() const {
  int total = 0;
  for (const auto& c : interior) total += c.multiplicity;
  return total;
}

std::vector<Complex> CriticalSet::expanded() const {
  std::vector<Complex> out;
  for (const auto& c : interior) out.insert(out.end(), static_cast<std::size_t>(c.multiplicity), c.location);
  return out;
}

ComplexPolynomial derivative_numerator(const BlaschkeProduct& b) {
  const ComplexPolynomial p = b.numerator();
  const ComplexPolynomial ps = conjugate_reciprocal(p, b.degree());
  return poly_derivative(p) * ps - p * poly_derivative(ps);
}

CriticalSet critical_points(const BlaschkeProduct& b, double tol) {
  const int n = b.degree();
  if (n < 2) throw Error(ErrorKind::kNoCriticalPoints, "degree-1 products have no critical points");

  const ComplexPolynomial numerator = derivative_numerator(b);
  RootOptions options;
  options.tol = tol;
  options.formal_degree = 2 * n - 2;
  options.cluster_test = [&b](Complex& center, int m) { return is_multiple_critical_point(b, center, m); };
  RootSet roots = poly_roots(numerator, options);
  polish_simple_roots(b, roots.roots);

  CriticalSet out;
  out.infinity_deficiency = roots.infinity_deficiency;
  std::vector<Complex> reflected;
  for (const Root& r : roots.roots) {
    Complex z = r.location;
    if (std::abs(std::abs(z) - 1.0) < kBoundaryBand) {
      z = refine_on_log_derivative(b, z, kRefineSteps, 1e-4);
      if (std::abs(std::abs(z) - 1.0) < kBoundaryBand) {
        throw Error(ErrorKind::kBoundaryAmbiguity,
                    "critical point within 1e-8 of the unit circle after refinement");
      }
    }
    if (std::abs(z) < 1.0) {
      out.interior.push_back({z, r.multiplicity, relative_residual(numerator, z)});
    } else {
      reflected.insert(reflected.end(), static_cast<std::size_t>(r.multiplicity), 1.0 / std::conj(z));
    }
  }
  if (out.total_multiplicity() != n - 1) {
    throw Error(ErrorKind::kConditioningFailure,
                "found " + std::to_string(out.total_multiplicity()) + " interior critical points, expected " +
                    std::to_string(n - 1));
  }
  reflected.insert(reflected.end(), static_cast<std::size_t>(out.infinity_deficiency), Complex{});
  out.reflection_error = multiset_distance(out.expanded(), reflected);
  out.exterior_checked = out.reflection_error <= kReflectionTolerance;
  return out;
}

std::vector<Complex> preimages(const BlaschkeProduct& b, Complex w, double tol) {
  if (!(std::abs(w) < 1.0)) throw Error(ErrorKind::kDomain, "target must lie in the open unit disk");
  const int n = b.degree();
  const ComplexPolynomial target = b.phase() * b.numerator() - w * b.denominator();
  RootOptions options;
  options.tol = tol;
  options.formal_degree = n;
  const RootSet roots = poly_roots(target, options);

  std::vector<Complex> out;
  for (const Root& r : roots.roots) {
    Complex z = r.location;
    if (r.multiplicity == 1 && std::abs(z) < 1.0) {
      double err = std::abs(b_eval(b, z) - w);
      for (int i = 0; i < 3 && err > 0.0; ++i) {
        const Complex d = b_derivative(b, z);
        if (d == Complex{}) break;
        const Complex next = z - (b_eval(b, z) - w) / d;
        if (!(std::abs(next) < 1.0)) break;
        const double next_err = std::abs(b_eval(b, next) - w);
        if (!(next_err < err)) break;
        z = next;
        err = next_err;
      }
    }
    if (std::abs(z) < 1.0) out.insert(out.end(), static_cast<std::size_t>(r.multiplicity), z);
  }
  if (static_cast<int>(out.size()) != n) {
    throw Error(ErrorKind::kConditioningFailure,
                "found " + std::to_string(out.size()) + " preimages in the disk, expected " + std::to_string(n));
  }
  for (const Complex& z : out) {
    if (!(std::abs(b_eval(b, z) - w) <= kPreimageTolerance)) {
      throw Error(ErrorKind::kConditioningFailure, "preimage residual above 1e-9");
    }
  }
  return out;
}

Complex derivative_scale(const BlaschkeProduct& b, const CriticalSet& crit) {
  const std::vector<Complex> zetas = crit.expanded();
  // Probe at the origin unless a critical point sits there.
  const auto usable = [&](Complex z) {
    return std::none_of(zetas.begin(), zetas.end(), [&](Complex zeta) { return std::abs(zeta - z) <= 1e-6; });
  };
  Complex probe{};
  for (const Complex candidate : {Complex(0.31, 0.17), Complex(-0.23, 0.41), Complex(0.05, -0.37)}) {
    if (usable(probe)) break;
    probe = candidate;
  }
  Complex c = 1.0, q_star = 1.0, p_star = 1.0;
  for (const Complex& zeta : zetas) {
    c *= (probe - zeta) / (1.0 - std::conj(zeta) * probe);
    q_star *= 1.0 - std::conj(zeta) * probe;
  }
  for (const Complex& zk : b.zeros()) p_star *= 1.0 - std::conj(zk) * probe;
  const Complex r = q_star / p_star;
  if (std::abs(c) < 1e-300) throw Error(ErrorKind::kConditioningFailure, "no usable probe point");
  return std::conj(b.phase()) * b_derivative(b, probe) / (c * r * r);
}

}  // namespace smalelab
