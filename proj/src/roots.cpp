#include "smalelab/roots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace smalelab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Roots this close (relative to their modulus) are merged without further test.
constexpr double kTightMerge = 1e-7;
// Candidate cluster partners must lie within this relative distance.
constexpr double kLooseMerge = 0.1;
// Taylor coefficients below the cluster size must vanish to this level.
constexpr double kClusterTaylorTol = 1e-11;
constexpr int kPolishIterations = 50;

std::string describe_failure(Complex z, double residual) {
  std::ostringstream os;
  os.precision(17);
  os << "root iteration did not reach tolerance; best iterate (" << z.real() << ", " << z.imag()
     << ") has residual " << residual;
  return os.str();
}

// p(z) / p'(z); the reversed polynomial is used outside the unit disk.
Complex newton_ratio(std::span<const Complex> c, Complex z) {
  const int d = static_cast<int>(c.size()) - 1;
  if (std::abs(z) <= 1.0) {
    Complex p{}, dp{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      dp = dp * z + p;
      p = p * z + *it;
    }
    return p / dp;
  }
  const Complex w = 1.0 / z;
  Complex q{}, dq{};
  for (const Complex& a : c) {
    dq = dq * w + q;
    q = q * w + a;
  }
  return z * q / (static_cast<double>(d) * q - w * dq);
}

// Roots spread on circles whose radii come from the upper convex hull of
// (k, log|a_k|).
std::vector<Complex> initial_guesses(std::span<const Complex> c) {
  const int d = static_cast<int>(c.size()) - 1;
  std::vector<int> hull;
  for (int k = 0; k <= d; ++k) {
    if (std::abs(c[static_cast<std::size_t>(k)]) == 0.0) continue;
    const double y = std::log(std::abs(c[static_cast<std::size_t>(k)]));
    while (hull.size() >= 2) {
      const int i = hull[hull.size() - 2];
      const int j = hull.back();
      const double yi = std::log(std::abs(c[static_cast<std::size_t>(i)]));
      const double yj = std::log(std::abs(c[static_cast<std::size_t>(j)]));
      if ((yj - yi) * (k - i) <= (y - yi) * (j - i)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(k);
  }
  std::vector<Complex> guesses;
  guesses.reserve(static_cast<std::size_t>(d));
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    const int lo = hull[e];
    const int hi = hull[e + 1];
    const int count = hi - lo;
    const double radius = std::pow(std::abs(c[static_cast<std::size_t>(lo)]) /
                                       std::abs(c[static_cast<std::size_t>(hi)]),
                                   1.0 / count);
    const double offset = 2.0 * std::numbers::pi * static_cast<double>(e) / d + 0.4;
    for (int j = 0; j < count; ++j) {
      const double angle = 2.0 * std::numbers::pi * j / count + offset;
      guesses.push_back(std::polar(radius, angle));
    }
  }
  return guesses;
}

// Returns true when every root met the stopping rule. A root is frozen one
// sweep after it first satisfies the rule.
bool aberth(const ComplexPolynomial& p, std::vector<Complex>& z, int max_iterations) {
  const auto c = p.coeffs();
  const std::size_t d = z.size();
  const double stop_residual = 4.0 * static_cast<double>(d + 1) * kEps;
  std::vector<int> hits(d, 0);
  const auto frozen = [&](std::size_t i) { return hits[i] >= 2; };
  for (int it = 0; it < max_iterations; ++it) {
    bool all_done = true;
    for (std::size_t i = 0; i < d; ++i) {
      if (frozen(i)) continue;
      Complex ratio = newton_ratio(c, z[i]);
      if (!std::isfinite(ratio.real()) || !std::isfinite(ratio.imag())) {
        if (relative_residual(p, z[i]) <= stop_residual) {
          hits[i] = 2;
          continue;
        }
        // Stationary point of p: nudge off it.
        ratio = Complex(1e-3, 1e-3) * (1.0 + std::abs(z[i]));
      }
      Complex sum{};
      for (std::size_t j = 0; j < d; ++j) {
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      }
      Complex step = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = ratio;
      z[i] -= step;
      if (hits[i] > 0 || std::abs(step) <= 2.0 * kEps * std::abs(z[i]) ||
          relative_residual(p, z[i]) <= stop_residual) {
        ++hits[i];
      }
      if (!frozen(i)) all_done = false;
    }
    if (all_done) return true;
  }
  return std::all_of(hits.begin(), hits.end(), [](int h) { return h > 0; });
}

std::vector<Complex> companion_eigenvalues(const ComplexPolynomial& p) {
  const auto c = p.coeffs();
  const int d = static_cast<int>(c.size()) - 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) m(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) m(i, d - 1) = -c[static_cast<std::size_t>(i)] / c.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) out.push_back(solver.eigenvalues()(i));
  return out;
}

struct Member {
  Complex location;
  int multiplicity;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(b)] = find(a); }

 private:
  std::vector<std::size_t> parent_;
};

Complex weighted_centroid(std::span<const Member> members, std::span<const std::size_t> ids,
                          int& multiplicity) {
  Complex sum{};
  multiplicity = 0;
  for (std::size_t id : ids) {
    sum += static_cast<double>(members[id].multiplicity) * members[id].location;
    multiplicity += members[id].multiplicity;
  }
  return sum / static_cast<double>(multiplicity);
}

// Newton on p^{(m-1)}, which has a simple root at an m-fold root of p.
Complex refine_cluster_center(const ComplexPolynomial& p, Complex center, int m) {
  for (int i = 0; i < 6; ++i) {
    const auto t = taylor_coefficients(p, center);
    const auto mu = static_cast<std::size_t>(m);
    if (mu >= t.size() || t[mu] == Complex{}) break;
    const Complex step = t[mu - 1] / (static_cast<double>(m) * t[mu]);
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
    center -= step;
    if (std::abs(step) <= 4.0 * kEps * std::abs(center)) break;
  }
  return center;
}

// A group is a numerical multiple root of order m when p has an m-fold zero
// at the refined center up to rounding in every Taylor coefficient below m.
bool is_numerical_multiple_root(const ComplexPolynomial& p, const ComplexPolynomial& abs_p,
                                Complex center, int m) {
  const auto t = taylor_coefficients(p, center);
  const auto s = taylor_coefficients(abs_p, Complex(std::abs(center), 0.0));
  for (int j = 0; j < m && j < static_cast<int>(t.size()); ++j) {
    const auto ju = static_cast<std::size_t>(j);
    if (std::abs(t[ju]) > kClusterTaylorTol * std::abs(s[ju])) return false;
  }
  return true;
}

std::vector<Root> cluster(const ComplexPolynomial& p, std::vector<Member> members, const RootOptions& options) {
  const std::size_t count = members.size();
  std::vector<Complex> abs_coeffs;
  for (const Complex& a : p.coeffs()) abs_coeffs.emplace_back(std::abs(a), 0.0);
  const ComplexPolynomial abs_p(std::move(abs_coeffs));

  struct Pair {
    double distance;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      const double dist = std::abs(members[i].location - members[j].location);
      const double scale = std::max({1.0, std::abs(members[i].location), std::abs(members[j].location)});
      if (dist <= kLooseMerge * scale) pairs.push_back({dist, i, j});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    return a.distance < b.distance || (a.distance == b.distance && (a.i < b.i || (a.i == b.i && a.j < b.j)));
  });

  UnionFind groups(count);
  std::vector<std::vector<std::size_t>> ids(count);
  for (std::size_t i = 0; i < count; ++i) ids[i] = {i};
  for (const Pair& pr : pairs) {
    const std::size_t a = groups.find(pr.i);
    const std::size_t b = groups.find(pr.j);
    if (a == b) continue;
    std::vector<std::size_t> merged = ids[a];
    merged.insert(merged.end(), ids[b].begin(), ids[b].end());
    int m = 0;
    const Complex centroid = weighted_centroid(members, merged, m);
    const double tight = kTightMerge * std::max(std::abs(members[pr.i].location),
                                                std::abs(members[pr.j].location));
    bool accept = pr.distance <= tight;
    if (!accept && options.cluster_test) {
      Complex center = centroid;
      accept = options.cluster_test(center, m);
    } else if (!accept) {
      accept = is_numerical_multiple_root(p, abs_p, refine_cluster_center(p, centroid, m), m);
    }
    if (accept) {
      groups.unite(a, b);
      ids[a] = std::move(merged);
      ids[b].clear();
    }
  }

  std::vector<Root> out;
  for (std::size_t i = 0; i < count; ++i) {
    if (groups.find(i) != i) continue;
    int m = 0;
    Complex center = weighted_centroid(members, ids[i], m);
    if (m > 1 && options.cluster_test) {
      Complex refined = center;
      if (options.cluster_test(refined, m)) center = refined;
    } else if (m > 1) {
      double extent = 0.0;
      for (std::size_t id : ids[i]) extent = std::max(extent, std::abs(members[id].location - center));
      const Complex refined = refine_cluster_center(p, center, m);
      if (std::abs(refined - center) <= 2.0 * extent) center = refined;
    }
    out.push_back({center, m, relative_residual(p, center)});
  }
  return out;
}

void sort_roots(std::vector<Root>& roots) {
  std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) {
    const double ma = std::abs(a.location), mb = std::abs(b.location);
    if (ma != mb) return ma < mb;
    return std::arg(a.location) < std::arg(b.location);
  });
}

}  // namespace

ConvergenceError::ConvergenceError(Complex best_iterate, double residual)
    : Error(ErrorKind::kConvergenceFailure, describe_failure(best_iterate, residual)),
      best_iterate_(best_iterate),
      residual_(residual) {}

int RootSet::total_multiplicity() const {
  int total = 0;
  for (const Root& r : roots) total += r.multiplicity;
  return total;
}

std::vector<Complex> RootSet::expanded() const {
  std::vector<Complex> out;
  for (const Root& r : roots) out.insert(out.end(), static_cast<std::size_t>(r.multiplicity), r.location);
  return out;
}

RootSet poly_roots(const ComplexPolynomial& p, double tol) {
  RootOptions options;
  options.tol = tol;
  return poly_roots(p, options);
}

RootSet poly_roots(const ComplexPolynomial& p, const RootOptions& options) {
  const int degree = p.degree().value_or(-1);
  RootSet result;
  if (options.formal_degree) {
    if (*options.formal_degree < degree) {
      throw Error(ErrorKind::kInvalidDegree, "formal degree below actual degree");
    }
    result.infinity_deficiency = *options.formal_degree - std::max(degree, 0);
    if (degree <= 0) return result;
  } else if (degree < 1) {
    throw Error(ErrorKind::kInvalidDegree, "root finding needs a polynomial of degree >= 1");
  }

  // Exact zeros at the origin are split off before iterating.
  const auto c = p.coeffs();
  std::size_t origin = 0;
  while (c[origin] == Complex{}) ++origin;
  const ComplexPolynomial reduced(std::vector<Complex>(c.begin() + static_cast<std::ptrdiff_t>(origin), c.end()));
  const int d = degree - static_cast<int>(origin);

  std::vector<Member> members;
  if (origin > 0) members.push_back({Complex{}, static_cast<int>(origin)});

  if (d == 1) {
    members.push_back({-reduced.coeff(0) / reduced.coeff(1), 1});
  } else if (d > 1) {
    std::vector<Complex> z = initial_guesses(reduced.coeffs());
    if (!aberth(reduced, z, options.max_iterations)) {
      z = companion_eigenvalues(reduced);
      aberth(reduced, z, kPolishIterations);
    }
    for (const Complex& r : z) members.push_back({r, 1});
  }

  result.roots = cluster(p, std::move(members), options);
  for (const Root& r : result.roots) {
    if (!(r.residual <= options.tol)) throw ConvergenceError(r.location, r.residual);
  }
  sort_roots(result.roots);
  return result;
}

PolyQuotients poly_smale_quotients(std::span<const Complex> zeros, double tol) {
  if (zeros.empty()) throw Error(ErrorKind::kDomain, "at least one nonzero zero is required");
  Complex derivative_at_zero = 1.0;
  for (const Complex& a : zeros) {
    if (a == Complex{}) {
      throw Error(ErrorKind::kVanishingDerivative, "a zero at the origin makes P'(0) vanish");
    }
    derivative_at_zero *= -a;
  }
  std::vector<Complex> all(zeros.begin(), zeros.end());
  all.push_back(Complex{});
  const ComplexPolynomial poly = ComplexPolynomial::from_roots(all);
  const RootSet crit = poly_roots(poly_derivative(poly), tol);

  PolyQuotients out;
  out.critical_points = crit.expanded();
  const double denom = std::abs(derivative_at_zero);
  for (const Complex& b : out.critical_points) {
    if (std::abs(b) < 1e-13) {
      throw Error(ErrorKind::kDegenerateQuotient, "critical point at the origin");
    }
    // |P(b)/b| = prod |b - a_i|
    double value = 1.0;
    for (const Complex& a : zeros) value *= std::abs(b - a);
    out.values.push_back(value / denom);
  }
  out.min = *std::min_element(out.values.begin(), out.values.end());
  out.max = *std::max_element(out.values.begin(), out.values.end());
  return out;
}

}  // namespace smalelab
