#include "smalelab/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "smalelab/error.hpp"
#include "smalelab/families.hpp"
#include "parallel.hpp"

namespace smalelab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<double> to_params(const BlaschkeProduct& b) {
  std::vector<double> params;
  bool skipped_origin = false;
  for (const Complex& z : b.zeros()) {
    if (z == Complex{} && !skipped_origin) {
      skipped_origin = true;
      continue;
    }
    const auto [x, y] = disk_to_plane(z);
    params.push_back(x);
    params.push_back(y);
  }
  return params;
}

BlaschkeProduct from_params(std::span<const double> params) {
  std::vector<Complex> zeros{Complex{}};
  for (std::size_t i = 0; i + 1 < params.size(); i += 2) zeros.push_back(plane_to_disk(params[i], params[i + 1]));
  return BlaschkeProduct(0.0, std::move(zeros));
}

std::vector<std::vector<double>> warm_starts(int n, Objective objective) {
  std::vector<std::vector<double>> out;
  if (objective == Objective::kMaxS) {
    for (const double beta : {0.99999, 0.9999, 0.999, 0.99, 0.9}) {
      const double alpha = std::pow(beta, 1.0 / (n - 1));
      if (alpha < kFamilyEdge) out.push_back(to_params(thm2_family(n, alpha)));
    }
  } else {
    for (const double a : {0.01, 0.05, 0.2, 0.5}) out.push_back(to_params(thm4_family(n, a)));
  }
  return out;
}

struct RestartOutcome {
  double value = kInf;  // minimized quantity
  std::vector<double> params;
  std::int64_t evaluations = 0;
};

// Nelder-Mead on `sign * objective`, reinitialized around the incumbent
// whenever the simplex collapses, until exactly `budget` evaluations are spent.
RestartOutcome nelder_mead(std::vector<double> x0, Objective objective, int budget) {
  const double sign = objective == Objective::kMaxS ? -1.0 : 1.0;
  const std::size_t dim = x0.size();
  RestartOutcome best;
  best.params = x0;

  auto f = [&](const std::vector<double>& x) -> std::optional<double> {
    if (best.evaluations >= budget) return std::nullopt;
    ++best.evaluations;
    const double v = sign * search_objective(x, objective);
    if (v < best.value) {
      best.value = v;
      best.params = x;
    }
    return v;
  };

  struct Vertex {
    std::vector<double> x;
    double f;
  };
  auto build_simplex = [&](const std::vector<double>& center, double scale) -> std::optional<std::vector<Vertex>> {
    std::vector<Vertex> s;
    const auto f0 = f(center);
    if (!f0) return std::nullopt;
    s.push_back({center, *f0});
    for (std::size_t i = 0; i < dim; ++i) {
      std::vector<double> x = center;
      x[i] += scale * std::max(1.0, std::abs(x[i]));
      const auto fx = f(x);
      if (!fx) return std::nullopt;
      s.push_back({std::move(x), *fx});
    }
    return s;
  };

  double scale = 0.1;
  auto simplex = build_simplex(x0, scale);
  while (simplex) {
    auto& s = *simplex;
    std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    double diameter = 0.0;
    for (std::size_t i = 1; i <= dim; ++i) {
      for (std::size_t k = 0; k < dim; ++k) {
        diameter = std::max(diameter, std::abs(s[i].x[k] - s[0].x[k]) / std::max(1.0, std::abs(s[0].x[k])));
      }
    }
    if (diameter < 1e-13 || (std::isfinite(s[0].f) && s[dim].f - s[0].f <= 1e-16 * std::abs(s[0].f))) {
      scale = scale > 1e-4 ? scale * 0.5 : 0.1;
      simplex = build_simplex(best.params, scale);
      continue;
    }

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += s[i].x[k] / static_cast<double>(dim);
    }
    auto along = [&](double t) {
      std::vector<double> x(dim);
      for (std::size_t k = 0; k < dim; ++k) x[k] = centroid[k] + t * (s[dim].x[k] - centroid[k]);
      return x;
    };

    auto xr = along(-1.0);
    const auto fr = f(xr);
    if (!fr) break;
    if (*fr < s[0].f) {
      auto xe = along(-2.0);
      const auto fe = f(xe);
      if (!fe) break;
      s[dim] = *fe < *fr ? Vertex{std::move(xe), *fe} : Vertex{std::move(xr), *fr};
      continue;
    }
    if (*fr < s[dim - 1].f) {
      s[dim] = {std::move(xr), *fr};
      continue;
    }
    const bool outside = *fr < s[dim].f;
    auto xc = along(outside ? -0.5 : 0.5);
    const auto fc = f(xc);
    if (!fc) break;
    if (*fc < std::min(*fr, s[dim].f) || (!outside && *fc < s[dim].f)) {
      s[dim] = {std::move(xc), *fc};
      continue;
    }
    bool exhausted = false;
    for (std::size_t i = 1; i <= dim && !exhausted; ++i) {
      for (std::size_t k = 0; k < dim; ++k) s[i].x[k] = s[0].x[k] + 0.5 * (s[i].x[k] - s[0].x[k]);
      const auto fi = f(s[i].x);
      if (!fi) {
        exhausted = true;
      } else {
        s[i].f = *fi;
      }
    }
    if (exhausted) break;
  }
  return best;
}

SearchResult estimate(int n, Objective objective, const SearchOptions& options) {
  if (n < 2) throw Error(ErrorKind::kDomain, "search needs degree n >= 2");
  if (options.restarts < 1 || options.budget < 1) {
    throw Error(ErrorKind::kDomain, "restarts and budget must be positive");
  }
  const auto started = std::chrono::steady_clock::now();
  const auto warm = warm_starts(n, objective);

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(options.restarts));
  detail::parallel_for(options.restarts, options.threads, [&](int i) {
    std::vector<double> x0;
    if (static_cast<std::size_t>(i) < warm.size()) {
      x0 = warm[static_cast<std::size_t>(i)];
    } else {
      auto rng = stream_rng(options.seed, static_cast<std::uint64_t>(i));
      x0 = to_params(sample_blaschke(n, rng));
    }
    outcomes[static_cast<std::size_t>(i)] = nelder_mead(std::move(x0), objective, options.budget);
  });

  std::int64_t evaluations = 0;
  int best_index = -1;
  for (int i = 0; i < options.restarts; ++i) {
    const auto& o = outcomes[static_cast<std::size_t>(i)];
    evaluations += o.evaluations;
    if (std::isfinite(o.value) && (best_index < 0 || o.value < outcomes[static_cast<std::size_t>(best_index)].value)) {
      best_index = i;
    }
  }
  if (best_index < 0) throw Error(ErrorKind::kSearchFailure, "no restart produced a successful evaluation");

  const auto& best = outcomes[static_cast<std::size_t>(best_index)];
  BlaschkeProduct product = from_params(best.params);
  QuotientReport report = smale_quotients(product);
  const double value = objective == Objective::kMaxS ? -best.value : best.value;
  SearchResult result{n,       objective, value,     product,    report,
                      options.seed, evaluations, options.restarts, options.budget, best_index};
  result.revalidation_error = std::abs(value - (objective == Objective::kMaxS ? report.S : report.T));
  result.boundary_deviation = boundary_modulus_check(product, 1024);
  result.exceeds_one = objective == Objective::kMaxS && value > 1.0;
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

}  // namespace

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

BlaschkeProduct sample_blaschke(int n, std::mt19937_64& rng, const SampleOptions& options) {
  if (n < 2) throw Error(ErrorKind::kDomain, "sampling needs degree n >= 2");
  std::vector<Complex> zeros{Complex{}};
  for (int k = 1; k < n; ++k) {
    const double u = options.u_min + (1.0 - options.u_min) * uniform01(rng);
    const double angle = 2.0 * std::numbers::pi * uniform01(rng);
    zeros.push_back(std::polar(options.r_max * std::sqrt(u), angle));
  }
  return BlaschkeProduct(0.0, std::move(zeros));
}

std::string to_string(Objective objective) { return objective == Objective::kMaxS ? "max_S" : "min_T"; }

Complex plane_to_disk(double x, double y) {
  const double r = std::hypot(x, y);
  return {x / (1.0 + r), y / (1.0 + r)};
}

std::pair<double, double> disk_to_plane(Complex z) {
  const double s = 1.0 - std::abs(z);
  return {z.real() / s, z.imag() / s};
}

double search_objective(std::span<const double> params, Objective objective) {
  const double worst = objective == Objective::kMaxS ? -kInf : kInf;
  for (double p : params) {
    if (!std::isfinite(p)) return worst;
  }
  try {
    const BlaschkeProduct b = from_params(params);
    for (const Complex& z : b.zeros()) {
      if (z != Complex{} && std::abs(z) < kSearchMinZeroModulus) return worst;
    }
    const QuotientReport report = smale_quotients(b);
    return objective == Objective::kMaxS ? report.S : report.T;
  } catch (const Error&) {
    return worst;
  }
}

SearchResult estimate_Kn(int n, const SearchOptions& options) { return estimate(n, Objective::kMaxS, options); }

SearchResult estimate_Ln(int n, const SearchOptions& options) { return estimate(n, Objective::kMinT, options); }

}  // namespace smalelab
