#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "smalelab/blaschke.hpp"
#include "smalelab/smale.hpp"

namespace smalelab {

struct SampleOptions {
  double r_max = 0.95;
  double u_min = 1e-6;  // keeps nonzero zeros away from the origin
};

/// Zeros {0} plus n - 1 points at radius r_max sqrt(u), uniform angle.
BlaschkeProduct sample_blaschke(int n, std::mt19937_64& rng, const SampleOptions& options = {});

/// Independent per-index generator derived from a master seed (splitmix64).
std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index);

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double uniform01(std::mt19937_64& rng);

enum class Objective { kMaxS, kMinT };

std::string to_string(Objective objective);

struct SearchOptions {
  int restarts = 200;
  int budget = 2000;  // objective evaluations per restart
  std::uint64_t seed = 0;
  int threads = 0;  // 0 picks the hardware concurrency
};

struct SearchResult {
  int n = 0;
  Objective objective = Objective::kMaxS;
  double best_value = 0.0;
  BlaschkeProduct best_product;
  QuotientReport quotient_report;
  std::uint64_t seed = 0;
  std::int64_t evaluations = 0;
  int restarts = 0;
  int budget = 0;
  int best_restart = 0;
  double wall_seconds = 0.0;
  double revalidation_error = 0.0;  // |best_value - recomputed S or T|
  double boundary_deviation = 0.0;
  bool exceeds_one = false;  // an S above 1 was found
};

// Zeros closer than this to the origin are scored as failures by the search
// objective; the quotient loses its significant digits there.
inline constexpr double kSearchMinZeroModulus = 1e-6;

/// Plane-to-disk bijection (x, y) -> (x + iy) / (1 + |x + iy|) and its inverse.
Complex plane_to_disk(double x, double y);
std::pair<double, double> disk_to_plane(Complex z);

/// Objective at a parameter vector of 2(n - 1) reals; failures give the
/// worst value for the direction (-inf for kMaxS, +inf for kMinT).
double search_objective(std::span<const double> params, Objective objective);

/// Multi-start Nelder-Mead over the nonzero zeros, warm-started from the
/// explicit families; restarts run in parallel and merge by index.
SearchResult estimate_Kn(int n, const SearchOptions& options = {});
SearchResult estimate_Ln(int n, const SearchOptions& options = {});

}  // namespace smalelab
