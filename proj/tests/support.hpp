#pragma once

#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "smalelab/polynomial.hpp"

namespace testing {

using smalelab::Complex;

inline std::mt19937_64 rng_for(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Complex point_in_disk(std::mt19937_64& rng, double radius) {
  return std::polar(radius * std::sqrt(uniform(rng)), 2.0 * std::numbers::pi * uniform(rng));
}

// Smallest total displacement when matching b to a greedily; sizes must agree.
inline double match_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return 1e300;
  double worst = 0.0;
  for (const Complex& x : a) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < b.size(); ++j) {
      if (std::abs(x - b[j]) < std::abs(x - b[best])) best = j;
    }
    worst = std::max(worst, std::abs(x - b[best]));
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return worst;
}

}  // namespace testing
