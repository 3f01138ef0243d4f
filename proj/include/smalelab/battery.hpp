#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smalelab/blaschke.hpp"
#include "smalelab/smale.hpp"

namespace smalelab {

struct BatteryOptions {
  int n_min = 2;
  int n_max = 8;
  int samples = 1000;  // per degree
  std::uint64_t seed = 0;
  double tol = 1e-12;
  int threads = 0;
  int targets = 16;  // preimage targets and random test points per sample
  BoundVariant variant = BoundVariant::kBoth;
  // Extra products run through every check after the sampled ones.
  std::vector<std::pair<std::string, BlaschkeProduct>> included;
};

/// A failing sample, kept verbatim. For the polynomial check, zeros are the
/// nonzero roots a_i of z prod (z - a_i) and rotation is unused.
struct Counterexample {
  std::string source;
  bool polynomial = false;
  double rotation = 0.0;
  std::vector<Complex> zeros;
  double margin = 0.0;
  std::string detail;
};

/// margin >= 0 passes (strictly > 0 for the strict checks); worst_margin is
/// the smallest margin seen.
struct CheckSummary {
  std::string id;
  std::string description;
  bool assertion = true;
  std::int64_t samples = 0;
  std::int64_t passes = 0;
  double worst_margin = 0.0;
  std::vector<Counterexample> counterexamples;  // first few failures
  bool ok() const { return !assertion || passes == samples; }
};

struct Prop1Summary {
  std::int64_t evaluated = 0;
  std::int64_t hypothesis_met = 0;
  std::int64_t stated_exceeded = 0;
  std::int64_t koebe4_exceeded = 0;
  std::int64_t second_failed = 0;
  double worst_stated_ratio = 0.0;  // max of min_quotient / stated bound
  std::vector<std::pair<std::string, Prop1Report>> reports;  // included products and first stated excesses
};

struct BatteryReport {
  BatteryOptions options;
  std::vector<CheckSummary> checks;
  Prop1Summary prop1;
  bool all_assertions_pass() const;
};

inline constexpr std::size_t kMaxCounterexamples = 8;

/// Samples `samples` products per degree in [n_min, n_max] and runs every
/// structural and inequality check on each, in parallel; merging is in sample
/// order so the report does not depend on the worker count.
BatteryReport run_battery(const BatteryOptions& options);

}  // namespace smalelab
