#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smalelab/blaschke.hpp"
#include "smalelab/critical.hpp"

namespace smalelab {

// Slack allowed above the upper bound before a sample counts as a violation.
inline constexpr double kUpperBoundSlack = 1e-9;

struct QuotientEntry {
  Complex zeta;
  double value;
};

/// A failed inequality: lhs should have been on the right side of rhs;
/// margin is negative by the amount of the violation.
struct ViolationFlag {
  std::string id;
  double lhs;
  double rhs;
  double margin;
};

struct QuotientReport {
  BlaschkeProduct product;
  std::vector<QuotientEntry> quotients;  // one per critical point, with multiplicity
  double S = 0.0;
  double T = 0.0;
  std::vector<std::size_t> s_indices;  // every entry attaining S
  std::vector<std::size_t> t_indices;  // every entry attaining T
  double thm1_bound = 0.0;
  double thm3_lower = 0.0;
  double reflection_error = 0.0;
  std::vector<ViolationFlag> flags;
};

/// |B(zeta)| / (|zeta| |B'(0)|) at every critical point of a product with a
/// simple zero at the origin. The rotation does not affect the values.
QuotientReport smale_quotients(const BlaschkeProduct& b, double tol = 1e-12);

/// |[B(zeta), B(w)] / [zeta, w]| / |D_H B(w)| at every critical point.
std::vector<double> general_quotients(const BlaschkeProduct& b, Complex w, double tol = 1e-12);

/// Upper bound 2 (2n - 1 + (2n - 3) 4^{1/(1-n)}) / (2n - 1) on sup S.
double thm1_bound(int n);

/// Strict lower bound 4^{-n} on every T.
double thm3_lower(int n);

/// max{2r, 4r / (1 + 4r^2)} for r in (0, 1).
double lemma1_bound(double r);

enum class BoundVariant { kStated, kKoebe4, kBoth };

struct Prop1Report {
  int degree = 0;
  double r = 0.0;  // min |B(zeta)| over critical points
  bool hypothesis_met = false;
  double min_quotient = 0.0;
  double max_quotient = 0.0;
  double stated_bound = 0.0;  // 4^{(n-2)/(n-1)} * 2/3
  double koebe4_bound = 0.0;  // 4 * 2/3
  double lower_bound = 0.0;   // 2^{-n}
  // Set only when the hypothesis r >= 1/2 holds.
  std::optional<bool> first_holds_stated;
  std::optional<bool> first_holds_koebe4;
  std::optional<bool> second_holds;
  std::vector<std::string> log;
};

/// Evaluates both inequalities of the r >= 1/2 criterion and records every
/// comparison; never throws on a failed comparison.
Prop1Report prop1_check(const BlaschkeProduct& b, BoundVariant variant = BoundVariant::kBoth,
                        double tol = 1e-12);

}  // namespace smalelab
