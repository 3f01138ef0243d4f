#include "smalelab/smale.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "smalelab/error.hpp"

namespace smalelab {

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kDegenerateZeta = 1e-13;

std::string format_comparison(const std::string& what, double lhs, const char* op, double rhs, bool holds) {
  std::ostringstream os;
  os.precision(17);
  os << what << ": " << lhs << ' ' << op << ' ' << rhs << (holds ? " holds" : " FAILS")
     << " (margin " << (holds ? std::abs(rhs - lhs) : -std::abs(rhs - lhs)) << ")";
  return os.str();
}

}  // namespace

QuotientReport smale_quotients(const BlaschkeProduct& b, double tol) {
  const int n = b.degree();
  if (n < 2) throw Error(ErrorKind::kNoCriticalPoints, "degree-1 products have no critical points");
  const int origin = b.origin_multiplicity();
  if (origin == 0) throw Error(ErrorKind::kNotNormalized, "product has no zero at the origin");
  if (origin >= 2) {
    throw Error(ErrorKind::kVanishingDerivative,
                "zero at the origin has multiplicity " + std::to_string(origin) + ", so B'(0) = 0");
  }
  const double derivative = std::abs(derivative_at_origin(b));
  if (!(derivative > 0.0)) throw Error(ErrorKind::kVanishingDerivative, "B'(0) = 0");

  const CriticalSet crit = critical_points(b, tol);
  QuotientReport report{b, {}, 0.0, 0.0, {}, {}, thm1_bound(n), thm3_lower(n), crit.reflection_error, {}};
  for (const Complex& zeta : crit.expanded()) {
    if (std::abs(zeta) < kDegenerateZeta) {
      throw Error(ErrorKind::kDegenerateQuotient, "critical point numerically at the origin");
    }
    report.quotients.push_back({zeta, std::abs(b_eval(b, zeta)) / (std::abs(zeta) * derivative)});
  }
  const auto [lo, hi] = std::minmax_element(report.quotients.begin(), report.quotients.end(),
                                            [](const auto& a, const auto& c) { return a.value < c.value; });
  report.S = lo->value;
  report.T = hi->value;
  for (std::size_t i = 0; i < report.quotients.size(); ++i) {
    const double v = report.quotients[i].value;
    if (v <= report.S * (1.0 + kTieTolerance)) report.s_indices.push_back(i);
    if (v >= report.T * (1.0 - kTieTolerance)) report.t_indices.push_back(i);
  }
  if (report.S > report.thm1_bound + kUpperBoundSlack) {
    report.flags.push_back({"thm1_upper", report.S, report.thm1_bound, report.thm1_bound - report.S});
  }
  if (!(report.T > report.thm3_lower)) {
    report.flags.push_back({"thm3_lower", report.T, report.thm3_lower, report.T - report.thm3_lower});
  }
  return report;
}

std::vector<double> general_quotients(const BlaschkeProduct& b, Complex w, double tol) {
  if (!(std::abs(w) < 1.0)) throw Error(ErrorKind::kDomain, "evaluation point must lie in the disk");
  const Complex hyp = hyperbolic_derivative(b, w);
  if (!(std::abs(hyp) > 1e-12)) {
    throw Error(ErrorKind::kDegenerateNormalization, "B'(w) vanishes at the evaluation point");
  }
  const Complex bw = b_eval(b, w);
  std::vector<double> out;
  for (const Complex& zeta : critical_points(b, tol).expanded()) {
    const Complex dz = pseudo_hyperbolic(zeta, w);
    if (std::abs(dz) < kDegenerateZeta) {
      throw Error(ErrorKind::kDegenerateNormalization, "evaluation point is a critical point");
    }
    out.push_back(std::abs(pseudo_hyperbolic(b_eval(b, zeta), bw)) / std::abs(dz) / std::abs(hyp));
  }
  return out;
}

double thm1_bound(int n) {
  if (n < 2) throw Error(ErrorKind::kDomain, "bound defined for n >= 2");
  const double m = 2.0 * n - 1.0;
  return 2.0 * (m + (2.0 * n - 3.0) * std::pow(4.0, 1.0 / (1.0 - n))) / m;
}

double thm3_lower(int n) {
  if (n < 2) throw Error(ErrorKind::kDomain, "bound defined for n >= 2");
  return std::pow(4.0, -n);
}

double lemma1_bound(double r) {
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorKind::kDomain, "r must lie in (0, 1)");
  return std::max(2.0 * r, 4.0 * r / (1.0 + 4.0 * r * r));
}

Prop1Report prop1_check(const BlaschkeProduct& b, BoundVariant variant, double tol) {
  const QuotientReport q = smale_quotients(b, tol);
  const int n = b.degree();
  Prop1Report out;
  out.degree = n;
  out.r = std::abs(b_eval(b, q.quotients.front().zeta));
  for (const auto& e : q.quotients) out.r = std::min(out.r, std::abs(b_eval(b, e.zeta)));
  out.hypothesis_met = out.r >= 0.5;
  out.min_quotient = q.S;
  out.max_quotient = q.T;
  out.stated_bound = std::pow(4.0, (n - 2.0) / (n - 1.0)) * 2.0 / 3.0;
  out.koebe4_bound = 4.0 * 2.0 / 3.0;
  out.lower_bound = std::pow(2.0, -n);

  std::ostringstream head;
  head.precision(17);
  head << "n = " << n << ", r = min|B(zeta)| = " << out.r;
  out.log.push_back(head.str());
  if (!out.hypothesis_met) {
    out.log.push_back("hypothesis r >= 1/2 not met; inequalities not applicable");
    return out;
  }
  if (variant != BoundVariant::kKoebe4) {
    out.first_holds_stated = out.min_quotient <= out.stated_bound;
    out.log.push_back(format_comparison("first inequality, stated constant", out.min_quotient, "<=",
                                        out.stated_bound, *out.first_holds_stated));
  }
  if (variant != BoundVariant::kStated) {
    out.first_holds_koebe4 = out.min_quotient <= out.koebe4_bound;
    out.log.push_back(format_comparison("first inequality, constant 4", out.min_quotient, "<=",
                                        out.koebe4_bound, *out.first_holds_koebe4));
  }
  out.second_holds = out.max_quotient >= out.lower_bound;
  out.log.push_back(
      format_comparison("second inequality", out.max_quotient, ">=", out.lower_bound, *out.second_holds));
  return out;
}

}  // namespace smalelab
