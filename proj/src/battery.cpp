#include "smalelab/battery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>

#include "smalelab/critical.hpp"
#include "smalelab/error.hpp"
#include "smalelab/mobius.hpp"
#include "smalelab/roots.hpp"
#include "smalelab/search.hpp"
#include "parallel.hpp"

namespace smalelab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

enum CheckId : std::size_t {
  kThm1,
  kThm3,
  kCriticalCount,
  kReflection,
  kBoundary,
  kPreimages,
  kNormalization,
  kSchwarzPick,
  kReciprocity,
  kComposition,
  kRotation,
  kPolynomialLower,
  kProp1Second,
  kProp1First,
  kCheckCount
};

struct CheckDef {
  const char* id;
  const char* description;
  bool assertion;
  bool strict;  // margin must be > 0 rather than >= 0
};

constexpr CheckDef kCheckDefs[kCheckCount] = {
    {"thm1_upper", "S(B) <= thm1_bound(n) + 1e-9", true, false},
    {"thm3_lower", "T(B) > 4^-n", true, true},
    {"critical_count", "interior critical multiplicity = n - 1", true, false},
    {"reflection_symmetry", "exterior roots of B' reflect the interior ones within 1e-8", true, false},
    {"boundary_modulus", "| |B| - 1 | <= 1e-10 on the circle", true, false},
    {"preimage_count", "B(z) = w has n solutions in the disk", true, false},
    {"normalization_invariance", "hyperbolic quotients at w match those of the normalized product within 1e-9", true,
     false},
    {"schwarz_pick", "|D_H B(z)| <= 1 + 1e-12", true, false},
    {"reflection_identity", "B(1/conj z) conj B(z) = 1 within 1e-9", true, false},
    {"composition_consistency", "(B o M)(z) = B(M(z)) within 1e-10", true, false},
    {"rotation_invariance", "rotating the zeros keeps the quotient multiset within 1e-10", true, false},
    {"polynomial_lower", "max polynomial quotient > 4^-n", true, true},
    {"prop1_second", "max quotient >= 2^-n whenever min |B(zeta)| >= 1/2", true, false},
    {"prop1_first", "min quotient <= selected first-inequality bound whenever min |B(zeta)| >= 1/2", false, false},
};

struct Outcome {
  bool applicable = false;
  double margin = 0.0;
  std::string detail;
};

struct SampleResult {
  std::string source;
  BlaschkeProduct product{0.0, {Complex{}}};
  std::vector<Complex> poly_zeros;
  Outcome outcomes[kCheckCount];
  std::optional<Prop1Report> prop1;
  std::string prop1_error;
};

Complex random_in_disk(std::mt19937_64& rng, double radius) {
  return std::polar(radius * std::sqrt(uniform01(rng)), 2.0 * std::numbers::pi * uniform01(rng));
}

double multiset_distance(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

std::vector<double> report_values(const QuotientReport& r) {
  std::vector<double> v;
  for (const auto& q : r.quotients) v.push_back(q.value);
  return v;
}

// Evaluation point for the normalization check: inside |w| <= 0.5 and kept
// hyperbolically away from every critical point so the quotient is well
// conditioned.
Complex pick_normalization_point(std::mt19937_64& rng, const std::vector<Complex>& crit) {
  Complex w{};
  for (int attempt = 0; attempt < 64; ++attempt) {
    w = random_in_disk(rng, 0.5);
    bool clear = true;
    for (const Complex& c : crit) clear = clear && std::abs(pseudo_hyperbolic(c, w)) > 0.05;
    if (clear) break;
  }
  return w;
}

template <class F>
void run_check(Outcome& out, bool included, F&& body) {
  try {
    out.margin = body();
    out.applicable = true;
  } catch (const Error& e) {
    // A file product outside the normalized class is not a counterexample.
    if (included && is_domain_error(e.kind())) return;
    out.applicable = true;
    out.margin = kNegInf;
    out.detail = e.what();
  } catch (const std::exception& e) {
    out.applicable = true;
    out.margin = kNegInf;
    out.detail = e.what();
  }
}

void evaluate(SampleResult& s, std::mt19937_64& rng, const BatteryOptions& opt, bool included) {
  const BlaschkeProduct& b = s.product;
  const int n = b.degree();
  auto& o = s.outcomes;

  std::optional<QuotientReport> report;
  run_check(o[kThm1], included, [&] {
    report = smale_quotients(b, opt.tol);
    return thm1_bound(n) + kUpperBoundSlack - report->S;
  });
  if (report) {
    o[kThm3].applicable = true;
    o[kThm3].margin = report->T - thm3_lower(n);
  } else {
    o[kThm3] = o[kThm1];
  }

  std::optional<CriticalSet> crit;
  run_check(o[kCriticalCount], included, [&] {
    crit = critical_points(b, opt.tol);
    return 0.0 - std::abs(static_cast<double>(crit->total_multiplicity() - (n - 1)));
  });
  if (crit) {
    o[kReflection].applicable = true;
    o[kReflection].margin = kReflectionTolerance - crit->reflection_error;
  } else {
    o[kReflection] = o[kCriticalCount];
  }

  run_check(o[kBoundary], included, [&] { return 1e-10 - boundary_modulus_check(b, 256); });

  run_check(o[kPreimages], included, [&] {
    double worst = 0.0;
    for (int t = 0; t < opt.targets; ++t) {
      const Complex w = random_in_disk(rng, 0.95);
      const auto pre = preimages(b, w, opt.tol);
      worst = std::min(worst, 0.0 - std::abs(static_cast<double>(pre.size()) - n));
    }
    return worst;
  });

  run_check(o[kNormalization], included, [&] {
    const Complex w = pick_normalization_point(rng, crit ? crit->expanded() : std::vector<Complex>{});
    const auto general = general_quotients(b, w, opt.tol);
    const auto normalized = report_values(smale_quotients(normalize(b, w), opt.tol));
    return 1e-9 - multiset_distance(general, normalized);
  });

  run_check(o[kSchwarzPick], included, [&] {
    double worst = 0.0;
    for (int t = 0; t < opt.targets; ++t) {
      worst = std::max(worst, std::abs(hyperbolic_derivative(b, random_in_disk(rng, 0.99))) - 1.0);
    }
    return 1e-12 - worst;
  });

  run_check(o[kReciprocity], included, [&] {
    double worst = 0.0;
    for (int t = 0; t < opt.targets; ++t) {
      Complex z = random_in_disk(rng, 0.99);
      if (std::abs(z) < 1e-3) z = 1e-3;
      const Complex outside = 1.0 / std::conj(z);
      worst = std::max(worst, std::abs(b_eval(b, outside) * std::conj(b_eval(b, z)) - 1.0));
    }
    return 1e-9 - worst;
  });

  run_check(o[kComposition], included, [&] {
    const MobiusAutomorphism m(2.0 * std::numbers::pi * uniform01(rng), random_in_disk(rng, 0.9));
    const BlaschkeProduct composed = compose_pre(b, m);
    double worst = 0.0;
    for (int t = 0; t < opt.targets; ++t) {
      const Complex z = random_in_disk(rng, 0.99);
      worst = std::max(worst, std::abs(b_eval(composed, z) - b_eval(b, m(z))));
    }
    return 1e-10 - worst;
  });

  run_check(o[kRotation], included, [&] {
    const Complex turn = std::polar(1.0, 2.0 * std::numbers::pi * uniform01(rng));
    std::vector<Complex> zeros(b.zeros().begin(), b.zeros().end());
    for (Complex& z : zeros) z *= turn;
    const auto base = report ? report_values(*report) : report_values(smale_quotients(b, opt.tol));
    return 1e-10 - multiset_distance(base, report_values(smale_quotients(BlaschkeProduct(b.rotation(), zeros), opt.tol)));
  });

  if (!included) {
    // Polynomial z prod (z - a_i) with the same zero law, scaled
    // arbitrarily since the quotient is scale free.
    const double scale = std::exp(4.0 * uniform01(rng) - 2.0);
    for (int k = 1; k < n; ++k) s.poly_zeros.push_back(scale * random_in_disk(rng, 1.0));
    run_check(o[kPolynomialLower], false, [&] {
      return poly_smale_quotients(s.poly_zeros, opt.tol).max - thm3_lower(n);
    });
  }

  try {
    s.prop1 = prop1_check(b, opt.variant, opt.tol);
    if (s.prop1->hypothesis_met) {
      o[kProp1Second].applicable = true;
      o[kProp1Second].margin = s.prop1->max_quotient - s.prop1->lower_bound;
      o[kProp1First].applicable = true;
      const double bound = opt.variant == BoundVariant::kKoebe4 ? s.prop1->koebe4_bound : s.prop1->stated_bound;
      o[kProp1First].margin = bound - s.prop1->min_quotient;
    }
  } catch (const Error& e) {
    s.prop1_error = e.what();
  }
}

bool passes(const CheckDef& def, double margin) { return def.strict ? margin > 0.0 : margin >= 0.0; }

}  // namespace

bool BatteryReport::all_assertions_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckSummary& c) { return c.ok(); });
}

BatteryReport run_battery(const BatteryOptions& options) {
  if (options.n_min < 2 || options.n_max < options.n_min || options.n_max > 12) {
    throw Error(ErrorKind::kDomain, "degree range must satisfy 2 <= n_min <= n_max <= 12");
  }
  if (options.samples < 0 || options.targets < 1) throw Error(ErrorKind::kDomain, "samples must be >= 0");

  const int degrees = options.n_max - options.n_min + 1;
  const int sampled = degrees * options.samples;
  const int total = sampled + static_cast<int>(options.included.size());
  std::vector<SampleResult> results(static_cast<std::size_t>(total));

  detail::parallel_for(total, options.threads, [&](int i) {
    SampleResult& s = results[static_cast<std::size_t>(i)];
    if (i < sampled) {
      const int n = options.n_min + i / std::max(options.samples, 1);
      const int k = i % std::max(options.samples, 1);
      auto rng = stream_rng(options.seed, (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint64_t>(k));
      s.source = "n=" + std::to_string(n) + " sample " + std::to_string(k);
      s.product = sample_blaschke(n, rng);
      evaluate(s, rng, options, false);
    } else {
      const auto& [name, product] = options.included[static_cast<std::size_t>(i - sampled)];
      auto rng = stream_rng(options.seed, 0xffffffff00000000ULL + static_cast<std::uint64_t>(i - sampled));
      s.source = name;
      s.product = product;
      evaluate(s, rng, options, true);
    }
  });

  BatteryReport report;
  report.options = options;
  for (const CheckDef& def : kCheckDefs) {
    CheckSummary c;
    c.id = def.id;
    c.description = def.description;
    c.assertion = def.assertion;
    c.worst_margin = std::numeric_limits<double>::infinity();
    report.checks.push_back(c);
  }

  Prop1Summary& p = report.prop1;
  for (int i = 0; i < total; ++i) {
    const SampleResult& s = results[static_cast<std::size_t>(i)];
    for (std::size_t id = 0; id < kCheckCount; ++id) {
      const Outcome& o = s.outcomes[id];
      if (!o.applicable) continue;
      CheckSummary& c = report.checks[id];
      ++c.samples;
      c.worst_margin = std::min(c.worst_margin, o.margin);
      if (passes(kCheckDefs[id], o.margin)) {
        ++c.passes;
      } else if (c.counterexamples.size() < kMaxCounterexamples) {
        const bool poly = id == kPolynomialLower;
        c.counterexamples.push_back(Counterexample{
            s.source, poly, poly ? 0.0 : s.product.rotation(),
            poly ? s.poly_zeros : std::vector<Complex>(s.product.zeros().begin(), s.product.zeros().end()), o.margin,
            o.detail});
      }
    }

    const bool is_included = i >= sampled;
    if (!s.prop1) {
      if (is_included) {
        Prop1Report failed;
        failed.degree = s.product.degree();
        failed.log.push_back("not evaluated: " + s.prop1_error);
        p.reports.emplace_back(s.source, failed);
      }
      continue;
    }
    const Prop1Report& r = *s.prop1;
    ++p.evaluated;
    if (r.hypothesis_met) {
      ++p.hypothesis_met;
      const bool stated_exceeded = r.min_quotient > r.stated_bound;
      p.stated_exceeded += stated_exceeded;
      p.koebe4_exceeded += r.min_quotient > r.koebe4_bound;
      p.second_failed += !(r.max_quotient >= r.lower_bound);
      p.worst_stated_ratio = std::max(p.worst_stated_ratio, r.min_quotient / r.stated_bound);
      if (!is_included && stated_exceeded && p.reports.size() < kMaxCounterexamples) p.reports.emplace_back(s.source, r);
    }
    if (is_included) p.reports.emplace_back(s.source, r);
  }
  for (auto& c : report.checks) {
    if (c.samples == 0) c.worst_margin = 0.0;
  }
  return report;
}

}  // namespace smalelab
