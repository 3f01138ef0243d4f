#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "smalelab/battery.hpp"
#include "smalelab/critical.hpp"
#include "smalelab/error.hpp"
#include "smalelab/families.hpp"
#include "smalelab/io.hpp"
#include "smalelab/search.hpp"
#include "smalelab/smale.hpp"

namespace smalelab::cli {

namespace {

using io::Json;

constexpr const char* kToolVersion = "0.1.0";

// Usage problems found after CLI11 accepted the flags.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::uint64_t seed = 0;
  double tol = 1e-12;
  std::string format = "json";
  std::string out;
  bool no_meta = false;
  int threads = 0;
  std::vector<std::string> include_files;
};

// One emitted artifact: a JSON document and its flattened CSV table.
struct Emission {
  Json document;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
};

std::string num(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

// Full-token double parse; returns nullopt on trailing junk.
std::optional<double> parse_real(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::size_t used = 0;
  try {
    const double v = std::stod(s, &used);
    if (used != s.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// Accepts "0.5", "-0.2", "0.3+0.4i", "0.3-0.4i", "0.4i", "-i".
std::optional<Complex> parse_complex(const std::string& token) {
  if (token.empty()) return std::nullopt;
  if (token.back() != 'i' && token.back() != 'j') {
    const auto re = parse_real(token);
    if (!re) return std::nullopt;
    return Complex(*re, 0.0);
  }
  const std::string body = token.substr(0, token.size() - 1);
  // Split at the last sign that is not an exponent sign or the leading one.
  std::size_t cut = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      cut = k;
      break;
    }
  }
  const auto imag_of = [](const std::string& s) -> std::optional<double> {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s);
  };
  if (cut == std::string::npos) {
    const auto im = imag_of(body);
    if (!im) return std::nullopt;
    return Complex(0.0, *im);
  }
  const auto re = parse_real(body.substr(0, cut));
  const auto im = imag_of(body.substr(cut));
  if (!re || !im) return std::nullopt;
  return Complex(*re, *im);
}

std::vector<Complex> parse_zero_list(const std::string& text, const std::string& flag) {
  std::vector<Complex> zeros;
  const auto tokens = split(text, ',');
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    const auto z = parse_complex(tokens[k]);
    if (!z) {
      throw io::ParseError(flag + ": item " + std::to_string(k + 1) + " ('" + tokens[k] +
                           "') is not a real or complex number");
    }
    zeros.push_back(*z);
  }
  if (zeros.empty()) throw io::ParseError(flag + ": empty list");
  return zeros;
}

std::vector<double> parse_real_list(const std::string& text, const std::string& flag) {
  std::vector<double> values;
  const auto tokens = split(text, ',');
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    const auto v = parse_real(tokens[k]);
    if (!v) throw io::ParseError(flag + ": item " + std::to_string(k + 1) + " ('" + tokens[k] + "') is not a number");
    values.push_back(*v);
  }
  if (values.empty()) throw io::ParseError(flag + ": empty list");
  return values;
}

// "5" or "2..8".
std::pair<int, int> parse_degree_range(const std::string& text) {
  const auto dots = text.find("..");
  const auto as_int = [&](const std::string& s) {
    const auto v = parse_real(trim(s));
    if (!v || *v != std::floor(*v) || std::abs(*v) > 1e6) {
      throw io::ParseError("--n: '" + text + "' is not a degree or a range lo..hi");
    }
    return static_cast<int>(*v);
  };
  if (dots == std::string::npos) {
    const int n = as_int(text);
    return {n, n};
  }
  return {as_int(text.substr(0, dots)), as_int(text.substr(dots + 2))};
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json base_config(const std::string& command, const Settings& s) {
  Json files = Json::array();
  for (const auto& f : s.include_files) files.push_back(f);
  return Json{{"command", command},       {"seed", s.seed},
              {"tol", s.tol},             {"format", s.format},
              {"out", s.out.empty() ? "-" : s.out},
              {"threads", s.threads},     {"include_files", files}};
}

Json zeros_json(std::span<const Complex> zeros) {
  Json arr = Json::array();
  for (const Complex& z : zeros) arr.push_back(io::complex_to_json(z));
  return arr;
}

void quotient_rows(Emission& e, const std::string& id, const QuotientReport& r) {
  for (std::size_t k = 0; k < r.quotients.size(); ++k) {
    const auto& q = r.quotients[k];
    e.csv_rows.push_back({id, std::to_string(r.product.degree()), std::to_string(k), num(q.zeta.real()),
                          num(q.zeta.imag()), num(q.value), num(r.S), num(r.T)});
  }
}

const std::vector<std::string> kQuotientHeader = {"product_id", "degree", "index", "zeta_re",
                                                  "zeta_im",    "value",  "S",     "T"};

// ---- commands -------------------------------------------------------------

struct QuotientsArgs {
  std::string zeros;
  std::string file;
  double rotation = 0.0;
};

Emission cmd_quotients(const QuotientsArgs& a, const Settings& s) {
  if (a.zeros.empty() == a.file.empty()) throw UsageError("quotients: give exactly one of --zeros or --file");
  const BlaschkeProduct b = a.file.empty() ? BlaschkeProduct(a.rotation, parse_zero_list(a.zeros, "--zeros"))
                                           : io::read_product_file(a.file);
  const QuotientReport report = smale_quotients(b, s.tol);

  Emission e;
  Json config = base_config("quotients", s);
  if (a.file.empty()) {
    config["zeros"] = a.zeros;
    config["rotation"] = a.rotation;
  } else {
    config["file"] = a.file;
  }
  e.document = Json{{"config", config}, {"product", io::product_to_json(b)}, {"report", io::report_to_json(report)}};
  e.csv_header = kQuotientHeader;
  quotient_rows(e, "p0", report);
  return e;
}

struct FamilyArgs {
  std::string which;
  int n = 0;
  std::optional<double> alpha;
  std::optional<double> a;
  std::string save_product;
};

Emission cmd_family(const FamilyArgs& f, const Settings& s) {
  const bool thm2 = f.which == "thm2";
  const auto param = thm2 ? f.alpha : f.a;
  if (!param) throw UsageError(thm2 ? "family thm2: --alpha is required" : "family thm4: --a is required");
  if ((thm2 && f.a) || (!thm2 && f.alpha)) {
    throw UsageError(thm2 ? "family thm2 takes --alpha, not --a" : "family thm4 takes --a, not --alpha");
  }

  const BlaschkeProduct b = thm2 ? thm2_family(f.n, *param) : thm4_family(f.n, *param);
  const QuotientReport report = smale_quotients(b, s.tol);
  const CriticalSet crit = critical_points(b, s.tol);

  Json config = base_config("family", s);
  config["family"] = f.which;
  config["n"] = f.n;
  config[thm2 ? "alpha" : "a"] = *param;
  if (!f.save_product.empty()) config["save_product"] = f.save_product;

  Json doc{{"config", config}, {"family", f.which}, {"product", io::product_to_json(b)}};
  doc["critical_points"] = io::critical_to_json(crit);
  double closed = 0.0;
  double numeric = 0.0;
  if (thm2) {
    const double beta = std::pow(*param, f.n - 1);
    closed = thm2_closed_S(f.n, beta);
    numeric = report.S;
    doc["beta"] = beta;
    doc["closed_critical_points"] = zeros_json(thm2_critical_points(f.n, beta));
    doc["closed_S"] = closed;
    doc["numeric_S"] = numeric;
  } else {
    closed = thm4_closed_T(f.n, *param);
    numeric = report.T;
    doc["closed_critical_point"] = io::complex_to_json(-*param);
    doc["closed_T"] = closed;
    doc["numeric_T"] = numeric;
  }
  doc["difference"] = std::abs(numeric - closed);
  doc["report"] = io::report_to_json(report);

  if (!f.save_product.empty()) {
    std::ofstream file(f.save_product);
    if (!file) throw UsageError("--save-product: cannot write " + f.save_product);
    file << io::dump(io::product_to_json(b)) << '\n';
  }

  Emission e;
  e.document = std::move(doc);
  e.csv_header = kQuotientHeader;
  e.csv_header.insert(e.csv_header.end(), {"closed", "difference"});
  quotient_rows(e, f.which, report);
  for (auto& row : e.csv_rows) {
    row.push_back(num(closed));
    row.push_back(num(std::abs(numeric - closed)));
  }
  return e;
}

struct VerifyArgs {
  std::string n = "2..8";
  int samples = 1000;
  int targets = 16;
  std::string variant = "both";
};

Emission cmd_verify(const VerifyArgs& v, const Settings& s, bool& all_pass) {
  BatteryOptions opt;
  std::tie(opt.n_min, opt.n_max) = parse_degree_range(v.n);
  opt.samples = v.samples;
  opt.targets = v.targets;
  opt.seed = s.seed;
  opt.tol = s.tol;
  opt.threads = s.threads;
  opt.variant = v.variant == "stated" ? BoundVariant::kStated
                : v.variant == "koebe4" ? BoundVariant::kKoebe4
                                        : BoundVariant::kBoth;
  for (const auto& path : s.include_files) opt.included.emplace_back(path, io::read_product_file(path));

  const BatteryReport report = run_battery(opt);
  all_pass = report.all_assertions_pass();

  Json config = base_config("verify", s);
  config["n"] = v.n;
  config["samples"] = v.samples;
  config["targets"] = v.targets;
  config["bound_variant"] = v.variant;

  Emission e;
  e.document = Json{{"config", config}};
  const Json battery = io::battery_to_json(report);
  for (const auto& [key, value] : battery.items()) e.document[key] = value;
  e.csv_header = {"id", "class", "samples", "passes", "worst_margin", "ok"};
  for (const auto& c : report.checks) {
    e.csv_rows.push_back({c.id, c.assertion ? "assertion" : "report", std::to_string(c.samples),
                          std::to_string(c.passes), num(c.worst_margin), c.ok() ? "true" : "false"});
  }
  return e;
}

struct RescaleArgs {
  std::string zeros;
  std::string m = "10,100";
};

Emission cmd_rescale(const RescaleArgs& r, const Settings& s) {
  const auto zeros = parse_zero_list(r.zeros, "--zeros");
  const auto ms = parse_real_list(r.m, "--m");

  Json config = base_config("rescale", s);
  config["zeros"] = r.zeros;
  config["m"] = r.m;

  Emission e;
  e.csv_header = {"m", "index", "value", "limit_value", "identity_residual", "error", "ratio"};
  Json table = Json::array();
  double previous_error = std::numeric_limits<double>::quiet_NaN();
  for (double m : ms) {
    if (!(m > 0.0) || !std::isfinite(m)) {
      throw Error(ErrorKind::kDomain, "--m: scale " + num(m) + " must be positive and finite");
    }
    const RescalePair pair = rescale_family(zeros, m);
    const RescaleQuotients q = rescale_quotients(pair, s.tol);
    Json row = io::rescale_to_json(pair, q);
    row["error"] = q.limit_distance;
    // Ratio of consecutive errors; near (m_k / m_{k-1})^2 for O(1/m^2) decay.
    const double ratio = previous_error / q.limit_distance;
    row["ratio"] = std::isfinite(ratio) ? Json(ratio) : Json(nullptr);
    table.push_back(row);

    std::vector<double> values;
    for (const Complex& v : q.blaschke_values) values.push_back(std::abs(v));
    std::sort(values.begin(), values.end());
    std::vector<double> limits = q.limit_values;
    std::sort(limits.begin(), limits.end());
    for (std::size_t k = 0; k < values.size(); ++k) {
      e.csv_rows.push_back({num(m), std::to_string(k), num(values[k]), k < limits.size() ? num(limits[k]) : "",
                            num(q.identity_residual), num(q.limit_distance), std::isfinite(ratio) ? num(ratio) : ""});
    }
    previous_error = q.limit_distance;
  }
  e.document = Json{{"config", config}, {"rows", table}};
  return e;
}

struct SearchArgs {
  std::string which;
  int n = 0;
  int restarts = 200;
  int budget = 2000;
};

Emission cmd_search(const SearchArgs& a, const Settings& s, std::ostream& err) {
  SearchOptions opt;
  opt.restarts = a.restarts;
  opt.budget = a.budget;
  opt.seed = s.seed;
  opt.threads = s.threads;
  const SearchResult r = a.which == "kn" ? estimate_Kn(a.n, opt) : estimate_Ln(a.n, opt);
  if (r.exceeds_one) err << "notice: found S = " << num(r.best_value) << " > 1 at n = " << a.n << '\n';

  Json config = base_config("search", s);
  config["objective"] = a.which;
  config["n"] = a.n;
  config["restarts"] = a.restarts;
  config["budget"] = a.budget;

  Emission e;
  e.document = Json{{"config", config}};
  const Json body = io::search_to_json(r, !s.no_meta);
  for (const auto& [key, value] : body.items()) e.document[key] = value;
  e.csv_header = kQuotientHeader;
  quotient_rows(e, "best", r.quotient_report);
  return e;
}

// ---- emission -------------------------------------------------------------

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

std::string render(const Emission& e, const Settings& s, double wall_seconds) {
  if (s.format == "csv") {
    std::ostringstream os;
    os << "# config: " << io::dump(e.document.at("config"), -1) << '\n';
    if (!s.no_meta) {
      os << "# meta: " << io::dump(Json{{"tool", "smalelab"}, {"version", kToolVersion},
                                        {"timestamp", utc_timestamp()}, {"wall_seconds", wall_seconds}}, -1)
         << '\n';
    }
    for (std::size_t k = 0; k < e.csv_header.size(); ++k) os << (k ? "," : "") << csv_field(e.csv_header[k]);
    os << '\n';
    for (const auto& row : e.csv_rows) {
      for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << csv_field(row[k]);
      os << '\n';
    }
    return os.str();
  }
  Json doc = e.document;
  if (!s.no_meta) {
    doc["meta"] = Json{{"tool", "smalelab"}, {"version", kToolVersion}, {"timestamp", utc_timestamp()},
                       {"wall_seconds", wall_seconds}};
  }
  return io::dump(doc) + "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Smale mean value quotients of finite Blaschke products", "smalelab"};
  app.require_subcommand(1);
  app.fallthrough();

  Settings s;
  app.add_option("--seed", s.seed, "Master seed for sampling and search")->capture_default_str();
  app.add_option("--tol", s.tol, "Relative residual tolerance for root finding")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--format", s.format, "Output format")->capture_default_str()->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", s.out, "Output path (default: standard output)");
  app.add_flag("--no-meta", s.no_meta, "Omit timestamps and timings so output is byte-reproducible");
  app.add_option("--threads", s.threads, "Worker threads (0: hardware concurrency)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  app.add_option("--include-file", s.include_files, "Product file to add to a verify run (repeatable)");

  QuotientsArgs qa;
  auto* quotients = app.add_subcommand("quotients", "Smale quotients of one product");
  quotients->add_option("--zeros", qa.zeros, "Zeros, comma separated (0.5, 0.3+0.4i, ...)");
  quotients->add_option("--file", qa.file, "Product file {degree, rotation, zeros}");
  quotients->add_option("--rotation", qa.rotation, "Rotation in radians (with --zeros)")->capture_default_str();

  FamilyArgs fa;
  auto* family = app.add_subcommand("family", "Explicit extremal families with closed forms");
  family->add_option("which", fa.which, "thm2 (d-th roots family) or thm4 (composed family)")
      ->required()
      ->check(CLI::IsMember({"thm2", "thm4"}));
  family->add_option("--n", fa.n, "Degree")->required();
  family->add_option("--alpha", fa.alpha, "Zero modulus for thm2, in (0, 1 - 1e-6)");
  family->add_option("--a", fa.a, "Parameter for thm4, in (0, 1 - 1e-6)");
  family->add_option("--save-product", fa.save_product, "Also write the product file here");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run the invariant battery on sampled products");
  verify->add_option("--n", va.n, "Degree or range lo..hi")->capture_default_str();
  verify->add_option("--samples", va.samples, "Samples per degree")->capture_default_str()->check(CLI::NonNegativeNumber);
  verify->add_option("--targets", va.targets, "Random targets and points per sample")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  verify->add_option("--bound-variant", va.variant, "First-inequality constant to report")
      ->capture_default_str()
      ->check(CLI::IsMember({"stated", "koebe4", "both"}));

  RescaleArgs ra;
  auto* rescale = app.add_subcommand("rescale", "Polynomial-to-Blaschke rescaling table");
  rescale->add_option("--zeros", ra.zeros, "Nonzero zeros a_i of z prod (z - a_i)")->required();
  rescale->add_option("--m", ra.m, "Scales, comma separated")->capture_default_str();

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Multi-start search for sup S or inf T");
  search->add_option("which", sa.which, "kn (maximize S) or ln (minimize T)")
      ->required()
      ->check(CLI::IsMember({"kn", "ln"}));
  search->add_option("--n", sa.n, "Degree")->required();
  search->add_option("--restarts", sa.restarts, "Restarts")->capture_default_str()->check(CLI::PositiveNumber);
  search->add_option("--budget", sa.budget, "Evaluations per restart")->capture_default_str()->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto started = std::chrono::steady_clock::now();
  Emission emission;
  int status = kExitOk;
  try {
    if (*quotients) {
      emission = cmd_quotients(qa, s);
    } else if (*family) {
      emission = cmd_family(fa, s);
    } else if (*verify) {
      bool all_pass = true;
      emission = cmd_verify(va, s, all_pass);
      if (!all_pass) {
        err << "verify: at least one assertion-class check failed\n";
        status = kExitViolation;
      }
    } else if (*rescale) {
      emission = cmd_rescale(ra, s);
    } else {
      emission = cmd_search(sa, s, err);
    }
  } catch (const io::ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_domain_error(e.kind()) ? kExitDomain : kExitConditioning;
  }

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  const std::string text = render(emission, s, wall);
  if (s.out.empty()) {
    out << text;
  } else {
    std::ofstream file(s.out);
    if (!file || !(file << text)) {
      err << "error: cannot write " << s.out << '\n';
      return kExitUsage;
    }
  }
  return status;
}

}  // namespace smalelab::cli
