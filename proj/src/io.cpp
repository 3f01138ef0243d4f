#include "smalelab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace smalelab::io {

namespace {

void write_number(std::ostringstream& os, double v) {
  if (!std::isfinite(v)) {
    os << "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

void write(std::ostringstream& os, const Json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',';
        first = false;
        newline(depth + 1);
        os << Json(it.key()).dump() << (indent < 0 ? ":" : ": ");
        write(os, it.value(), indent, depth + 1);
      }
      newline(depth);
      os << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ',';
        first = false;
        newline(depth + 1);
        write(os, v, indent, depth + 1);
      }
      newline(depth);
      os << ']';
      return;
    }
    case Json::value_t::number_float:
      write_number(os, j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

double number_at(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  if (!j.at(key).is_number()) throw ParseError(where + "." + key + ": expected a number");
  return j.at(key).get<double>();
}

}  // namespace

std::string dump(const Json& value, int indent) {
  std::ostringstream os;
  write(os, value, indent, 0);
  return os.str();
}

Json complex_to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object {re, im}");
  return {number_at(j, "re", where), number_at(j, "im", where)};
}

Json product_to_json(const BlaschkeProduct& b) {
  Json zeros = Json::array();
  for (const Complex& z : b.zeros()) zeros.push_back(complex_to_json(z));
  return Json{{"degree", b.degree()}, {"rotation", b.rotation()}, {"zeros", zeros}};
}

BlaschkeProduct product_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("product: expected an object");
  if (!j.contains("zeros") || !j.at("zeros").is_array()) throw ParseError("product: missing array 'zeros'");
  const double rotation = j.contains("rotation") ? number_at(j, "rotation", "product") : 0.0;
  std::vector<Complex> zeros;
  const Json& arr = j.at("zeros");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    zeros.push_back(complex_from_json(arr[i], "product.zeros[" + std::to_string(i) + "]"));
  }
  if (j.contains("degree")) {
    if (!j.at("degree").is_number_integer()) throw ParseError("product.degree: expected an integer");
    if (j.at("degree").get<long long>() != static_cast<long long>(zeros.size())) {
      throw ParseError("product.degree: " + j.at("degree").dump() + " does not match " +
                       std::to_string(zeros.size()) + " zeros");
    }
  }
  return BlaschkeProduct(rotation, std::move(zeros));
}

BlaschkeProduct product_from_text(const std::string& text, const std::string& source) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(source + ": " + e.what());
  }
  // Accept a bare product or any emitted document carrying one.
  if (j.is_object() && !j.contains("zeros") && j.contains("product")) return product_from_json(j.at("product"));
  return product_from_json(j);
}

BlaschkeProduct read_product_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return product_from_text(buf.str(), path);
}

Json critical_to_json(const CriticalSet& crit) {
  Json pts = Json::array();
  for (const auto& c : crit.interior) {
    pts.push_back(Json{{"zeta", complex_to_json(c.location)}, {"multiplicity", c.multiplicity}, {"residual", c.residual}});
  }
  return Json{{"interior", pts},
              {"exterior_checked", crit.exterior_checked},
              {"infinity_deficiency", crit.infinity_deficiency},
              {"reflection_error", crit.reflection_error}};
}

Json report_to_json(const QuotientReport& report) {
  Json quotients = Json::array();
  for (const auto& q : report.quotients) quotients.push_back(Json{{"zeta", complex_to_json(q.zeta)}, {"value", q.value}});
  Json flags = Json::array();
  for (const auto& f : report.flags) {
    flags.push_back(Json{{"id", f.id}, {"lhs", f.lhs}, {"rhs", f.rhs}, {"margin", f.margin}});
  }
  return Json{{"degree", report.product.degree()},
              {"S", report.S},
              {"T", report.T},
              {"s_indices", report.s_indices},
              {"t_indices", report.t_indices},
              {"quotients", quotients},
              {"thm1_bound", report.thm1_bound},
              {"thm3_lower", report.thm3_lower},
              {"reflection_error", report.reflection_error},
              {"flags", flags}};
}

Json prop1_to_json(const Prop1Report& r) {
  const auto opt = [](const std::optional<bool>& v) { return v ? Json(*v) : Json(nullptr); };
  return Json{{"degree", r.degree},
              {"r", r.r},
              {"hypothesis_met", r.hypothesis_met},
              {"min_quotient", r.min_quotient},
              {"max_quotient", r.max_quotient},
              {"stated_bound", r.stated_bound},
              {"koebe4_bound", r.koebe4_bound},
              {"lower_bound", r.lower_bound},
              {"first_holds_stated", opt(r.first_holds_stated)},
              {"first_holds_koebe4", opt(r.first_holds_koebe4)},
              {"second_holds", opt(r.second_holds)},
              {"log", r.log}};
}

Json rescale_to_json(const RescalePair& pair, const RescaleQuotients& q) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < q.blaschke_critical.size(); ++i) {
    rows.push_back(Json{{"c", complex_to_json(q.blaschke_critical[i])},
                        {"d", complex_to_json(q.polynomial_critical[i])},
                        {"blaschke_quotient", complex_to_json(q.blaschke_values[i])},
                        {"polynomial_quotient", complex_to_json(q.polynomial_values[i])},
                        {"value", std::abs(q.blaschke_values[i])}});
  }
  return Json{{"m", pair.m},
              {"product", product_to_json(pair.rescaled)},
              {"critical", rows},
              {"identity_residual", q.identity_residual},
              {"limit_values", q.limit_values},
              {"limit_distance", q.limit_distance}};
}

Json search_to_json(const SearchResult& r, bool include_meta) {
  Json j{{"n", r.n},
         {"objective", to_string(r.objective)},
         {"best_value", r.best_value},
         {"seed", r.seed},
         {"evaluations", r.evaluations},
         {"restarts", r.restarts},
         {"budget", r.budget},
         {"best_restart", r.best_restart},
         {"revalidation_error", r.revalidation_error},
         {"boundary_deviation", r.boundary_deviation},
         {"exceeds_one", r.exceeds_one},
         {"product", product_to_json(r.best_product)},
         {"report", report_to_json(r.quotient_report)}};
  if (include_meta) j["wall_seconds"] = r.wall_seconds;
  return j;
}

Json battery_to_json(const BatteryReport& report) {
  const BatteryOptions& o = report.options;
  Json bounds = Json::array();
  for (int n = o.n_min; n <= o.n_max; ++n) {
    bounds.push_back(Json{{"n", n}, {"thm1_bound", thm1_bound(n)}, {"thm3_lower", thm3_lower(n)}});
  }
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json examples = Json::array();
    for (const auto& x : c.counterexamples) {
      Json zeros = Json::array();
      for (const Complex& z : x.zeros) zeros.push_back(complex_to_json(z));
      Json entry{{"source", x.source}, {"margin", x.margin}, {"detail", x.detail}};
      if (x.polynomial) {
        entry["polynomial_zeros"] = zeros;
      } else {
        entry["product"] =
            Json{{"degree", x.zeros.size()}, {"rotation", x.rotation}, {"zeros", zeros}};
      }
      examples.push_back(entry);
    }
    checks.push_back(Json{{"id", c.id},
                          {"description", c.description},
                          {"class", c.assertion ? "assertion" : "report"},
                          {"samples", c.samples},
                          {"passes", c.passes},
                          {"worst_margin", c.worst_margin},
                          {"ok", c.ok()},
                          {"counterexamples", examples}});
  }
  const Prop1Summary& p = report.prop1;
  Json reports = Json::array();
  for (const auto& [source, r] : p.reports) {
    Json entry = prop1_to_json(r);
    entry["source"] = source;
    reports.push_back(entry);
  }
  return Json{{"bounds", bounds},
              {"checks", checks},
              {"prop1",
               Json{{"evaluated", p.evaluated},
                    {"hypothesis_met", p.hypothesis_met},
                    {"stated_exceeded", p.stated_exceeded},
                    {"koebe4_exceeded", p.koebe4_exceeded},
                    {"second_failed", p.second_failed},
                    {"worst_stated_ratio", p.worst_stated_ratio},
                    {"reports", reports}}},
              {"all_assertions_pass", report.all_assertions_pass()}};
}

}  // namespace smalelab::io
