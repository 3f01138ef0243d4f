#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "smalelab/families.hpp"
#include "smalelab/io.hpp"

using namespace smalelab;
using io::Json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path temp_file(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_CASE("quotients of an inline product") {
  const Run r = run({"--no-meta", "quotients", "--zeros", "0,0.5"});
  REQUIRE(r.code == cli::kExitOk);
  const Json j = r.json();
  CHECK(j.at("report").at("S").get<double>() == doctest::Approx(0.5358984).epsilon(1e-7));
  CHECK(j.at("report").at("T").get<double>() == j.at("report").at("S").get<double>());
  CHECK(j.at("config").at("command") == "quotients");
  CHECK_FALSE(j.contains("meta"));
}

TEST_CASE("complex and negative zeros parse") {
  const Run r = run({"--no-meta", "quotients", "--zeros=0,-0.3+0.4i,0.2i"});
  REQUIRE(r.code == cli::kExitOk);
  const Json j = r.json();
  bool found = false;
  for (const auto& z : j.at("product").at("zeros")) {
    found = found || (z.at("re").get<double>() == -0.3 && z.at("im").get<double>() == 0.4);
  }
  CHECK(found);
}

TEST_CASE("a double zero at the origin is a domain error") {
  const Run r = run({"quotients", "--zeros", "0,0,0.5"});
  CHECK(r.code == cli::kExitDomain);
  CHECK(r.err.find("vanishing") != std::string::npos);
}

TEST_CASE("parse and usage errors exit 1 with a location") {
  const Run bad = run({"quotients", "--zeros", "0,0.3+x"});
  CHECK(bad.code == cli::kExitUsage);
  CHECK(bad.err.find("item 2") != std::string::npos);
  CHECK(run({"bogus"}).code == cli::kExitUsage);
  CHECK(run({"quotients"}).code == cli::kExitUsage);
  CHECK(run({"--format", "xml", "quotients", "--zeros", "0,0.5"}).code == cli::kExitUsage);
  const Run missing = run({"quotients", "--file", "/nonexistent/b.json"});
  CHECK(missing.code == cli::kExitUsage);
  CHECK(missing.err.find("/nonexistent/b.json") != std::string::npos);
  CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("family members with closed forms") {
  const Run two = run({"--no-meta", "family", "thm2", "--n", "3", "--alpha", "0.7"});
  REQUIRE(two.code == cli::kExitOk);
  const Json j = two.json();
  CHECK(j.at("closed_S").get<double>() == doctest::Approx(0.687268).epsilon(1e-6));
  CHECK(j.at("difference").get<double>() <= 1e-8);

  const Run four = run({"--no-meta", "family", "thm4", "--n", "3", "--a", "0.5"});
  REQUIRE(four.code == cli::kExitOk);
  CHECK(four.json().at("closed_T").get<double>() == doctest::Approx(0.4375).epsilon(1e-15));

  CHECK(run({"family", "thm2", "--n", "2", "--alpha", "0.999999"}).code == cli::kExitDomain);
  CHECK(run({"family", "thm5", "--n", "2", "--alpha", "0.5"}).code == cli::kExitUsage);
  // a 7-fold critical point this close to the circle is beyond double precision
  const Run hard = run({"family", "thm4", "--n", "8", "--a", "0.95"});
  CHECK(hard.code == cli::kExitConditioning);
  CHECK(hard.err.find("convergence") != std::string::npos);
}

TEST_CASE("a saved family product reads back through --file") {
  const auto path = temp_file("smalelab_cli_thm4.json");
  const Run saved = run({"--no-meta", "family", "thm4", "--n", "2", "--a", "0.5", "--save-product", path.string()});
  REQUIRE(saved.code == cli::kExitOk);
  const Run r = run({"--no-meta", "quotients", "--file", path.string()});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.json().at("report").at("T").get<double>() == doctest::Approx(0.625).epsilon(1e-12));
  std::filesystem::remove(path);
}

TEST_CASE("emitted products round-trip to the same report") {
  const Run first = run({"--no-meta", "quotients", "--zeros", "0,0.3+0.5i,-0.6,0.1-0.7i"});
  REQUIRE(first.code == cli::kExitOk);
  const auto path = temp_file("smalelab_cli_roundtrip.json");
  {
    std::ofstream out(path);
    out << first.out;
  }
  const Run second = run({"--no-meta", "quotients", "--file", path.string()});
  REQUIRE(second.code == cli::kExitOk);
  const Json a = first.json().at("report"), b = second.json().at("report");
  CHECK(std::abs(a.at("S").get<double>() - b.at("S").get<double>()) <= 1e-12);
  CHECK(std::abs(a.at("T").get<double>() - b.at("T").get<double>()) <= 1e-12);
  REQUIRE(a.at("quotients").size() == b.at("quotients").size());
  for (std::size_t k = 0; k < a.at("quotients").size(); ++k) {
    CHECK(std::abs(a.at("quotients")[k].at("value").get<double>() - b.at("quotients")[k].at("value").get<double>()) <=
          1e-12);
  }
  std::filesystem::remove(path);
}

TEST_CASE("verify reports bounds and exits 0 when every assertion holds") {
  const Run r = run({"--no-meta", "--seed", "7", "verify", "--n", "2", "--samples", "1"});
  REQUIRE(r.code == cli::kExitOk);
  const Json j = r.json();
  CHECK(j.at("bounds").at(0).at("thm1_bound").get<double>() == doctest::Approx(2.1666667).epsilon(1e-7));
  CHECK(j.at("all_assertions_pass").get<bool>());

  const Run range = run({"--no-meta", "--seed", "7", "verify", "--n", "2..4", "--samples", "20"});
  CHECK(range.code == cli::kExitOk);
  CHECK(range.json().at("bounds").size() == 3);
}

TEST_CASE("an included product shows the first-inequality discrepancy") {
  const auto path = temp_file("smalelab_cli_edge.json");
  {
    std::ofstream out(path);
    out << io::dump(io::product_to_json(BlaschkeProduct(0.0, {0.0, 0.99})));
  }
  const Run r = run({"--no-meta", "--include-file", path.string(), "verify", "--n", "2", "--samples", "1"});
  REQUIRE(r.code == cli::kExitOk);
  const Json prop1 = r.json().at("prop1");
  bool found = false;
  for (const auto& entry : prop1.at("reports")) {
    if (entry.at("source").get<std::string>() != path.string()) continue;
    found = true;
    CHECK(entry.at("r").get<double>() == doctest::Approx(0.752745).epsilon(1e-6));
    CHECK(entry.at("first_holds_stated") == false);
    CHECK(entry.at("first_holds_koebe4") == true);
    CHECK(entry.at("second_holds") == true);
  }
  CHECK(found);
  std::filesystem::remove(path);
}

TEST_CASE("rescale table") {
  const Run r = run({"--no-meta", "rescale", "--zeros", "1", "--m", "10,100"});
  REQUIRE(r.code == cli::kExitOk);
  const Json rows = r.json().at("rows");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].at("error").get<double>() == doctest::Approx(1.256e-3).epsilon(1e-3));
  CHECK(rows[1].at("error").get<double>() == doctest::Approx(1.25e-5).epsilon(1e-3));
  CHECK(rows[1].at("ratio").get<double>() == doctest::Approx(100.0).epsilon(0.02));
  CHECK(rows[0].at("identity_residual").get<double>() <= 1e-10);

  const Run two = run({"--no-meta", "rescale", "--zeros=1,-1", "--m", "50"});
  REQUIRE(two.code == cli::kExitOk);
  const Json table = two.json();
  for (const auto& v : table.at("rows")[0].at("limit_values")) {
    CHECK(v.get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  }
  CHECK(run({"rescale", "--zeros", "5", "--m", "2"}).code == cli::kExitDomain);
}

TEST_CASE("search levels at small budgets") {
  const Run kn = run({"--no-meta", "--seed", "1", "search", "kn", "--n", "2", "--restarts", "8", "--budget", "300"});
  REQUIRE(kn.code == cli::kExitOk);
  CHECK(kn.json().at("best_value").get<double>() > 0.99);
  const Run ln = run({"--no-meta", "--seed", "1", "search", "ln", "--n", "2", "--restarts", "8", "--budget", "300"});
  REQUIRE(ln.code == cli::kExitOk);
  CHECK(ln.json().at("best_value").get<double>() < 0.51);
}

TEST_CASE("identical configs give byte-identical output without meta") {
  const std::vector<std::string> args{"--no-meta", "--seed", "3", "verify", "--n", "2..3", "--samples", "10"};
  CHECK(run(args).out == run(args).out);
  const Run with_meta = run({"quotients", "--zeros", "0,0.5"});
  CHECK(with_meta.json().at("meta").at("tool") == "smalelab");
}

TEST_CASE("csv emission and --out") {
  const Run csv = run({"--no-meta", "--format", "csv", "quotients", "--zeros", "0,0.3,0.4i"});
  REQUIRE(csv.code == cli::kExitOk);
  std::istringstream lines(csv.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line.rfind("# config:", 0) == 0);
  std::getline(lines, line);
  CHECK(line == "product_id,degree,index,zeta_re,zeta_im,value,S,T");
  int rows = 0;
  while (std::getline(lines, line)) rows += line.empty() ? 0 : 1;
  CHECK(rows == 2);

  const auto path = temp_file("smalelab_cli_out.json");
  const Run to_file = run({"--no-meta", "--out", path.string(), "quotients", "--zeros", "0,0.5"});
  REQUIRE(to_file.code == cli::kExitOk);
  CHECK(to_file.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(Json::parse(buf.str()).at("report").at("S").get<double>() == doctest::Approx(0.5358983848622454));
  std::filesystem::remove(path);
}
