#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "smalelab/battery.hpp"
#include "smalelab/critical.hpp"
#include "smalelab/error.hpp"
#include "smalelab/families.hpp"
#include "smalelab/io.hpp"
#include "smalelab/mobius.hpp"
#include "smalelab/search.hpp"
#include "smalelab/smale.hpp"

namespace py = pybind11;
using namespace smalelab;

namespace {

BlaschkeProduct product_of(std::vector<Complex> zeros, double rotation) {
  return BlaschkeProduct(rotation, std::move(zeros));
}

std::vector<Complex> zeros_of(const BlaschkeProduct& b) { return {b.zeros().begin(), b.zeros().end()}; }

BoundVariant variant_of(const std::string& name) {
  if (name == "stated") return BoundVariant::kStated;
  if (name == "koebe4") return BoundVariant::kKoebe4;
  if (name == "both") return BoundVariant::kBoth;
  throw Error(ErrorKind::kDomain, "bound variant must be stated, koebe4 or both");
}

SearchOptions search_options(int restarts, int budget, std::uint64_t seed, int threads) {
  SearchOptions o;
  o.restarts = restarts;
  o.budget = budget;
  o.seed = seed;
  o.threads = threads;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Mean value quotients of finite Blaschke products";

  static py::exception<Error> error_type(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object instance = py::reinterpret_borrow<py::object>(error_type.ptr())(e.what());
      instance.attr("kind") = std::string(to_string(e.kind()));
      instance.attr("domain") = is_domain_error(e.kind());
      PyErr_SetObject(error_type.ptr(), instance.ptr());
    } catch (const io::ParseError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<BlaschkeProduct>(m, "BlaschkeProduct")
      .def(py::init(&product_of), py::arg("zeros"), py::arg("rotation") = 0.0)
      .def_property_readonly("zeros", &zeros_of)
      .def_property_readonly("rotation", &BlaschkeProduct::rotation)
      .def_property_readonly("degree", &BlaschkeProduct::degree)
      .def_property_readonly("origin_multiplicity", &BlaschkeProduct::origin_multiplicity)
      .def("__call__", [](const BlaschkeProduct& b, Complex z) { return b_eval(b, z); })
      .def("derivative", [](const BlaschkeProduct& b, Complex z) { return b_derivative(b, z); })
      .def("hyperbolic_derivative", [](const BlaschkeProduct& b, Complex w) { return hyperbolic_derivative(b, w); })
      .def("boundary_deviation", &boundary_modulus_check, py::arg("samples") = 256)
      .def("to_json", [](const BlaschkeProduct& b) { return io::dump(io::product_to_json(b)); })
      .def_static("from_json", [](const std::string& text) { return io::product_from_text(text, "json"); })
      .def("__repr__", [](const BlaschkeProduct& b) {
        return "BlaschkeProduct(degree=" + std::to_string(b.degree()) + ", rotation=" + std::to_string(b.rotation()) +
               ")";
      });

  py::class_<CriticalPoint>(m, "CriticalPoint")
      .def_readonly("location", &CriticalPoint::location)
      .def_readonly("multiplicity", &CriticalPoint::multiplicity)
      .def_readonly("residual", &CriticalPoint::residual);

  py::class_<CriticalSet>(m, "CriticalSet")
      .def_readonly("interior", &CriticalSet::interior)
      .def_readonly("reflection_error", &CriticalSet::reflection_error)
      .def_property_readonly("total_multiplicity", &CriticalSet::total_multiplicity)
      .def("expanded", &CriticalSet::expanded);

  m.def("critical_points", &critical_points, py::arg("b"), py::arg("tol") = 1e-12);
  m.def("preimages", &preimages, py::arg("b"), py::arg("w"), py::arg("tol") = 1e-12);
  m.def("normalize", &normalize, py::arg("b"), py::arg("w"));

  py::class_<QuotientReport>(m, "QuotientReport")
      .def_readonly("S", &QuotientReport::S)
      .def_readonly("T", &QuotientReport::T)
      .def_readonly("s_indices", &QuotientReport::s_indices)
      .def_readonly("t_indices", &QuotientReport::t_indices)
      .def_readonly("thm1_bound", &QuotientReport::thm1_bound)
      .def_readonly("thm3_lower", &QuotientReport::thm3_lower)
      .def_readonly("reflection_error", &QuotientReport::reflection_error)
      .def_property_readonly("quotients",
                             [](const QuotientReport& r) {
                               std::vector<std::pair<Complex, double>> out;
                               for (const auto& q : r.quotients) out.emplace_back(q.zeta, q.value);
                               return out;
                             })
      .def_property_readonly("flags", [](const QuotientReport& r) {
        std::vector<std::string> out;
        for (const auto& f : r.flags) out.push_back(f.id);
        return out;
      });

  m.def("smale_quotients", &smale_quotients, py::arg("b"), py::arg("tol") = 1e-12);
  m.def("general_quotients", &general_quotients, py::arg("b"), py::arg("w"), py::arg("tol") = 1e-12);
  m.def("thm1_bound", &thm1_bound, py::arg("n"));
  m.def("thm3_lower", &thm3_lower, py::arg("n"));
  m.def("lemma1_bound", &lemma1_bound, py::arg("r"));

  py::class_<Prop1Report>(m, "Prop1Report")
      .def_readonly("r", &Prop1Report::r)
      .def_readonly("hypothesis_met", &Prop1Report::hypothesis_met)
      .def_readonly("min_quotient", &Prop1Report::min_quotient)
      .def_readonly("max_quotient", &Prop1Report::max_quotient)
      .def_readonly("stated_bound", &Prop1Report::stated_bound)
      .def_readonly("koebe4_bound", &Prop1Report::koebe4_bound)
      .def_readonly("lower_bound", &Prop1Report::lower_bound)
      .def_readonly("first_holds_stated", &Prop1Report::first_holds_stated)
      .def_readonly("first_holds_koebe4", &Prop1Report::first_holds_koebe4)
      .def_readonly("second_holds", &Prop1Report::second_holds)
      .def_readonly("log", &Prop1Report::log);

  m.def(
      "prop1_check",
      [](const BlaschkeProduct& b, const std::string& variant, double tol) {
        return prop1_check(b, variant_of(variant), tol);
      },
      py::arg("b"), py::arg("variant") = "both", py::arg("tol") = 1e-12);

  m.def("thm2_family", &thm2_family, py::arg("n"), py::arg("alpha"));
  m.def("thm2_closed_S", &thm2_closed_S, py::arg("n"), py::arg("beta"));
  m.def("thm2_critical_points", &thm2_critical_points, py::arg("n"), py::arg("beta"));
  m.def("thm4_family", &thm4_family, py::arg("n"), py::arg("a"));
  m.def("thm4_closed_T", &thm4_closed_T, py::arg("n"), py::arg("a"));

  m.def(
      "rescale",
      [](std::vector<Complex> zeros, double mult) {
        const RescalePair pair = rescale_family(std::move(zeros), mult);
        return io::dump(io::rescale_to_json(pair, rescale_quotients(pair)));
      },
      py::arg("poly_zeros"), py::arg("m"), "Rescaling table row as JSON text.");

  py::class_<SearchResult>(m, "SearchResult")
      .def_readonly("n", &SearchResult::n)
      .def_readonly("best_value", &SearchResult::best_value)
      .def_readonly("best_product", &SearchResult::best_product)
      .def_readonly("quotient_report", &SearchResult::quotient_report)
      .def_readonly("seed", &SearchResult::seed)
      .def_readonly("evaluations", &SearchResult::evaluations)
      .def_readonly("best_restart", &SearchResult::best_restart)
      .def_readonly("revalidation_error", &SearchResult::revalidation_error)
      .def_readonly("exceeds_one", &SearchResult::exceeds_one)
      .def_readonly("wall_seconds", &SearchResult::wall_seconds);

  m.def(
      "estimate_Kn",
      [](int n, int restarts, int budget, std::uint64_t seed, int threads) {
        return estimate_Kn(n, search_options(restarts, budget, seed, threads));
      },
      py::arg("n"), py::arg("restarts") = 200, py::arg("budget") = 2000, py::arg("seed") = 0, py::arg("threads") = 0,
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "estimate_Ln",
      [](int n, int restarts, int budget, std::uint64_t seed, int threads) {
        return estimate_Ln(n, search_options(restarts, budget, seed, threads));
      },
      py::arg("n"), py::arg("restarts") = 200, py::arg("budget") = 2000, py::arg("seed") = 0, py::arg("threads") = 0,
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "sample_blaschke",
      [](int n, std::uint64_t seed, std::uint64_t index) {
        auto rng = stream_rng(seed, index);
        return sample_blaschke(n, rng);
      },
      py::arg("n"), py::arg("seed"), py::arg("index") = 0);

  m.def(
      "run_battery",
      [](int n_min, int n_max, int samples, std::uint64_t seed, int threads, const std::string& variant,
         const std::vector<std::pair<std::string, BlaschkeProduct>>& included) {
        BatteryOptions o;
        o.n_min = n_min;
        o.n_max = n_max;
        o.samples = samples;
        o.seed = seed;
        o.threads = threads;
        o.variant = variant_of(variant);
        o.included = included;
        py::gil_scoped_release release;
        return io::dump(io::battery_to_json(run_battery(o)));
      },
      py::arg("n_min") = 2, py::arg("n_max") = 8, py::arg("samples") = 1000, py::arg("seed") = 0,
      py::arg("threads") = 0, py::arg("variant") = "both", py::arg("included") = std::vector<std::pair<std::string, BlaschkeProduct>>{},
      "Battery summary as JSON text.");
}
