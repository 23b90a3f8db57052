/**
 * @file bindings.cpp
 * @brief The _obstr extension module: JSON-in, JSON-out wrappers over the
 * analysis, GM, family, search and enumeration entry points.
 */

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "obstr/classify.hpp"
#include "obstr/errors.hpp"
#include "obstr/families.hpp"
#include "obstr/json_io.hpp"
#include "obstr/version.hpp"

namespace py = pybind11;
using obstr::io::Json;

namespace {

Json spec(const std::string& text) { return obstr::io::read_spec_argument(text); }

std::string analyze(const std::string& group, const std::string& filtration, const std::string& level,
                    std::optional<int> p, std::optional<int> theta) {
  Json g = spec(group);
  auto G = obstr::io::parse_group(g);
  auto data = obstr::io::parse_filtration(G, Json::parse(filtration), p);
  if (theta) data.tame = obstr::TameCharacterDatum{*theta};
  return obstr::io::report_json(g, data, obstr::io::parse_level(level)).dump();
}

std::vector<std::string> check_report(const std::string& report) {
  return obstr::io::check_report(Json::parse(report));
}

std::string gm(const std::string& group, int p) {
  return obstr::io::gm_json(*obstr::io::parse_group(spec(group)), p).dump();
}

std::string family(const std::string& name, int p, const std::vector<long long>& i, const std::vector<long long>& d) {
  auto inv = obstr::dqs_invariants_from(obstr::io::parse_family(name), p, i, d);
  return obstr::io::dqs_family_verdict_json(inv).dump();
}

std::string cpxcp(int p, long long i0, bool deep) { return obstr::io::cpxcp_json(p, i0, deep).dump(); }

std::string search(const std::string& group, int p, long long jump_bound, const std::string& mode, long long min_jump,
                   unsigned threads) {
  Json g = spec(group);
  obstr::SearchOptions o;
  o.jump_bound = jump_bound;
  o.mode = obstr::io::parse_mode(mode);
  o.min_jump = min_jump;
  o.threads = threads;
  py::gil_scoped_release release;
  auto r = obstr::counterexample_search(obstr::io::parse_group(g), p, o);
  py::gil_scoped_acquire acquire;
  return obstr::io::search_json(g, p, r).dump();
}

std::vector<std::string> enumerate(const std::string& group, int p, long long jump_bound, const std::string& level,
                                   long long min_jump) {
  obstr::EnumerationOptions o;
  o.jump_bound = jump_bound;
  o.level = obstr::io::parse_level(level);
  o.min_first_wild_jump = min_jump;
  std::vector<std::string> out;
  obstr::enumerate_filtrations(obstr::io::parse_group(spec(group)), p, o,
                               [&](const obstr::LocalActionData& d, long long) {
                                 out.push_back(obstr::io::filtration_json(d).dump());
                                 return true;
                               });
  return out;
}

}  // namespace

PYBIND11_MODULE(_obstr, m) {
  m.doc() = "Bertin and KGB obstructions for local actions on curves";
  static py::exception<obstr::Error> error(m, "ObstrError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const obstr::Error& e) {
      py::set_error(error, e.what());
    } catch (const nlohmann::json::exception& e) {
      py::set_error(error, (std::string("ParseError: ") + e.what()).c_str());
    }
  });
  m.attr("__version__") = obstr::kVersion;
  m.def("analyze", &analyze, py::arg("group"), py::arg("filtration"), py::arg("level") = "arithmetic",
        py::arg("p") = py::none(), py::arg("theta") = py::none(), "Report JSON for one filtration");
  m.def("check_report", &check_report, py::arg("report"), "Mismatches found when re-deriving a report");
  m.def("gm", &gm, py::arg("group"), py::arg("p"), "GM verdict JSON");
  m.def("family", &family, py::arg("family"), py::arg("p"), py::arg("i"), py::arg("d") = std::vector<long long>{},
        "Closed-form verdict JSON for a dihedral, quaternion or semidihedral invariant vector");
  m.def("cpxcp", &cpxcp, py::arg("p"), py::arg("i0"), py::arg("deep") = false, "(Z/p)^2 closed-form JSON");
  m.def("search", &search, py::arg("group"), py::arg("p"), py::arg("jump_bound") = 20, py::arg("mode") = "bertin",
        py::arg("min_jump") = 1, py::arg("threads") = 0, "Counterexample search JSON");
  m.def("enumerate", &enumerate, py::arg("group"), py::arg("p"), py::arg("jump_bound") = 20,
        py::arg("level") = "arithmetic", py::arg("min_jump") = 1, "Filtration JSON for every valid datum");
}
