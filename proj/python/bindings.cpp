#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "coquasi/cli.hpp"
#include "coquasi/json_io.hpp"
#include "coquasi/zoo.hpp"

namespace py = pybind11;
using namespace coquasi;
using io::json;

namespace {

std::optional<exactla::Field> forced(const std::optional<std::string>& field) {
  if (!field) return std::nullopt;
  return io::parse_field(*field);
}

std::string report(const Report& r) { return io::dump(io::to_json(r)); }

std::string validate(const std::string& text, const std::string& kind, const std::optional<std::string>& field) {
  json doc = json::parse(text);
  auto f = io::resolve_field(doc, forced(field));
  if (kind == "coquasi") return report(cqb::validate_coquasi(io::coquasi_from_json(doc, f)));
  if (kind == "quasi") return report(qb::validate_quasi(io::quasi_from_json(doc, f)));
  if (kind == "coalgebra") return report(coalg::check_coalgebra(io::coalgebra_from_json(doc, f)));
  if (kind == "algebra") return report(coalg::check_algebra(io::algebra_from_json(doc, f)));
  if (kind == "diagram") return report(recon::validate_diagram(io::diagram_from_json(doc, f)));
  throw py::value_error("kind must be coquasi, quasi, coalgebra, algebra or diagram");
}

std::optional<std::string> solve(const std::string& text, const std::string& kind,
                                 const std::optional<std::string>& field) {
  json doc = json::parse(text);
  auto f = io::resolve_field(doc, forced(field));
  cqb::PreantipodeSolution sol;
  if (kind == "coquasi")
    sol = cqb::solve_preantipode(io::coquasi_from_json(doc, f));
  else if (kind == "quasi")
    sol = qb::solve_quasi_preantipode(io::quasi_from_json(doc, f));
  else
    throw py::value_error("kind must be coquasi or quasi");
  if (sol.status != cqb::PreantipodeSolution::Status::unique) return std::nullopt;
  return io::dump(io::preantipode_to_json(*sol.s));
}

std::string check(const std::string& text, const std::string& s_text, const std::string& kind,
                  const std::optional<std::string>& field) {
  json doc = json::parse(text);
  auto f = io::resolve_field(doc, forced(field));
  json sdoc = json::parse(s_text);
  if (kind == "coquasi") {
    auto h = io::coquasi_from_json(doc, f);
    return report(cqb::check_preantipode(h, io::preantipode_from_json(sdoc, f, h.dim())));
  }
  if (kind == "quasi") {
    auto a = io::quasi_from_json(doc, f);
    return report(qb::check_quasi_preantipode(a, io::preantipode_from_json(sdoc, f, a.dim())));
  }
  throw py::value_error("kind must be coquasi or quasi");
}

std::string reconstruct(const std::string& text, const std::optional<std::string>& field) {
  json doc = json::parse(text);
  auto f = io::resolve_field(doc, forced(field));
  auto d = io::diagram_from_json(doc, f);
  auto rc = recon::reconstruct(d);
  json out = io::coend_to_json(d, rc.coend, rc.h);
  out["preantipode"] = io::preantipode_to_json(rc.s);
  return io::dump(out);
}

std::string finite_dual(const std::string& text, const std::optional<std::string>& field) {
  json doc = json::parse(text);
  auto a = io::quasi_from_json(doc, io::resolve_field(doc, forced(field)));
  auto sol = qb::solve_quasi_preantipode(a);
  if (sol.status != cqb::PreantipodeSolution::Status::unique) throw py::value_error("no unique preantipode");
  auto fd = qb::finite_dual(a, *sol.s);
  json out = io::to_json(fd.h);
  out["preantipode"] = io::preantipode_to_json(fd.s);
  return io::dump(out);
}

std::string example(const std::string& kind, const std::string& name) {
  if (kind == "coquasi") {
    for (const auto& z : cli::coquasi_zoo())
      if (z.name == name) return io::dump(io::to_json(*z.data.h));
  } else if (kind == "quasi") {
    for (const auto& z : cli::quasi_zoo())
      if (z.name == name) return io::dump(io::to_json(z.data.a));
  } else if (kind == "diagram") {
    for (const auto& z : cli::coquasi_zoo())
      if (z.name == name && z.spec) return io::dump(io::to_json(cli::grading_diagram(*z.spec, true, z.rebase)));
  }
  throw py::key_error(kind + " example '" + name + "'");
}

std::vector<std::string> zoo_names(const std::string& kind) {
  std::vector<std::string> out;
  if (kind == "coquasi")
    for (const auto& z : cli::coquasi_zoo()) out.push_back(z.name);
  else if (kind == "quasi")
    for (const auto& z : cli::quasi_zoo()) out.push_back(z.name);
  else
    throw py::value_error("kind must be coquasi or quasi");
  return out;
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact coquasi-bialgebra toolkit (JSON-string interface)";
  py::register_exception<io::SchemaError>(m, "SchemaError", PyExc_ValueError);
  m.def("validate", &validate, py::arg("text"), py::arg("kind"), py::arg("field") = py::none());
  m.def("solve_preantipode", &solve, py::arg("text"), py::arg("kind"), py::arg("field") = py::none());
  m.def("check_preantipode", &check, py::arg("text"), py::arg("s_text"), py::arg("kind"),
        py::arg("field") = py::none());
  m.def("reconstruct", &reconstruct, py::arg("text"), py::arg("field") = py::none());
  m.def("finite_dual", &finite_dual, py::arg("text"), py::arg("field") = py::none());
  m.def("example", &example, py::arg("kind"), py::arg("name"));
  m.def("zoo_names", &zoo_names, py::arg("kind"));
  m.def("run_cli", &run_cli, py::arg("args"));
}
