#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kvsp/covers.hpp"
#include "kvsp/reports.hpp"
#include "kvsp/theta.hpp"

namespace py = pybind11;
using namespace kvsp;

namespace {

Decomposition from_python(const std::vector<DualPoint>& points, const std::vector<Complex>& lambdas) {
  if (points.size() != lambdas.size())
    throw Error(ErrorKind::EntryCount, "points and lambdas differ in length");
  Decomposition d;
  d.target = klein_quartic<Complex>();
  for (std::size_t i = 0; i < points.size(); ++i) d.entries.push_back({points[i], lambdas[i]});
  return d;
}

py::dict to_python(const Decomposition& d) {
  std::vector<DualPoint> points;
  std::vector<Complex> lambdas;
  for (const auto& e : d.entries) {
    points.push_back(e.point);
    lambdas.push_back(e.lambda);
  }
  py::dict out;
  out["points"] = points;
  out["lambdas"] = lambdas;
  out["residual"] = d.residual;
  return out;
}

Command command_from(const std::string& name) {
  for (auto c : {Command::Decompose, Command::Verify, Command::Sample, Command::Discriminant, Command::Covers,
                 Command::Orbits, Command::Chart, Command::ProbeFiber})
    if (command_name(c) == name) return c;
  throw Error(ErrorKind::InvalidArgument, "unknown command '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Power-sum decompositions of the Klein quartic and Sp4(F2) bookkeeping";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  m.def("klein_pair", [](const DualPoint& l, const DualPoint& mm) { return klein_pair(l, mm); }, py::arg("L"),
        py::arg("M"));

  m.def(
      "catalecticant",
      [](const std::string& form) {
        const auto c = catalecticant4(parse_form(form, 3));
        std::vector<std::vector<std::string>> rows;
        for (const auto& r : c) {
          rows.emplace_back();
          for (const auto& v : r) rows.back().push_back(v.get_str());
        }
        return rows;
      },
      py::arg("form") = "x0^3*x1 + x1^3*x2 + x0*x2^3",
      "Exact 6x6 catalecticant of a rational ternary quartic, entries as strings.");

  m.def(
      "reconstruct",
      [](const DualPoint& l, const DualPoint& mm, double tol) { return to_python(reconstruct(l, mm, tol)); },
      py::arg("L"), py::arg("M"), py::arg("tol") = 1e-9);

  m.def(
      "verify",
      [](const std::vector<DualPoint>& points, const std::vector<Complex>& lambdas) {
        return verify(from_python(points, lambdas));
      },
      py::arg("points"), py::arg("lambdas"));

  m.def(
      "tangent_nullity",
      [](const std::vector<DualPoint>& points, const std::vector<Complex>& lambdas) {
        return tangent_nullity(from_python(points, lambdas));
      },
      py::arg("points"), py::arg("lambdas"));

  m.def(
      "sample_p2",
      [](std::uint64_t seed) {
        const auto s = sample_p2(seed);
        return py::make_tuple(s.l, s.m);
      },
      py::arg("seed"));

  m.def(
      "sample_p3",
      [](std::uint64_t seed) {
        const auto s = sample_p3(seed);
        return py::make_tuple(s.l, s.m, s.n);
      },
      py::arg("seed"));

  m.def("group_order", [] { return sp4_group().size(); });

  m.def("orbit_sizes", [] {
    std::vector<std::size_t> sizes;
    for (const auto& o : orbits()) sizes.push_back(o.size());
    return sizes;
  });

  m.def("stabilizer_orders", [] {
    py::dict out;
    for (const auto& c : all_characteristics()) out[parity(c) == 1 ? "even" : "odd"] = stabilizer_order(c);
    return out;
  });

  m.def("cover_report", [] {
    const auto r = cover_report();
    py::dict out;
    out["odd"] = r.odd;
    out["even"] = r.even;
    out["level"] = r.level;
    return out;
  });

  m.def(
      "run",
      [](const std::string& command, std::uint64_t seed, double tol, int count, std::optional<std::string> L,
         std::optional<std::string> M, std::optional<std::string> L0, std::optional<std::string> params,
         const std::string& input_path) {
        RunConfig cfg;
        cfg.command = command_from(command);
        cfg.seed = seed;
        cfg.tol = tol;
        cfg.count = count;
        if (L) cfg.l = parse_triple(*L);
        if (M) cfg.m = parse_triple(*M);
        if (L0) cfg.l0 = parse_triple(*L0);
        if (params) cfg.params = parse_triple(*params);
        cfg.input_path = input_path;
        const RunResult r = run(cfg);
        return py::make_tuple(r.exit_code, render(r.document));
      },
      py::arg("command"), py::arg("seed") = 0, py::arg("tol") = 1e-9, py::arg("count") = 1,
      py::arg("L") = py::none(), py::arg("M") = py::none(), py::arg("L0") = py::none(),
      py::arg("params") = py::none(), py::arg("input_path") = "",
      "Run a CLI command in-process; returns (exit_code, JSON text).");
}
