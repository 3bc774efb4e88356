#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "s4gauss/analysis.hpp"
#include "s4gauss/cli.hpp"
#include "s4gauss/energy.hpp"
#include "s4gauss/error.hpp"
#include "s4gauss/gauss_tension.hpp"
#include "s4gauss/loop_family.hpp"

namespace py = pybind11;
using namespace s4g;

namespace {

template <class T, class F>
py::array_t<T> grid_array(const Grid& g, F f) {
  py::array_t<T> out({g.ny(), g.nx()});
  auto m = out.template mutable_unchecked<2>();
  for (std::size_t k = 0; k < g.size(); ++k) m(g.row_of(k), g.col_of(k)) = f(k);
  return out;
}

// pybind11 holders must be non-const; the library never mutates immersions.
using PyImmersion = std::shared_ptr<Immersion>;
PyImmersion mutable_ptr(ImmersionPtr p) { return std::const_pointer_cast<Immersion>(p); }

RVec5 to_vec5(const std::vector<double>& v) {
  if (v.size() != 5) throw Error(ErrorKind::InvalidArgument, "expected five components");
  RVec5 r{};
  for (std::size_t i = 0; i < 5; ++i) r[i] = v[i];
  return r;
}

py::dict fields(const SurfaceAnalysis& a) {
  const Grid& g = a.grid;
  const auto& fd = a.fd;
  const auto kperp = normal_curvature(g, fd);
  py::dict d;
  d["x"] = grid_array<double>(g, [&](std::size_t k) { return g.x(g.col_of(k)); });
  d["y"] = grid_array<double>(g, [&](std::size_t k) { return g.y(g.row_of(k)); });
  d["u"] = grid_array<double>(g, [&](std::size_t k) { return fd[k].u; });
  d["h1"] = grid_array<double>(g, [&](std::size_t k) { return fd[k].h1; });
  d["h2"] = grid_array<double>(g, [&](std::size_t k) { return fd[k].h2; });
  d["xi1"] = grid_array<cplx>(g, [&](std::size_t k) { return fd[k].xi1; });
  d["xi2"] = grid_array<cplx>(g, [&](std::size_t k) { return fd[k].xi2; });
  d["sigma"] = grid_array<cplx>(g, [&](std::size_t k) { return fd[k].sigma; });
  d["K"] = grid_array<double>(g, [&](std::size_t k) { return gauss_curvature(fd[k]); });
  d["Kperp"] = grid_array<double>(g, [&](std::size_t k) { return kperp[k]; });
  d["density"] = grid_array<double>(g, [&](std::size_t k) { return energy_density(fd[k]); });
  return d;
}

py::dict residuals(const SurfaceAnalysis& a) {
  const Grid& g = a.grid;
  const auto res = compatibility_residuals(g, a.fd);
  std::vector<double> G(g.size()), C(g.size()), R(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    G[k] = res[k].res_G;
    C[k] = res[k].codazzi();
    R[k] = res[k].res_R;
  }
  std::vector<CMat5> am(g.size()), bm(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    am[k] = a.mc[k].A;
    bm[k] = a.mc[k].B;
  }
  double special = 0.0;
  for (const MCForms& m : a.mc) special = std::max(special, special_property_residual(m));
  py::dict d;
  d["gauss"] = interior_stats(g, G).max;
  d["codazzi"] = interior_stats(g, C).max;
  d["ricci"] = interior_stats(g, R).max;
  d["flatness"] = interior_stats(g, mc_flatness_residual(g, am, bm)).max;
  d["special_property"] = special;
  d["fd_tolerance"] = fd_tolerance(a);
  return d;
}

py::dict harmonicity(const SurfaceAnalysis& a, double tol) {
  const auto t = tension_vector(a.grid, a.mc, a.fd, a.frames);
  const HarmonicityReport r = harmonicity_verdict(a.grid, t, tol);
  py::dict d;
  d["verdict"] = r.verdict();
  d["max_M"] = r.max_M;
  d["max_gradH"] = r.max_gradH;
  d["tol"] = r.tol;
  return d;
}

py::dict energy(const SurfaceAnalysis& a, std::optional<double> disk_radius) {
  QuadratureOptions q;
  q.disk_radius = disk_radius;
  const EnergyReport r = energy_report(a.grid, a.fd, a.immersion->genus(), q);
  py::dict d;
  d["E"] = r.E;
  d["W"] = r.W;
  d["total_K"] = r.total_K;
  d["area"] = r.area;
  d["identity_residual"] = r.identity_residual;
  d["bound_slack"] = r.bound_slack;
  d["tail_bound"] = r.tail_bound;
  d["genus"] = r.genus;
  return d;
}

py::dict family(const SurfaceAnalysis& a, cplx lambda, int substeps) {
  PathIntegratorConfig pc;
  pc.substeps = substeps;
  const LoopSample s = family_sample(a.grid, a.mc, a.fd, lambda, pc);
  const FamilyDiagnostics& f = s.diag;
  py::dict d;
  d["u_dev"] = f.u_dev;
  d["h_dev"] = f.h_dev;
  d["xi_dev"] = f.xi_dev;
  d["sigma_dev"] = f.sigma_dev;
  d["K_dev"] = f.K_dev;
  d["orthogonality"] = f.orthogonality;
  d["path_independence"] = path_independence_residual(a.grid, a.mc, lambda, pc);
  std::vector<std::vector<double>> pos(a.grid.size(), std::vector<double>(5));
  for (std::size_t k = 0; k < pos.size(); ++k)
    for (std::size_t c = 0; c < 5; ++c) pos[k][c] = s.frame.F[k](c, 0);
  d["positions"] = pos;
  return d;
}

}  // namespace

PYBIND11_MODULE(_s4gauss, m) {
  m.doc() = "Gauss map diagnostics for conformal immersions into S^4";

  static py::exception<Error> exc(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(exc, e.what());
    }
  });

  py::class_<Immersion, PyImmersion>(m, "Immersion")
      .def("describe", &Immersion::describe)
      .def_property_readonly("genus", &Immersion::genus)
      .def_property_readonly("domain",
                             [](const Immersion& i) {
                               const Domain& d = i.domain();
                               return py::make_tuple(d.x0, d.x1, d.y0, d.y1, d.periodic_x, d.periodic_y);
                             })
      .def("position", [](const Immersion& i, double x, double y) {
        const RVec5 p = i.position(x, y);
        return std::vector<double>(p.c.begin(), p.c.end());
      });

  m.def(
      "equatorial_sphere", [](double r) { return mutable_ptr(Immersion::equatorial_sphere(r)); },
      py::arg("chart_radius") = 1.0);
  m.def("clifford_torus", [] { return mutable_ptr(Immersion::clifford_torus()); });
  m.def(
      "pmc_torus", [](double a, double b) { return mutable_ptr(Immersion::pmc_torus(a, b)); }, py::arg("a"),
      py::arg("b"));
  m.def(
      "grid_file", [](const std::string& p) { return mutable_ptr(Immersion::grid_file(p)); }, py::arg("path"));
  m.def(
      "moebius",
      [](PyImmersion inner, const std::vector<double>& a) { return mutable_ptr(Immersion::moebius(inner, to_vec5(a))); },
      py::arg("inner"), py::arg("center"));

  py::class_<SurfaceAnalysis>(m, "Analysis")
      .def_property_readonly("shape", [](const SurfaceAnalysis& a) { return py::make_tuple(a.grid.ny(), a.grid.nx()); })
      .def("fields", &fields)
      .def("residuals", &residuals)
      .def("harmonicity", &harmonicity, py::arg("tol") = 1e-6)
      .def("energy", &energy, py::arg("disk_radius") = py::none())
      .def("family", &family, py::arg("lambda_"), py::arg("substeps") = 4);

  m.def(
      "analyze",
      [](PyImmersion imm, int n, bool finite_difference) {
        AnalysisOptions o;
        if (finite_difference) o.mode = DerivativeMode::finite_difference(0.0);
        py::gil_scoped_release release;
        return analyze(imm, imm->default_grid(n, n), o);
      },
      py::arg("immersion"), py::arg("n") = 64, py::arg("finite_difference") = false);

  m.def("default_lambdas", &default_lambdas);

  m.def("parse_config", [](const std::string& text) {
    const RunConfig c = parse_config(text);
    py::dict d;
    d["kind"] = c.immersion.kind;
    d["nx"] = c.nx;
    d["ny"] = c.ny;
    d["a"] = c.immersion.a;
    d["b"] = c.immersion.b;
    d["lambda_angles"] = c.family.lambda_angles;
    return d;
  });

  m.def("verify_config", [](const std::string& text) {
    const VerificationReport r = verify(parse_config(text));
    py::list checks;
    for (const Check& c : r.checks) checks.append(py::make_tuple(c.name, c.max, c.threshold, c.pass));
    return py::make_tuple(r.pass(), checks);
  });
}
