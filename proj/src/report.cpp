#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

#include "s4gauss/cli.hpp"
#include "s4gauss/error.hpp"
#include "s4gauss/format.hpp"
#include "s4gauss/gauss_tension.hpp"
#include "s4gauss/invariants.hpp"

namespace s4g {

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void write_report(const VerificationReport& r, std::ostream& os) {
  os << "subject=" << r.subject << "\n";
  for (const Check& c : r.checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.name << " max=" << format_double(c.max) << " rms=" << format_double(c.rms)
       << " threshold=" << format_double(c.threshold);
    if (!c.note.empty()) os << " note=" << c.note;
    os << "\n";
  }
  os << "overall=" << (r.pass() ? "PASS" : "FAIL") << "\n";
}

double residual_threshold(const RunConfig& cfg, const SurfaceAnalysis& a) {
  return cfg.tol.residual > 0.0 ? cfg.tol.residual : fd_tolerance(a);
}

SurfaceAnalysis analyze_config(const RunConfig& cfg) {
  ImmersionPtr imm = build_immersion(cfg.immersion);
  const Grid grid = imm->default_grid(cfg.nx, cfg.ny);
  return analyze(std::move(imm), grid, AnalysisOptions{cfg.derivative, cfg.tol.conformal});
}

namespace {

Check field_check(const std::string& name, const Grid& grid, const std::vector<double>& v, double threshold) {
  const FieldStats s = interior_stats(grid, v);
  return {name, s.max, s.rms, threshold, s.max <= threshold, ""};
}

template <class F>
std::vector<double> per_node(std::size_t n, F f) {
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = f(k);
  return v;
}

}  // namespace

VerificationReport verify_analysis(const RunConfig& cfg, const SurfaceAnalysis& a) {
  VerificationReport r;
  r.subject = a.immersion->describe();
  const Grid& g = a.grid;
  const std::size_t n = g.size();
  const double tol = residual_threshold(cfg, a);

  r.checks.push_back(field_check("conformality", g,
                                 per_node(n, [&](std::size_t k) { return relative_conformality_defect(a.jets[k]); }),
                                 cfg.tol.conformal));
  r.checks.push_back(field_check("frame_orthogonality", g,
                                 per_node(n, [&](std::size_t k) { return orthogonality_defect(a.frames[k]); }),
                                 cfg.tol.orthogonality));

  const auto res = compatibility_residuals(g, a.fd);
  r.checks.push_back(field_check("gauss", g, per_node(n, [&](std::size_t k) { return res[k].res_G; }), tol));
  r.checks.push_back(field_check("codazzi", g, per_node(n, [&](std::size_t k) { return res[k].codazzi(); }), tol));
  r.checks.push_back(field_check("ricci", g, per_node(n, [&](std::size_t k) { return res[k].res_R; }), tol));

  const auto k_alg = gauss_curvature(a.fd);
  const auto k_lap = gauss_curvature_laplace(g, a.fd);
  r.checks.push_back(
      field_check("gauss_curvature_routes", g, per_node(n, [&](std::size_t k) { return std::abs(k_alg[k] - k_lap[k]); }), tol));

  const FrameDerivative mfd = maurer_cartan_fd(g, a.frames);
  r.checks.push_back(field_check("maurer_cartan_fd", g,
                                 per_node(n, [&](std::size_t k) { return frobenius(mfd.A[k] - a.mc[k].A); }), tol));
  std::vector<CMat5> am(n), bm(n);
  for (std::size_t k = 0; k < n; ++k) {
    am[k] = a.mc[k].A;
    bm[k] = a.mc[k].B;
  }
  r.checks.push_back(field_check("maurer_cartan_flatness", g, mc_flatness_residual(g, am, bm), tol));

  r.checks.push_back(field_check("special_property", g,
                                 per_node(n, [&](std::size_t k) { return special_property_residual(a.mc[k]); }),
                                 cfg.tol.special));
  const double ab = aibi_mismatch(a.mc, a.fd);
  r.checks.push_back({"aibi_entries", ab, ab, cfg.tol.special, ab <= cfg.tol.special, ""});

  const auto t = tension_vector(g, a.mc, a.fd, a.frames);
  r.checks.push_back(
      field_check("tension_routes", g, per_node(n, [&](std::size_t k) { return tension_route_mismatch(t[k]); }), tol));
  r.checks.push_back(
      field_check("tension_pattern", g, per_node(n, [&](std::size_t k) { return tension_pattern_defect(t[k].M); }), tol));

  // The two harmonicity indicators must agree once the threshold clears the
  // discretization error; the verdict itself is data.
  const double eps = std::max(cfg.tol.harmonic, 10.0 * tol);
  const HarmonicityReport h = harmonicity_verdict(g, t, eps);
  const HarmonicityReport hv = harmonicity_verdict(g, t, cfg.tol.harmonic);
  r.checks.push_back({"harmonicity_agreement", h.max_M, h.max_gradH, eps, h.consistent(),
                      "verdict=" + std::string(hv.harmonic() ? "HARMONIC" : (hv.consistent() ? "NOT_HARMONIC" : "INCONSISTENT"))});
  return r;
}

VerificationReport verify(const RunConfig& cfg) {
  try {
    return verify_analysis(cfg, analyze_config(cfg));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ConfigError) throw;
    VerificationReport r;
    r.subject = cfg.immersion.kind;
    r.checks.push_back({to_string(e.kind()), HUGE_VAL, HUGE_VAL, 0.0, false, e.what()});
    return r;
  }
}

void export_fields(const SurfaceAnalysis& a, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::IoError, "cannot write " + path);
  const Grid& g = a.grid;
  const auto res = compatibility_residuals(g, a.fd);
  const auto kperp = normal_curvature(g, a.fd);
  os << "x,y,u,h1,h2,re_xi1,im_xi1,re_xi2,im_xi2,re_sigma,im_sigma,K,Kperp,res_G,res_C1,res_C2,res_R,density\n";
  for (std::size_t k = 0; k < g.size(); ++k) {
    const FundamentalData& d = a.fd[k];
    const double vals[] = {g.x(g.col_of(k)), g.y(g.row_of(k)), d.u,          d.h1,          d.h2,
                           d.xi1.real(),     d.xi1.imag(),     d.xi2.real(), d.xi2.imag(), d.sigma.real(),
                           d.sigma.imag(),   gauss_curvature(d), kperp[k],   res[k].res_G, res[k].res_C1,
                           res[k].res_C2,    res[k].res_R,     energy_density(d)};
    bool first = true;
    for (double v : vals) {
      if (!first) os << ',';
      os << format_double(v);
      first = false;
    }
    os << '\n';
  }
  if (!os) throw Error(ErrorKind::IoError, "write failed for " + path);
}

void export_mesh(const Grid& grid, const std::vector<RVec5>& f, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::IoError, "cannot write " + path);
  os << "S4MESH " << grid.nx() << ' ' << grid.ny() << '\n';
  for (std::size_t k = 0; k < grid.size(); ++k) {
    os << format_double(grid.x(grid.col_of(k))) << ' ' << format_double(grid.y(grid.row_of(k)));
    for (std::size_t c = 0; c < 5; ++c) os << ' ' << format_double(f[k][c]);
    os << '\n';
  }
  if (!os) throw Error(ErrorKind::IoError, "write failed for " + path);
}

void export_obj(const Grid& grid, const std::vector<RVec5>& f, const std::array<int, 3>& axes,
                const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::IoError, "cannot write " + path);
  os << "# axes " << axes[0] << ' ' << axes[1] << ' ' << axes[2] << '\n';
  for (const RVec5& p : f)
    os << "v " << format_double(p[axes[0]]) << ' ' << format_double(p[axes[1]]) << ' ' << format_double(p[axes[2]])
       << '\n';
  const bool px = grid.domain().periodic_x, py = grid.domain().periodic_y;
  const int ci = px ? grid.nx() : grid.nx() - 1, cj = py ? grid.ny() : grid.ny() - 1;
  for (int j = 0; j < cj; ++j)
    for (int i = 0; i < ci; ++i) {
      const int i1 = (i + 1) % grid.nx(), j1 = (j + 1) % grid.ny();
      os << "f " << grid.index(i, j) + 1 << ' ' << grid.index(i1, j) + 1 << ' ' << grid.index(i1, j1) + 1 << ' '
         << grid.index(i, j1) + 1 << '\n';
    }
  if (!os) throw Error(ErrorKind::IoError, "write failed for " + path);
}

void write_energy_report(const EnergyReport& r, std::ostream& os) {
  os << "E=" << format_double(r.E) << '\n'
     << "W=" << format_double(r.W) << '\n'
     << "total_K=" << format_double(r.total_K) << '\n'
     << "area=" << format_double(r.area) << '\n'
     << "identity_residual=" << format_double(r.identity_residual) << '\n'
     << "euler_char_estimate=" << format_double(r.euler_char_estimate) << '\n'
     << "genus=" << r.genus << '\n'
     << "bound=" << format_double(2.0 * std::numbers::pi * (2.0 - 2.0 * r.genus)) << '\n'
     << "bound_slack=" << format_double(r.bound_slack) << '\n'
     << "tail_bound=" << format_double(r.tail_bound) << '\n'
     << "density_identity=" << format_double(r.density_identity) << '\n'
     << "min_willmore_density=" << format_double(r.min_willmore_density) << '\n';
}

}  // namespace s4g
