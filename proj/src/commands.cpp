#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>

#include "s4gauss/cli.hpp"
#include "s4gauss/error.hpp"
#include "s4gauss/format.hpp"
#include "s4gauss/gauss_tension.hpp"
#include "s4gauss/loop_family.hpp"

namespace s4g {

namespace {

constexpr double kPi = std::numbers::pi;

std::string out_path(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.output.dir);
  return (std::filesystem::path(cfg.output.dir) / name).string();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::IoError, "cannot write " + path);
  return os;
}

void write_row(std::ostream& os, std::initializer_list<double> vals) {
  bool first = true;
  for (double v : vals) {
    if (!first) os << ',';
    os << format_double(v);
    first = false;
  }
  os << '\n';
}

std::vector<RVec5> positions(const SurfaceAnalysis& a) {
  std::vector<RVec5> f(a.jets.size());
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = a.jets[k].f;
  return f;
}

void write_surface(const RunConfig& cfg, const Grid& g, const std::vector<RVec5>& f, const std::string& stem) {
  if (cfg.output.mesh) export_mesh(g, f, out_path(cfg, stem + ".s4mesh"));
  if (cfg.output.obj) export_obj(g, f, cfg.output.obj_axes, out_path(cfg, stem + ".obj"));
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const SurfaceAnalysis a = analyze_config(cfg);
  if (cfg.output.fields) export_fields(a, out_path(cfg, "fields.csv"));
  write_surface(cfg, a.grid, positions(a), "surface");
  double hmax = 0.0, kmin = HUGE_VAL, kmax = -HUGE_VAL;
  for (std::size_t k = 0; k < a.fd.size(); ++k) {
    if (!a.grid.interior(k)) continue;
    hmax = std::max(hmax, std::sqrt(a.fd[k].mean_curvature_sq()));
    kmin = std::min(kmin, gauss_curvature(a.fd[k]));
    kmax = std::max(kmax, gauss_curvature(a.fd[k]));
  }
  out << "subject=" << a.immersion->describe() << '\n'
      << "grid=" << a.grid.nx() << 'x' << a.grid.ny() << '\n'
      << "max_norm_H=" << format_double(hmax) << '\n'
      << "K_min=" << format_double(kmin) << '\n'
      << "K_max=" << format_double(kmax) << '\n'
      << "normal_closing_angle_x=" << format_double(a.normals.closing_angle_x) << '\n'
      << "normal_closing_angle_y=" << format_double(a.normals.closing_angle_y) << '\n';
  return 0;
}

int cmd_tension(const RunConfig& cfg, std::ostream& out) {
  const SurfaceAnalysis a = analyze_config(cfg);
  const Grid& g = a.grid;
  const auto t = tension_vector(g, a.mc, a.fd, a.frames);
  {
    std::ofstream os = open_out(out_path(cfg, "tension.csv"));
    os << "x,y,norm_M,re_A1,im_A1,re_A2,im_A2,re_B1,im_B1,re_B2,im_B2,re_gradH1,im_gradH1,re_gradH2,im_gradH2,"
          "route_mismatch,pattern_defect,special_property\n";
    for (std::size_t k = 0; k < g.size(); ++k) {
      const TensionCoeffs& c = t[k].coeffs;
      write_row(os, {g.x(g.col_of(k)), g.y(g.row_of(k)), frobenius(t[k].M), c.A1.real(), c.A1.imag(), c.A2.real(),
                     c.A2.imag(), c.B1.real(), c.B1.imag(), c.B2.real(), c.B2.imag(), t[k].gradH1.real(),
                     t[k].gradH1.imag(), t[k].gradH2.real(), t[k].gradH2.imag(), tension_route_mismatch(t[k]),
                     tension_pattern_defect(t[k].M), special_property_residual(a.mc[k])});
    }
  }
  const double eps = std::max(cfg.tol.harmonic, 10.0 * residual_threshold(cfg, a));
  const HarmonicityReport v = harmonicity_verdict(g, t, cfg.tol.harmonic);
  const HarmonicityReport agree = harmonicity_verdict(g, t, eps);
  const RealnessDiagnostics re = realness(g, t);
  std::ofstream os = open_out(out_path(cfg, "tension_report.txt"));
  for (std::ostream* s : {static_cast<std::ostream*>(&os), &out}) {
    *s << "subject=" << a.immersion->describe() << '\n'
       << "max_M=" << format_double(v.max_M) << '\n'
       << "max_gradH=" << format_double(v.max_gradH) << '\n'
       << "tol=" << format_double(v.tol) << '\n'
       << "verdict=" << v.verdict() << '\n'
       << "agreement_tol=" << format_double(eps) << '\n'
       << "indicators_agree=" << (agree.consistent() ? "yes" : "no") << '\n'
       << "max_im_A=" << format_double(re.im_A) << '\n'
       << "max_re_B=" << format_double(re.re_B) << '\n';
  }
  return agree.consistent() ? 0 : 1;
}

int cmd_family(const RunConfig& cfg, std::ostream& out) {
  const SurfaceAnalysis a = analyze_config(cfg);
  const Grid& g = a.grid;
  if (cfg.family.base_i >= g.nx() || cfg.family.base_j >= g.ny())
    throw Error(ErrorKind::ConfigError, "family basepoint outside the grid");
  PathIntegratorConfig pc{cfg.family.base_i, cfg.family.base_j, cfg.family.substeps, cfg.family.retract_every};
  std::ofstream os = open_out(out_path(cfg, "family.csv"));
  os << "angle_over_pi,re_lambda,im_lambda,u_dev,h_dev,normH_dev,xi_dev,sigma_dev,K_dev,Kperp_dev,conformal_dev,"
        "monodromy_x,monodromy_y,orthogonality,path_independence\n";
  int code = 0;
  for (std::size_t n = 0; n < cfg.family.lambda_angles.size(); ++n) {
    const double ang = cfg.family.lambda_angles[n];
    const cplx lambda = std::polar(1.0, ang * kPi);
    const LoopSample s = family_sample(g, a.mc, a.fd, lambda, pc);
    const double pir = path_independence_residual(g, a.mc, lambda, pc);
    const FamilyDiagnostics& d = s.diag;
    write_row(os, {ang, lambda.real(), lambda.imag(), d.u_dev, d.h_dev, d.normH_dev, d.xi_dev, d.sigma_dev, d.K_dev,
                   d.Kperp_dev, d.conformal_dev, d.monodromy_x, d.monodromy_y, d.orthogonality, pir});
    std::vector<RVec5> f(g.size());
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = s.frame.F[k].col(0);
    write_surface(cfg, g, f, "family_" + std::to_string(n));
    out << "lambda=exp(i*pi*" << format_double(ang) << ") u_dev=" << format_double(d.u_dev)
        << " xi_dev=" << format_double(d.xi_dev) << " path_independence=" << format_double(pir)
        << " orthogonality=" << format_double(d.orthogonality) << '\n';
    if (!(d.orthogonality <= cfg.tol.orthogonality)) code = 1;
  }
  return code;
}

int cmd_energy(const RunConfig& cfg, std::ostream& out) {
  const SurfaceAnalysis a = analyze_config(cfg);
  QuadratureOptions q;
  if (cfg.disk_radius)
    q.disk_radius = cfg.disk_radius;
  else if (cfg.immersion.kind == "equatorial_sphere")
    q.disk_radius = cfg.immersion.radius;
  const EnergyReport r = energy_report(a.grid, a.fd, a.immersion->genus(), q);
  std::ofstream os = open_out(out_path(cfg, "energy_report.txt"));
  for (std::ostream* s : {static_cast<std::ostream*>(&os), &out}) {
    *s << "subject=" << a.immersion->describe() << '\n';
    if (q.disk_radius) *s << "disk_radius=" << format_double(*q.disk_radius) << '\n';
    write_energy_report(r, *s);
  }
  return std::abs(r.identity_residual) <= 1e-8 * std::max(1.0, std::abs(r.E)) ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  VerificationReport r;
  try {
    const SurfaceAnalysis a = analyze_config(cfg);
    r = verify_analysis(cfg, a);
    if (cfg.output.fields) export_fields(a, out_path(cfg, "fields.csv"));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ConfigError) throw;
    r.subject = cfg.immersion.kind;
    r.checks.push_back({to_string(e.kind()), HUGE_VAL, HUGE_VAL, 0.0, false, e.what()});
  }
  std::ofstream os = open_out(out_path(cfg, "verify_report.txt"));
  write_report(r, os);
  write_report(r, out);
  return r.pass() ? 0 : 1;
}

void catalog_entry(std::ostream& out, const std::string& name, double a, double b) {
  // Flat tori (cos x, sin x) scaled by a and b; Clifford is a = b = 1/sqrt2.
  const double ha = a - 0.5 / a, hb = b - 0.5 / b;
  const double h2 = ha * ha + hb * hb;
  out << "[" << name << "]\n"
      << "u=" << format_double(name == "clifford_torus" ? -std::log(2.0) : -0.5 * std::log(2.0)) << '\n'
      << "norm_H=" << format_double(std::sqrt(h2)) << '\n'
      << "K=0\nKperp=0\ngenus=1\n"
      << "E=" << format_double(8.0 * kPi * kPi * a * b * (1.0 + h2)) << '\n'
      << "W=" << format_double(2.0 * kPi * a * b * (1.0 + h2)) << '\n'
      << "gauss_map=HARMONIC\n";
}

int cmd_catalog(const RunConfig& cfg, std::ostream& out) {
  out << "[equatorial_sphere]\n"
      << "chart=stereographic (2x,2y,1-r^2,0,0)/(1+r^2)\n"
      << "u_origin=" << format_double(0.5 * std::log(2.0)) << '\n'
      << "norm_H=0\nK=1\nKperp=0\ngenus=0\n"
      << "E=" << format_double(4.0 * kPi) << '\n'
      << "W=0\ngauss_map=HARMONIC\n";
  catalog_entry(out, "clifford_torus", std::sqrt(0.5), std::sqrt(0.5));
  const double a = cfg.immersion.kind == "pmc_torus" ? cfg.immersion.a : std::sqrt(3.0) / 2.0;
  const double b = cfg.immersion.kind == "pmc_torus" ? cfg.immersion.b : 0.5;
  const double r = std::hypot(a, b);
  out << "# pmc_torus with a=" << format_double(a / r) << " b=" << format_double(b / r) << '\n';
  catalog_entry(out, "pmc_torus", a / r, b / r);
  out << "[moebius]\n"
      << "image of any entry under p -> ((1-|a|^2)p + 2(1+<p,a>)a)/(1+2<p,a>+|a|^2), |a| < 1\n"
      << "gauss_map=NOT HARMONIC for a torus with a != 0\n"
      << "[grid_file]\n"
      << "format=S4GRID nx ny x0 x1 y0 y1 periodic_x periodic_y, then nx*ny rows of f0..f4, x fastest\n";
  return 0;
}

}  // namespace

int run_command(const std::string& cmd, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cmd == "analyze") return cmd_analyze(cfg, out);
    if (cmd == "tension") return cmd_tension(cfg, out);
    if (cmd == "family") return cmd_family(cfg, out);
    if (cmd == "energy") return cmd_energy(cfg, out);
    if (cmd == "verify") return cmd_verify(cfg, out);
    if (cmd == "catalog") return cmd_catalog(cfg, out);
    err << "unknown command '" << cmd << "'\n";
    return 2;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return e.kind() == ErrorKind::ConfigError ? 2 : 1;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "IoError: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace s4g
