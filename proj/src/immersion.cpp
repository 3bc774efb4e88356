#include "s4gauss/immersion.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "s4gauss/error.hpp"
#include "s4gauss/format.hpp"
#include "s4gauss/parallel.hpp"
#include "s4gauss/stencil.hpp"

namespace s4g {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kUnitTol = 1e-6;

void check_unit(const RVec5& f, const char* where) {
  if (std::abs(norm(f) - 1.0) > kUnitTol)
    throw Error(ErrorKind::OffSphere, std::string(where) + ": |f| deviates from 1 by " +
                                          format_double(std::abs(norm(f) - 1.0)));
}

// Jet of g/D from jets of the numerator g and the scalar D.
Jet2 quotient_jet(const Jet2& g, double d, double dx, double dy, double dxx, double dxy, double dyy) {
  Jet2 j;
  const double d2 = d * d, d3 = d2 * d;
  j.f = g.f / d;
  j.f_x = g.f_x / d - g.f * (dx / d2);
  j.f_y = g.f_y / d - g.f * (dy / d2);
  j.f_xx = g.f_xx / d - g.f_x * (2.0 * dx / d2) - g.f * (dxx / d2) + g.f * (2.0 * dx * dx / d3);
  j.f_yy = g.f_yy / d - g.f_y * (2.0 * dy / d2) - g.f * (dyy / d2) + g.f * (2.0 * dy * dy / d3);
  j.f_xy = g.f_xy / d - g.f_x * (dy / d2) - g.f_y * (dx / d2) - g.f * (dxy / d2) +
           g.f * (2.0 * dx * dy / d3);
  return j;
}

double wrap_to(double v, double lo, double period) {
  double t = std::fmod(v - lo, period);
  if (t < 0) t += period;
  return lo + t;
}

}  // namespace

CVec5 Jet2::f_z() const { return 0.5 * complexify(f_x, -1.0 * f_y); }
RVec5 Jet2::f_zzbar() const { return 0.25 * (f_xx + f_yy); }
CVec5 Jet2::f_zz() const { return 0.25 * complexify(f_xx - f_yy, -2.0 * f_xy); }

// ---------------------------------------------------------------------------

ImmersionPtr Immersion::equatorial_sphere(double chart_radius) {
  if (!(chart_radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "sphere chart radius must be positive");
  Domain d{-chart_radius, chart_radius, -chart_radius, chart_radius, false, false};
  return ImmersionPtr(new Immersion(EquatorialSphere{chart_radius}, d));
}

ImmersionPtr Immersion::clifford_torus() {
  Domain d{0.0, kTwoPi, 0.0, kTwoPi, true, true};
  ImmersionPtr p(new Immersion(CliffordTorus{}, d));
  p->verify_periodicity();
  return p;
}

ImmersionPtr Immersion::pmc_torus(double a, double b) {
  if (!(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0))
    throw Error(ErrorKind::InvalidArgument, "pmc_torus needs 0 < a, b < 1");
  const double r2 = a * a + b * b;
  if (std::abs(r2 - 1.0) > 1e-6) throw Error(ErrorKind::InvalidArgument, "pmc_torus needs a^2 + b^2 = 1");
  // Inputs already on the unit circle to rounding are kept bit for bit.
  if (std::abs(r2 - 1.0) > 4.0 * std::numeric_limits<double>::epsilon()) {
    const double r = std::sqrt(r2);
    a /= r;
    b /= r;
  }
  Domain d{0.0, kTwoPi * a, 0.0, kTwoPi * b, true, true};
  ImmersionPtr p(new Immersion(PmcTorus{a, b}, d));
  p->verify_periodicity();
  return p;
}

ImmersionPtr Immersion::sampled(GridSamples samples) {
  if (samples.f.size() != static_cast<std::size_t>(samples.nx) * samples.ny)
    throw Error(ErrorKind::InvalidArgument, "sample count does not match nx*ny");
  (void)samples.grid();
  const Domain d = samples.domain;
  return ImmersionPtr(new Immersion(Sampled{std::move(samples)}, d));
}

ImmersionPtr Immersion::grid_file(const std::string& path) { return sampled(read_grid_file(path)); }

ImmersionPtr Immersion::moebius(ImmersionPtr inner, const RVec5& a) {
  if (!inner) throw Error(ErrorKind::InvalidArgument, "moebius needs an inner immersion");
  if (!(norm(a) < 1.0)) throw Error(ErrorKind::InvalidArgument, "moebius center needs |a| < 1");
  const Domain d = inner->domain();
  ImmersionPtr p(new Immersion(Moebius{std::move(inner), a}, d));
  if (!p->is_sampled()) p->verify_periodicity();
  return p;
}

bool Immersion::is_sampled() const {
  if (std::holds_alternative<Sampled>(src_)) return true;
  if (const auto* m = std::get_if<Moebius>(&src_)) return m->inner->is_sampled();
  return false;
}

std::string Immersion::describe() const {
  struct V {
    std::string operator()(const EquatorialSphere& s) const {
      return "equatorial_sphere(R=" + format_double(s.radius) + ")";
    }
    std::string operator()(const CliffordTorus&) const { return "clifford_torus"; }
    std::string operator()(const PmcTorus& p) const {
      return "pmc_torus(a=" + format_double(p.a) + ",b=" + format_double(p.b) + ")";
    }
    std::string operator()(const Sampled& s) const {
      return "grid_file(" + std::to_string(s.samples.nx) + "x" + std::to_string(s.samples.ny) + ")";
    }
    std::string operator()(const Moebius& m) const {
      std::string c;
      for (std::size_t i = 0; i < 5; ++i) c += (i ? "," : "") + format_double(m.center[i]);
      return "moebius(" + m.inner->describe() + ",a=(" + c + "))";
    }
  };
  return std::visit(V{}, src_);
}

void Immersion::verify_periodicity() const {
  for (int s = 0; s < 7; ++s) {
    const double t = (s + 0.37) / 7.0;
    const double y = dom_.y0 + t * dom_.extent_y();
    const double x = dom_.x0 + t * dom_.extent_x();
    if (dom_.periodic_x && norm(position(dom_.x0, y) - position(dom_.x1, y)) >= 1e-8)
      throw Error(ErrorKind::InvalidArgument, "immersion is not periodic in x");
    if (dom_.periodic_y && norm(position(x, dom_.y0) - position(x, dom_.y1)) >= 1e-8)
      throw Error(ErrorKind::InvalidArgument, "immersion is not periodic in y");
  }
}

Grid Immersion::default_grid(int nx, int ny) const {
  if (const auto* s = std::get_if<Sampled>(&src_)) return s->samples.grid();
  if (const auto* m = std::get_if<Moebius>(&src_)) return m->inner->default_grid(nx, ny);
  return Grid(dom_, nx, ny);
}

// ---------------------------------------------------------------------------

namespace {

// Nearest lattice node of a sampled source, or OutOfDomain.
std::pair<int, int> locate_node(const GridSamples& s, double x, double y) {
  const Grid g = s.grid();
  const double fi = (x - s.domain.x0) / g.hx();
  const double fj = (y - s.domain.y0) / g.hy();
  const long i = std::lround(fi), j = std::lround(fj);
  if (std::abs(fi - i) > 1e-9 || std::abs(fj - j) > 1e-9)
    throw Error(ErrorKind::OutOfDomain, "sampled immersion queried off its lattice");
  auto fit = [](long k, int n, bool periodic) -> long {
    if (periodic) return ((k % n) + n) % n;
    return (k >= 0 && k < n) ? k : -1;
  };
  const long ii = fit(i, s.nx, s.domain.periodic_x), jj = fit(j, s.ny, s.domain.periodic_y);
  if (ii < 0 || jj < 0) throw Error(ErrorKind::OutOfDomain, "point outside the sampled lattice");
  return {static_cast<int>(ii), static_cast<int>(jj)};
}

Jet2 sampled_node_jet(const GridSamples& s, int i, int j) {
  const Grid g = s.grid();
  auto line = [&](Axis a) { return detail::line_of(g, a); };
  auto fx_at = [&](int jj) {
    return [&, jj](int m) { return s.f[g.index(m, jj)]; };
  };
  auto fy_at = [&](int ii) {
    return [&, ii](int m) { return s.f[g.index(ii, m)]; };
  };
  Jet2 jet;
  jet.f = s.f[g.index(i, j)];
  jet.f_x = detail::first_at<RVec5>(line(Axis::X), i, FdOrder::Second, fx_at(j));
  jet.f_y = detail::first_at<RVec5>(line(Axis::Y), j, FdOrder::Second, fy_at(i));
  jet.f_xx = detail::second_at<RVec5>(line(Axis::X), i, FdOrder::Second, fx_at(j));
  jet.f_yy = detail::second_at<RVec5>(line(Axis::Y), j, FdOrder::Second, fy_at(i));
  // Mixed derivative as the y-difference of x-differences.
  jet.f_xy = detail::first_at<RVec5>(line(Axis::Y), j, FdOrder::Second, [&](int m) {
    return detail::first_at<RVec5>(line(Axis::X), i, FdOrder::Second, fx_at(m));
  });
  return jet;
}

}  // namespace

RVec5 Immersion::position(double x, double y) const {
  struct V {
    double x, y;
    RVec5 operator()(const EquatorialSphere&) const {
      const double r2 = x * x + y * y, d = 1.0 + r2;
      return RVec5{{2.0 * x / d, 2.0 * y / d, (1.0 - r2) / d, 0.0, 0.0}};
    }
    RVec5 operator()(const CliffordTorus&) const {
      const double s = std::numbers::sqrt2 / 2.0;
      return RVec5{{s * std::cos(x), s * std::sin(x), s * std::cos(y), s * std::sin(y), 0.0}};
    }
    RVec5 operator()(const PmcTorus& p) const {
      return RVec5{{p.a * std::cos(x / p.a), p.a * std::sin(x / p.a), p.b * std::cos(y / p.b),
                    p.b * std::sin(y / p.b), 0.0}};
    }
    RVec5 operator()(const Sampled& s) const {
      const auto [i, j] = locate_node(s.samples, x, y);
      return s.samples.f[s.samples.grid().index(i, j)];
    }
    RVec5 operator()(const Moebius& m) const { return moebius_transform(m.center, m.inner->position(x, y)); }
  };
  return std::visit(V{x, y}, src_);
}

Jet2 Immersion::analytic_jet(double x, double y) const {
  struct V {
    double x, y;
    Jet2 operator()(const EquatorialSphere&) const {
      Jet2 g;
      g.f = RVec5{{2.0 * x, 2.0 * y, 1.0 - x * x - y * y, 0.0, 0.0}};
      g.f_x = RVec5{{2.0, 0.0, -2.0 * x, 0.0, 0.0}};
      g.f_y = RVec5{{0.0, 2.0, -2.0 * y, 0.0, 0.0}};
      g.f_xx = RVec5{{0.0, 0.0, -2.0, 0.0, 0.0}};
      g.f_yy = g.f_xx;
      return quotient_jet(g, 1.0 + x * x + y * y, 2.0 * x, 2.0 * y, 2.0, 0.0, 2.0);
    }
    Jet2 operator()(const CliffordTorus&) const {
      const double s = std::numbers::sqrt2 / 2.0;
      const double cx = s * std::cos(x), sx = s * std::sin(x), cy = s * std::cos(y), sy = s * std::sin(y);
      Jet2 j;
      j.f = RVec5{{cx, sx, cy, sy, 0.0}};
      j.f_x = RVec5{{-sx, cx, 0.0, 0.0, 0.0}};
      j.f_y = RVec5{{0.0, 0.0, -sy, cy, 0.0}};
      j.f_xx = RVec5{{-cx, -sx, 0.0, 0.0, 0.0}};
      j.f_yy = RVec5{{0.0, 0.0, -cy, -sy, 0.0}};
      return j;
    }
    Jet2 operator()(const PmcTorus& p) const {
      const double cx = std::cos(x / p.a), sx = std::sin(x / p.a), cy = std::cos(y / p.b),
                   sy = std::sin(y / p.b);
      Jet2 j;
      j.f = RVec5{{p.a * cx, p.a * sx, p.b * cy, p.b * sy, 0.0}};
      j.f_x = RVec5{{-sx, cx, 0.0, 0.0, 0.0}};
      j.f_y = RVec5{{0.0, 0.0, -sy, cy, 0.0}};
      j.f_xx = RVec5{{-cx / p.a, -sx / p.a, 0.0, 0.0, 0.0}};
      j.f_yy = RVec5{{0.0, 0.0, -cy / p.b, -sy / p.b, 0.0}};
      return j;
    }
    Jet2 operator()(const Sampled& s) const {
      const auto [i, j] = locate_node(s.samples, x, y);
      return sampled_node_jet(s.samples, i, j);
    }
    Jet2 operator()(const Moebius&) const { return {}; }  // handled by the caller
  };
  return std::visit(V{x, y}, src_);
}

Jet2 Immersion::fd_jet(double x, double y, double hx, double hy) const {
  auto p = [&](double dx, double dy) { return position(x + dx, y + dy); };
  Jet2 j;
  const RVec5 c = p(0, 0), e = p(hx, 0), w = p(-hx, 0), n = p(0, hy), s = p(0, -hy);
  j.f = c;
  j.f_x = (e - w) / (2.0 * hx);
  j.f_y = (n - s) / (2.0 * hy);
  j.f_xx = (e - 2.0 * c + w) / (hx * hx);
  j.f_yy = (n - 2.0 * c + s) / (hy * hy);
  j.f_xy = (p(hx, hy) - p(hx, -hy) - p(-hx, hy) + p(-hx, -hy)) / (4.0 * hx * hy);
  return j;
}

Jet2 Immersion::jet(double x, double y, const DerivativeMode& mode) const {
  const double tx = 1e-12 * dom_.extent_x(), ty = 1e-12 * dom_.extent_y();
  if (!dom_.periodic_x && (x < dom_.x0 - tx || x > dom_.x1 + tx))
    throw Error(ErrorKind::OutOfDomain, "x outside the chart");
  if (!dom_.periodic_y && (y < dom_.y0 - ty || y > dom_.y1 + ty))
    throw Error(ErrorKind::OutOfDomain, "y outside the chart");
  if (dom_.periodic_x) x = wrap_to(x, dom_.x0, dom_.extent_x());
  if (dom_.periodic_y) y = wrap_to(y, dom_.y0, dom_.extent_y());

  Jet2 j;
  if (const auto* m = std::get_if<Moebius>(&src_)) {
    j = moebius_pushforward(m->center, m->inner->jet(x, y, mode));
  } else if (mode.kind == DerivativeMode::Kind::Analytic || std::holds_alternative<Sampled>(src_)) {
    j = analytic_jet(x, y);
  } else {
    const double hx = mode.hx > 0 ? mode.hx : 1e-4 * dom_.extent_x();
    const double hy = mode.hy > 0 ? mode.hy : 1e-4 * dom_.extent_y();
    j = fd_jet(x, y, hx, hy);
  }
  check_unit(j.f, "jet");
  return j;
}

std::vector<Jet2> Immersion::sample_jets(const Grid& grid, const DerivativeMode& mode) const {
  std::vector<Jet2> out(grid.size());
  if (const auto* m = std::get_if<Moebius>(&src_)) {
    out = m->inner->sample_jets(grid, mode);
    parallel_for(out.size(), [&](std::size_t k) {
      out[k] = moebius_pushforward(m->center, out[k]);
      check_unit(out[k].f, "jet");
    });
    return out;
  }
  if (const auto* s = std::get_if<Sampled>(&src_)) {
    const Grid g = s->samples.grid();
    if (g.nx() != grid.nx() || g.ny() != grid.ny() || g.hx() != grid.hx() || g.hy() != grid.hy())
      throw Error(ErrorKind::InvalidArgument, "sampled immersion must be evaluated on its own lattice");
    for (const RVec5& f : s->samples.f) check_unit(f, "grid sample");
    parallel_for(out.size(), [&](std::size_t k) {
      out[k] = sampled_node_jet(s->samples, grid.col_of(k), grid.row_of(k));
    });
    return out;
  }
  parallel_for(out.size(), [&](std::size_t k) {
    out[k] = jet(grid.x(grid.col_of(k)), grid.y(grid.row_of(k)), mode);
  });
  return out;
}

GridSamples sample_positions(const Immersion& imm, const Grid& grid) {
  GridSamples s;
  s.nx = grid.nx();
  s.ny = grid.ny();
  s.domain = grid.domain();
  s.f.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t k) {
    s.f[k] = imm.position(grid.x(grid.col_of(k)), grid.y(grid.row_of(k)));
  });
  return s;
}

// ---------------------------------------------------------------------------

GridSamples read_grid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open grid file " + path);
  std::string magic;
  GridSamples s;
  int px = 0, py = 0;
  if (!(in >> magic >> s.nx >> s.ny >> s.domain.x0 >> s.domain.x1 >> s.domain.y0 >> s.domain.y1 >> px >> py) ||
      magic != "S4GRID")
    throw Error(ErrorKind::IoError, "bad S4GRID header in " + path);
  if ((px != 0 && px != 1) || (py != 0 && py != 1))
    throw Error(ErrorKind::IoError, "periodic flags must be 0 or 1 in " + path);
  if (s.nx < 8 || s.ny < 8) throw Error(ErrorKind::IoError, "grid file needs nx, ny >= 8");
  s.domain.periodic_x = px == 1;
  s.domain.periodic_y = py == 1;
  s.f.resize(static_cast<std::size_t>(s.nx) * s.ny);
  for (auto& v : s.f)
    for (std::size_t c = 0; c < 5; ++c)
      if (!(in >> v[c])) throw Error(ErrorKind::IoError, "truncated sample data in " + path);
  std::string extra;
  if (in >> extra) throw Error(ErrorKind::IoError, "trailing data in " + path);
  return s;
}

void write_grid_file(const GridSamples& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
  out << "S4GRID " << s.nx << ' ' << s.ny << ' ' << format_double(s.domain.x0) << ' '
      << format_double(s.domain.x1) << ' ' << format_double(s.domain.y0) << ' ' << format_double(s.domain.y1)
      << ' ' << (s.domain.periodic_x ? 1 : 0) << ' ' << (s.domain.periodic_y ? 1 : 0) << '\n';
  for (const RVec5& v : s.f) {
    for (std::size_t c = 0; c < 5; ++c) out << (c ? " " : "") << format_double(v[c]);
    out << '\n';
  }
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path);
}

// ---------------------------------------------------------------------------

RVec5 moebius_transform(const RVec5& a, const RVec5& p) {
  const double pa = dot(p, a), aa = dot(a, a);
  return ((1.0 - aa) * p + (2.0 * (1.0 + pa)) * a) / (1.0 + 2.0 * pa + aa);
}

Jet2 moebius_pushforward(const RVec5& a, const Jet2& j) {
  const double aa = dot(a, a);
  const double pa = dot(j.f, a);
  const RVec5 n = (1.0 - aa) * j.f + (2.0 * (1.0 + pa)) * a;
  const double d = 1.0 + 2.0 * pa + aa;
  // The numerator is affine and the denominator linear in p, so only first
  // variations and their products appear.
  auto dn = [&](const RVec5& v) { return (1.0 - aa) * v + (2.0 * dot(v, a)) * a; };
  auto dd = [&](const RVec5& v) { return 2.0 * dot(v, a); };
  auto d1 = [&](const RVec5& v) { return dn(v) / d - n * (dd(v) / (d * d)); };
  auto d2 = [&](const RVec5& v, const RVec5& w) {
    return -1.0 * dn(v) * (dd(w) / (d * d)) - dn(w) * (dd(v) / (d * d)) + n * (2.0 * dd(v) * dd(w) / (d * d * d));
  };
  Jet2 g;
  g.f = n / d;
  g.f_x = d1(j.f_x);
  g.f_y = d1(j.f_y);
  g.f_xx = d2(j.f_x, j.f_x) + d1(j.f_xx);
  g.f_xy = d2(j.f_x, j.f_y) + d1(j.f_xy);
  g.f_yy = d2(j.f_y, j.f_y) + d1(j.f_yy);
  return g;
}

std::pair<double, double> conformality_residual(const Jet2& j) {
  return {dot(j.f_x, j.f_y), dot(j.f_x, j.f_x) - dot(j.f_y, j.f_y)};
}

double relative_conformality_defect(const Jet2& j) {
  const auto [c, d] = conformality_residual(j);
  const double s = dot(j.f_x, j.f_x) + dot(j.f_y, j.f_y);
  return (std::abs(c) + std::abs(d)) / s;
}

double conformal_factor(const Jet2& j, double tol) {
  if (norm(j.f_x) < 1e-10 || norm(j.f_y) < 1e-10)
    throw Error(ErrorKind::DegenerateImmersion, "vanishing differential (branch point)");
  if (relative_conformality_defect(j) > tol)
    throw Error(ErrorKind::NotConformal, "conformality defect " + format_double(relative_conformality_defect(j)));
  const double e2u = hermitian(j.f_z(), j.f_z()).real();
  return 0.5 * std::log(e2u);
}

cplx isotropy_indicator(const Jet2& j, const RVec5& n1, const RVec5& n2) {
  const CVec5 fzz = j.f_zz();
  const cplx x1 = bilinear_c(fzz, complexify(n1)), x2 = bilinear_c(fzz, complexify(n2));
  return x1 * x1 + x2 * x2;
}

}  // namespace s4g
