#include "s4gauss/loop_family.hpp"

#include <cmath>
#include <numbers>

#include "s4gauss/error.hpp"
#include "s4gauss/parallel.hpp"
#include "s4gauss/stencil.hpp"

namespace s4g {

LoopMatrices alpha_lambda(const MCForms& mc, cplx lambda) {
  if (std::abs(std::abs(lambda) - 1.0) > 1e-12) throw Error(ErrorKind::BadLambda, "lambda must lie on the unit circle");
  return {(1.0 / lambda) * mc.A_p + mc.A_k, lambda * mc.B_p + mc.B_k};
}

namespace {

struct LoopFields {
  std::vector<CMat5> a, b;
};

LoopFields loop_fields(std::span<const MCForms> mc, cplx lambda) {
  LoopFields f;
  f.a.resize(mc.size());
  f.b.resize(mc.size());
  for (std::size_t k = 0; k < mc.size(); ++k) {
    const LoopMatrices m = alpha_lambda(mc[k], lambda);
    f.a[k] = m.A;
    f.b[k] = m.B;
  }
  return f;
}

// Real generators of the frame equation along x and y at every node.
struct Generators {
  std::vector<RMat5> cx, cy;
};

Generators generators(std::span<const MCForms> mc, cplx lambda) {
  const LoopFields lf = loop_fields(mc, lambda);
  Generators g;
  g.cx.resize(mc.size());
  g.cy.resize(mc.size());
  for (std::size_t k = 0; k < mc.size(); ++k) {
    g.cx[k] = real(lf.a[k] + lf.b[k]);
    g.cy[k] = real(kI * (lf.a[k] - lf.b[k]));
  }
  return g;
}

// Bilinear interpolation at fractional node coordinates. Open axes
// extrapolate from the edge cell; periodic axes wrap.
RMat5 interpolate(const Grid& g, const std::vector<RMat5>& c, double gi, double gj) {
  auto cell = [](double t, int n, bool periodic, int& k0, int& k1, double& w) {
    int k = static_cast<int>(std::floor(t));
    if (!periodic) k = std::clamp(k, 0, n - 2);
    w = t - k;
    k0 = periodic ? detail::wrap(k, n) : k;
    k1 = periodic ? detail::wrap(k + 1, n) : k + 1;
  };
  int i0, i1, j0, j1;
  double wx, wy;
  cell(gi, g.nx(), g.domain().periodic_x, i0, i1, wx);
  cell(gj, g.ny(), g.domain().periodic_y, j0, j1, wy);
  // Exact node hits skip the blend so lattice paths see nodal values.
  if (wx == 0.0 && wy == 0.0) return c[g.index(i0, j0)];
  return (1.0 - wx) * (1.0 - wy) * c[g.index(i0, j0)] + wx * (1.0 - wy) * c[g.index(i1, j0)] +
         (1.0 - wx) * wy * c[g.index(i0, j1)] + wx * wy * c[g.index(i1, j1)];
}

// Classical RK4 for F' = F C(s) from s0 to s1; coef returns C already
// scaled to the parameter s.
template <class Coef>
RMat5 rk4(RMat5 f, const Coef& coef, double s0, double s1, int steps, int retract_every, long& counter) {
  const double dt = (s1 - s0) / steps;
  for (int n = 0; n < steps; ++n) {
    const double s = s0 + n * dt;
    const RMat5 c0 = coef(s), ch = coef(s + 0.5 * dt), c1 = coef(s + dt);
    const RMat5 k1 = f * c0;
    const RMat5 k2 = (f + (0.5 * dt) * k1) * ch;
    const RMat5 k3 = (f + (0.5 * dt) * k2) * ch;
    const RMat5 k4 = (f + dt * k3) * c1;
    f += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    ++counter;
    if (retract_every > 0 && counter % retract_every == 0) f = retract_so5(f);
  }
  return f;
}

struct PathSolver {
  const Grid& g;
  const Generators& gen;
  int substeps;
  int retract_every;

  // One cell along x on row j, from node index i to i + dir.
  RMat5 step_x(const RMat5& f, int i, int j, int dir, long& counter) const {
    auto coef = [&](double s) { return g.hx() * interpolate(g, gen.cx, s, j); };
    return rk4(f, coef, i, i + dir, substeps, retract_every, counter);
  }
  RMat5 step_y(const RMat5& f, int i, int j, int dir, long& counter) const {
    auto coef = [&](double s) { return g.hy() * interpolate(g, gen.cy, i, s); };
    return rk4(f, coef, j, j + dir, substeps, retract_every, counter);
  }

  // Fills a whole lattice line starting from the value at `start`.
  void sweep(std::vector<RMat5>& out, Axis axis, int fixed, int start) const {
    const int n = axis == Axis::X ? g.nx() : g.ny();
    auto idx = [&](int m) { return axis == Axis::X ? g.index(m, fixed) : g.index(fixed, m); };
    for (int dir : {+1, -1}) {
      long counter = 0;
      for (int m = start; m + dir >= 0 && m + dir < n; m += dir)
        out[idx(m + dir)] = axis == Axis::X ? step_x(out[idx(m)], m, fixed, dir, counter)
                                            : step_y(out[idx(m)], fixed, m, dir, counter);
    }
  }
};

void check_config(const Grid& g, const PathIntegratorConfig& cfg) {
  if (cfg.substeps < 1 || cfg.retract_every < 0)
    throw Error(ErrorKind::InvalidArgument, "substeps must be >= 1 and retraction cadence >= 0");
  if (cfg.base_i < 0 || cfg.base_i >= g.nx() || cfg.base_j < 0 || cfg.base_j >= g.ny())
    throw Error(ErrorKind::InvalidArgument, "basepoint outside the grid");
}

}  // namespace

std::vector<double> zcc_residual(const Grid& grid, std::span<const MCForms> mc, cplx lambda) {
  const LoopFields lf = loop_fields(mc, lambda);
  return mc_flatness_residual(grid, lf.a, lf.b);
}

std::vector<cplx> default_lambdas() {
  std::vector<cplx> out;
  for (int k = 0; k < 8; ++k) out.push_back(std::polar(1.0, k * std::numbers::pi / 4.0));
  out.push_back(std::polar(1.0, std::numbers::pi / 5.0));
  return out;
}

ExtendedFrameField integrate_extended_frame(const Grid& grid, std::span<const MCForms> mc, cplx lambda,
                                            const PathIntegratorConfig& cfg, PathOrder order) {
  check_config(grid, cfg);
  const Generators gen = generators(mc, lambda);
  const PathSolver ps{grid, gen, cfg.substeps, cfg.retract_every};
  ExtendedFrameField out;
  out.F.assign(grid.size(), RMat5{});
  out.F[grid.index(cfg.base_i, cfg.base_j)] = RMat5::identity();
  if (order == PathOrder::RowsFirst) {
    ps.sweep(out.F, Axis::X, cfg.base_j, cfg.base_i);
    parallel_for(static_cast<std::size_t>(grid.nx()),
                 [&](std::size_t i) { ps.sweep(out.F, Axis::Y, static_cast<int>(i), cfg.base_j); });
  } else {
    ps.sweep(out.F, Axis::Y, cfg.base_i, cfg.base_j);
    parallel_for(static_cast<std::size_t>(grid.ny()),
                 [&](std::size_t j) { ps.sweep(out.F, Axis::X, static_cast<int>(j), cfg.base_i); });
  }
  long counter = 0;
  if (grid.domain().periodic_x) {
    const RMat5 wrapped = ps.step_x(out.F[grid.index(grid.nx() - 1, cfg.base_j)], grid.nx() - 1, cfg.base_j, +1, counter);
    out.monodromy_x = frobenius(wrapped - out.F[grid.index(0, cfg.base_j)]);
  }
  if (grid.domain().periodic_y) {
    const RMat5 wrapped = ps.step_y(out.F[grid.index(cfg.base_i, grid.ny() - 1)], cfg.base_i, grid.ny() - 1, +1, counter);
    out.monodromy_y = frobenius(wrapped - out.F[grid.index(cfg.base_i, 0)]);
  }
  for (const RMat5& f : out.F) out.max_orthogonality_defect = std::max(out.max_orthogonality_defect, orthogonality_defect(f));
  return out;
}

double path_independence_residual(const Grid& grid, std::span<const MCForms> mc, cplx lambda,
                                  const PathIntegratorConfig& cfg) {
  check_config(grid, cfg);
  const Generators gen = generators(mc, lambda);
  const PathSolver ps{grid, gen, cfg.substeps, cfg.retract_every};
  const int ic = cfg.base_i < grid.nx() / 2 ? grid.nx() - 1 : 0;
  const int jc = cfg.base_j < grid.ny() / 2 ? grid.ny() - 1 : 0;
  const int dx = ic > cfg.base_i ? 1 : -1, dy = jc > cfg.base_j ? 1 : -1;

  long c1 = 0, c2 = 0;
  RMat5 rows = RMat5::identity(), cols = RMat5::identity();
  for (int i = cfg.base_i; i != ic; i += dx) rows = ps.step_x(rows, i, cfg.base_j, dx, c1);
  for (int j = cfg.base_j; j != jc; j += dy) rows = ps.step_y(rows, ic, j, dy, c1);
  for (int j = cfg.base_j; j != jc; j += dy) cols = ps.step_y(cols, cfg.base_i, j, dy, c2);
  for (int i = cfg.base_i; i != ic; i += dx) cols = ps.step_x(cols, i, jc, dx, c2);
  return frobenius(rows - cols);
}

LoopSample family_sample(const Grid& grid, std::span<const MCForms> mc, std::span<const FundamentalData> fd,
                         cplx lambda, const PathIntegratorConfig& cfg) {
  LoopSample s;
  s.lambda = lambda;
  s.frame = integrate_extended_frame(grid, mc, lambda, cfg);
  const Generators gen = generators(mc, lambda);
  const PathSolver local{grid, gen, 2, 0};

  const double delta = 0.01 * std::min(grid.hx(), grid.hy());
  const double ex = delta / grid.hx(), ey = delta / grid.hy();
  std::vector<NormalPair> normals(grid.size());
  s.jets.resize(grid.size());
  s.fd.resize(grid.size());

  parallel_for(grid.size(), [&](std::size_t k) {
    const int i = grid.col_of(k), j = grid.row_of(k);
    const RMat5& f0 = s.frame.F[k];
    // Frame at the node offset by (a ex, b ey): x first, then y.
    auto at = [&](int a, int b) {
      long counter = 0;
      auto cxf = [&](double t) { return grid.hx() * interpolate(grid, gen.cx, t, j); };
      RMat5 f = a ? rk4(f0, cxf, i, i + a * ex, local.substeps, 0, counter) : f0;
      auto cyf = [&](double t) { return grid.hy() * interpolate(grid, gen.cy, i + a * ex, t); };
      return b ? rk4(f, cyf, j, j + b * ey, local.substeps, 0, counter) : f;
    };
    const RMat5 e = at(1, 0), w = at(-1, 0), n = at(0, 1), so = at(0, -1);
    const RMat5 ne = at(1, 1), nw = at(-1, 1), se = at(1, -1), sw = at(-1, -1);
    Jet2 jet;
    jet.f = f0.col(0);
    jet.f_x = (e.col(0) - w.col(0)) / (2.0 * delta);
    jet.f_y = (n.col(0) - so.col(0)) / (2.0 * delta);
    jet.f_xx = (e.col(0) - 2.0 * jet.f + w.col(0)) / (delta * delta);
    jet.f_yy = (n.col(0) - 2.0 * jet.f + so.col(0)) / (delta * delta);
    jet.f_xy = (ne.col(0) - se.col(0) - nw.col(0) + sw.col(0)) / (4.0 * delta * delta);
    s.jets[k] = jet;
    normals[k] = {f0.col(3), f0.col(4)};

    auto dz = [&](std::size_t c) {
      return 0.5 * complexify((e.col(c) - w.col(c)) / (2.0 * delta), -1.0 * (n.col(c) - so.col(c)) / (2.0 * delta));
    };
    FundamentalData d = pointwise_fundamental_data(jet, normals[k], 1e-2);
    d.sigma = 0.5 * (bilinear_c(dz(4), complexify(f0.col(3))) - bilinear_c(dz(3), complexify(f0.col(4))));
    s.fd[k] = d;
  });
  {
    std::vector<double> u(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) u[k] = s.fd[k].u;
    const auto uz = diff_z<double>(grid, u);
    for (std::size_t k = 0; k < grid.size(); ++k) s.fd[k].u_z = uz[k];
  }

  FamilyDiagnostics& dg = s.diag;
  dg.lambda = lambda;
  dg.monodromy_x = s.frame.monodromy_x;
  dg.monodromy_y = s.frame.monodromy_y;
  dg.orthogonality = s.frame.max_orthogonality_defect;
  const cplx lm2 = 1.0 / (lambda * lambda);
  const auto kp = normal_curvature(grid, fd);
  const auto kp_l = normal_curvature(grid, s.fd);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!grid.interior(k)) continue;
    const FundamentalData &a = s.fd[k], &b = fd[k];
    dg.u_dev = std::max(dg.u_dev, std::abs(a.u - b.u));
    dg.h_dev = std::max({dg.h_dev, std::abs(a.h1 - b.h1), std::abs(a.h2 - b.h2)});
    dg.normH_dev = std::max(dg.normH_dev, std::abs(std::sqrt(a.mean_curvature_sq()) - std::sqrt(b.mean_curvature_sq())));
    dg.xi_dev = std::max({dg.xi_dev, std::abs(a.xi1 - lm2 * b.xi1), std::abs(a.xi2 - lm2 * b.xi2)});
    dg.sigma_dev = std::max(dg.sigma_dev, std::abs(a.sigma - b.sigma));
    dg.K_dev = std::max(dg.K_dev, std::abs(gauss_curvature(a) - gauss_curvature(b)));
    dg.Kperp_dev = std::max(dg.Kperp_dev, std::abs(kp_l[k] - kp[k]));
    const auto [c, d] = conformality_residual(s.jets[k]);
    dg.conformal_dev = std::max({dg.conformal_dev, std::abs(c),
                                 std::abs(dot(s.jets[k].f_x, s.jets[k].f_x) - 2.0 * b.e2u())});
    (void)d;
  }
  return s;
}

}  // namespace s4g
