#include "s4gauss/analysis.hpp"

#include <cmath>

namespace s4g {

namespace {

void rebuild_downstream(SurfaceAnalysis& a) {
  a.fd = fundamental_data(a.grid, a.jets, a.normals, a.options.conformal_tol);
  a.frames = build_frame_field(a.jets, a.normals);
  a.mc = analytic_mc_forms(a.fd);
}

}  // namespace

SurfaceAnalysis analyze(ImmersionPtr immersion, const Grid& grid, const AnalysisOptions& options) {
  SurfaceAnalysis a{std::move(immersion), grid, options, {}, {}, {}, {}, {}};
  a.jets = a.immersion->sample_jets(grid, options.mode);
  a.normals = build_normal_frame(grid, a.jets);
  rebuild_downstream(a);
  return a;
}

SurfaceAnalysis with_normals(const SurfaceAnalysis& a, NormalFrameField normals) {
  SurfaceAnalysis b{a.immersion, a.grid, a.options, a.jets, std::move(normals), {}, {}, {}};
  rebuild_downstream(b);
  return b;
}

double jet_step(const SurfaceAnalysis& a) {
  if (a.immersion->is_sampled()) return std::max(a.grid.hx(), a.grid.hy());
  if (a.options.mode.kind == DerivativeMode::Kind::Analytic) return 0.0;
  const Domain& d = a.immersion->domain();
  const double hx = a.options.mode.hx > 0 ? a.options.mode.hx : 1e-4 * d.extent_x();
  const double hy = a.options.mode.hy > 0 ? a.options.mode.hy : 1e-4 * d.extent_y();
  return std::max(hx, hy);
}

double field_scale(const SurfaceAnalysis& a) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.mc.size(); ++k)
    if (a.grid.interior(k)) s = std::max(s, frobenius(a.mc[k].A_p));
  return s;
}

double fd_tolerance(const SurfaceAnalysis& a) {
  const double h = std::max(a.grid.hx(), a.grid.hy());
  const double hj = jet_step(a);
  return std::max(1e-6, 5.0 * field_scale(a) * (h * h * h * h + hj * hj));
}

}  // namespace s4g
