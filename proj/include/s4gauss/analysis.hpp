#pragma once

// One-call pipeline: jets -> normal frame -> fundamental data -> frames ->
// Maurer-Cartan forms.

#include <vector>

#include "s4gauss/frames.hpp"
#include "s4gauss/grid.hpp"
#include "s4gauss/immersion.hpp"
#include "s4gauss/invariants.hpp"

namespace s4g {

struct AnalysisOptions {
  DerivativeMode mode;
  /// Relative conformality defect accepted before NotConformal.
  double conformal_tol = 1e-3;
};

struct SurfaceAnalysis {
  ImmersionPtr immersion;
  Grid grid;
  AnalysisOptions options;
  std::vector<Jet2> jets;
  NormalFrameField normals;
  std::vector<FundamentalData> fd;
  std::vector<RMat5> frames;
  /// Closed-form forms assembled from fd.
  std::vector<MCForms> mc;
};

SurfaceAnalysis analyze(ImmersionPtr immersion, const Grid& grid, const AnalysisOptions& options = {});

/// Recomputes everything downstream of the normal frame.
SurfaceAnalysis with_normals(const SurfaceAnalysis& a, NormalFrameField normals);

/// Step of the jet differences: 0 for analytic jets, the FD step for FD
/// jets, the lattice spacing for sampled data.
double jet_step(const SurfaceAnalysis& a);

/// Largest interior |A_p|, the scale of the Gauss-map derivative.
double field_scale(const SurfaceAnalysis& a);

/// Default threshold for grid-difference-limited checks:
/// max(1e-6, 5 s (h^4 + h_jet^2)) with s = field_scale and h the larger
/// lattice spacing. Derived-field differences are fourth order, jet
/// differences second order.
double fd_tolerance(const SurfaceAnalysis& a);

}  // namespace s4g
