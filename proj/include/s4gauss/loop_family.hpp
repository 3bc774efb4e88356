#pragma once

// The lambda-family of connections, its zero-curvature residual, extended
// frames and the associated family of immersions.

#include <span>
#include <vector>

#include "s4gauss/frames.hpp"
#include "s4gauss/grid.hpp"
#include "s4gauss/invariants.hpp"
#include "s4gauss/linalg5.hpp"

namespace s4g {

struct LoopMatrices {
  CMat5 A, B;
};

/// A_lambda = A_p / lambda + A_k, B_lambda = lambda B_p + B_k. Throws
/// BadLambda unless ||lambda| - 1| <= 1e-12.
LoopMatrices alpha_lambda(const MCForms& mc, cplx lambda);

/// Flatness residual of (A_lambda, B_lambda), derivatives by grid differences.
std::vector<double> zcc_residual(const Grid& grid, std::span<const MCForms> mc, cplx lambda);

/// Default sample: the 8th roots of unity and e^{i pi/5}.
std::vector<cplx> default_lambdas();

struct PathIntegratorConfig {
  int base_i = 0, base_j = 0;
  /// Runge-Kutta steps per grid cell.
  int substeps = 4;
  /// Retract to SO(5) after this many steps; 0 never retracts.
  int retract_every = 1;
};

enum class PathOrder { RowsFirst, ColumnsFirst };

struct ExtendedFrameField {
  std::vector<RMat5> F;
  /// |F after one more cell across the seam - F at the start of that row
  /// (column)|; zero on open axes.
  double monodromy_x = 0.0;
  double monodromy_y = 0.0;
  double max_orthogonality_defect = 0.0;
};

/// Solves dF = F (A_lambda dz + B_lambda dzbar) with F(base) = I along
/// lattice paths: the base row (column) first, then every column (row).
/// Coefficients are linearly interpolated between nodes. Throws
/// DegenerateFrame from the retraction.
ExtendedFrameField integrate_extended_frame(const Grid& grid, std::span<const MCForms> mc, cplx lambda,
                                            const PathIntegratorConfig& cfg,
                                            PathOrder order = PathOrder::RowsFirst);

/// Frobenius distance at the node diagonally opposite the base between the
/// row-first and column-first lattice paths.
double path_independence_residual(const Grid& grid, std::span<const MCForms> mc, cplx lambda,
                                  const PathIntegratorConfig& cfg);

struct FamilyDiagnostics {
  cplx lambda;
  double u_dev = 0.0;        // max |u_lambda - u|
  double h_dev = 0.0;        // max |h_i^lambda - h_i|
  double normH_dev = 0.0;    // max ||H_lambda| - |H||
  double xi_dev = 0.0;       // max |xi_i^lambda - lambda^-2 xi_i|
  double sigma_dev = 0.0;    // max |sigma^lambda - sigma|
  double K_dev = 0.0;
  double Kperp_dev = 0.0;
  double conformal_dev = 0.0;  // max of |<fx,fy>| and ||fx|^2 - 2e^{2u}|
  double monodromy_x = 0.0, monodromy_y = 0.0;
  double orthogonality = 0.0;
};

/// The family member f_lambda with its data, evaluated from the extended
/// frame alone.
struct LoopSample {
  cplx lambda;
  ExtendedFrameField frame;
  std::vector<Jet2> jets;
  std::vector<FundamentalData> fd;
  FamilyDiagnostics diag;
};

/// Integrates F_lambda and recomputes the immersion data of its first
/// column. Derivatives of f_lambda come from short integrations of the
/// frame equation around each node (step 0.01 min(hx, hy)), so they do not
/// inherit grid-difference error.
LoopSample family_sample(const Grid& grid, std::span<const MCForms> mc, std::span<const FundamentalData> fd,
                         cplx lambda, const PathIntegratorConfig& cfg);

}  // namespace s4g
