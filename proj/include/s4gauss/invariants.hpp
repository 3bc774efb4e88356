#pragma once

// Normal frames, fundamental data and the compatibility equations.

#include <array>
#include <span>
#include <vector>

#include "s4gauss/grid.hpp"
#include "s4gauss/immersion.hpp"
#include "s4gauss/linalg5.hpp"

namespace s4g {

struct NormalPair {
  RVec5 n1, n2;
};

/// Orthonormal normal frame over a grid. The field is built by
/// rotation-minimizing transport from a seed node, so it is continuous but
/// on periodic axes it may fail to close; the closing angles record that.
struct NormalFrameField {
  std::vector<NormalPair> n;
  double closing_angle_x = 0.0;
  double closing_angle_y = 0.0;
};

/// Orthonormal (f, t1, t2) with t1 parallel to f_x. Throws
/// DegenerateImmersion at branch points.
std::array<RVec5, 3> tangent_basis(const Jet2& j);

/// Seed at node (0,0) by Gram-Schmidt of the ambient axes in index order,
/// oriented so that (f, t1, t2, N1, N2) has determinant +1; propagated
/// along row 0, then up every column. Throws FrameObstruction when a
/// transported frame is nearly tangent at the next node.
NormalFrameField build_normal_frame(const Grid& grid, std::span<const Jet2> jets);

/// Rotates every (N1, N2) by the same angle theta.
NormalFrameField rotate_normals(const NormalFrameField& nf, double theta);

struct FundamentalData {
  double u = 0.0;
  cplx u_z;
  double h1 = 0.0, h2 = 0.0;
  cplx xi1, xi2;
  cplx sigma;

  double e2u() const;
  double mean_curvature_sq() const { return h1 * h1 + h2 * h2; }
  double xi_sq() const;
};

/// Pointwise part: u, h_i, xi_i. u_z and sigma are left zero.
FundamentalData pointwise_fundamental_data(const Jet2& j, const NormalPair& n, double conformal_tol = 1e-3);

/// Full field: pointwise data plus u_z and sigma = <d_z N2, N1> from grid
/// differences of the u and N2 fields.
std::vector<FundamentalData> fundamental_data(const Grid& grid, std::span<const Jet2> jets,
                                              const NormalFrameField& normals, double conformal_tol = 1e-3);

/// K = 1 + |H|^2 - e^{-4u}(|xi1|^2 + |xi2|^2).
double gauss_curvature(const FundamentalData& fd);
std::vector<double> gauss_curvature(std::span<const FundamentalData> fd);
/// K = -2 e^{-2u} u_{z zbar} by grid differences of u.
std::vector<double> gauss_curvature_laplace(const Grid& grid, std::span<const FundamentalData> fd);
/// Kperp = -e^{-2u} Im(d_zbar sigma).
std::vector<double> normal_curvature(const Grid& grid, std::span<const FundamentalData> fd);

struct CompatibilityResiduals {
  double res_G = 0.0, res_C1 = 0.0, res_C2 = 0.0, res_R = 0.0;
  /// sqrt(res_C1^2 + res_C2^2); unchanged by constant normal rotations.
  double codazzi() const;
};

std::vector<CompatibilityResiduals> compatibility_residuals(const Grid& grid, std::span<const FundamentalData> fd);

/// Normal covariant z-derivative of H by two routes: directly from h_i and
/// sigma, and through the Codazzi equations from xi_i.
struct NormalDerivativeH {
  cplx direct1, direct2;
  cplx codazzi1, codazzi2;
  double norm() const;
  double route_difference() const;
};

std::vector<NormalDerivativeH> normal_derivative_H(const Grid& grid, std::span<const FundamentalData> fd);

struct FieldStats {
  double max = 0.0;
  double rms = 0.0;
  std::size_t count = 0;
};

/// Max and RMS over interior nodes (see Grid::interior).
FieldStats interior_stats(const Grid& grid, std::span<const double> values);

}  // namespace s4g
