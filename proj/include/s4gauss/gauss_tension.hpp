#pragma once

// Gauss map into the flag manifold, tension of the Gauss map and the
// harmonicity verdict.

#include <span>
#include <string>
#include <vector>

#include "s4gauss/frames.hpp"
#include "s4gauss/grid.hpp"
#include "s4gauss/invariants.hpp"
#include "s4gauss/linalg5.hpp"

namespace s4g {

/// Spanning vectors of the three lines: F0, F1 - iF2, N1 - iN2.
struct FlagPoint {
  RVec5 x0;
  CVec5 x1, x2;
};

FlagPoint gauss_map(const RMat5& frame);

struct FlagDiagnostics {
  double isotropy = 0.0;     // max |bilinear_c(x_i, x_i)|, i = 1, 2
  double orthogonality = 0.0;  // max bilinear and Hermitian pairing between distinct lines
  double projection = 0.0;   // |x0 - f|
};
FlagDiagnostics check_flag(const FlagPoint& p, const RVec5& f);

/// M = d_zbar A_p + [B_k, A_p], derivative by grid differences.
std::vector<CMat5> tension_matrix_direct(const Grid& grid, std::span<const MCForms> mc);

/// Norm of the entries of M outside the (1..2) x (3..4) blocks.
double tension_pattern_defect(const CMat5& m);

struct TensionCoeffs {
  cplx A1, A2, B1, B2;
};

/// Coefficients from the Codazzi form, derivatives by grid differences:
/// A1 = (e^u/sqrt2)(d_z h1 + d_zbar h1 + h2 (sigma + conj sigma)),
/// B1 = (e^u/sqrt2)(d_z h1 - d_zbar h1 + h2 (sigma - conj sigma)),
/// A2, B2 the same with (h2, -h1) in place of (h1, h2).
std::vector<TensionCoeffs> tension_coeffs(const Grid& grid, std::span<const FundamentalData> fd);

struct TensionData {
  CMat5 M;
  TensionCoeffs coeffs;
  cplx gradH1, gradH2;
  CVec5 psi;

  double gradH_norm() const;
};

/// gradH_i = (A_i + B_i)/(sqrt2 e^u); Psi = (-A1 + iA2) F1 + (-iB1 + B2) F2.
std::vector<TensionData> tension_vector(const Grid& grid, std::span<const MCForms> mc,
                                        std::span<const FundamentalData> fd, std::span<const RMat5> frames);

/// Largest distance between M(1,3), M(1,4), M(2,3), M(2,4) and
/// -A1, -A2, -iB1, -iB2.
double tension_route_mismatch(const TensionData& t);

/// |split_kp([A_p, B_p]).p_part|.
double special_property_residual(const MCForms& mc);

struct RealnessDiagnostics {
  double im_A = 0.0;  // max |Im A1|, |Im A2|
  double re_B = 0.0;  // max |Re B1|, |Re B2|
};
RealnessDiagnostics realness(const Grid& grid, std::span<const TensionData> t);

struct HarmonicityReport {
  double tol = 0.0;
  double max_M = 0.0;
  double max_gradH = 0.0;
  bool harmonic_by_M = false;
  bool harmonic_by_gradH = false;
  bool consistent() const { return harmonic_by_M == harmonic_by_gradH; }
  bool harmonic() const { return harmonic_by_M && harmonic_by_gradH; }
  std::string verdict() const;
};

/// Maxima over interior nodes compared with tol.
HarmonicityReport harmonicity_verdict(const Grid& grid, std::span<const TensionData> t, double tol);

}  // namespace s4g
