#pragma once

// Adapted SO(5) frames and their Maurer-Cartan forms A = F^T d_z F,
// B = F^T d_zbar F.

#include <span>
#include <vector>

#include "s4gauss/grid.hpp"
#include "s4gauss/immersion.hpp"
#include "s4gauss/invariants.hpp"
#include "s4gauss/linalg5.hpp"

namespace s4g {

/// Columns (f, F1, F2, N1, N2) with F1 = f_x/|f_x| and F2 the unit
/// tangent completing it, which is f_y/|f_y| for conformal jets. Throws
/// DegenerateFrame unless the result has determinant +1.
RMat5 build_adapted_frame(const Jet2& j, const NormalPair& n);
std::vector<RMat5> build_frame_field(std::span<const Jet2> jets, const NormalFrameField& normals);

/// a_i = (e^{-u} xi_i + e^u h_i)/sqrt 2, b_i = (e^{-u} xi_i - e^u h_i)/sqrt 2.
struct AiBi {
  cplx a1, a2, b1, b2;
};
AiBi aibi(const FundamentalData& fd);

/// The connection matrix A in closed form from the fundamental data.
CMat5 assemble_A_analytic(const FundamentalData& fd);

struct MCForms {
  CMat5 A, B;
  CMat5 A_k, A_p, B_k, B_p;
  cplx a1, a2, b1, b2;
};

/// Splits one (A, B) pair and reads a_i, b_i off the entries
/// a_i = A(2+i, 1), b_i = -i A(2+i, 2).
MCForms make_mc_forms(const CMat5& a, const CMat5& b);
std::vector<MCForms> kp_fields(std::span<const CMat5> a, std::span<const CMat5> b);
/// Forms assembled in closed form from fundamental data, B = conj(A).
std::vector<MCForms> analytic_mc_forms(std::span<const FundamentalData> fd);
/// Largest |a_i - a_i(fd)|, |b_i - b_i(fd)| over the field.
double aibi_mismatch(std::span<const MCForms> mc, std::span<const FundamentalData> fd);

struct FrameDerivative {
  std::vector<CMat5> A, B;
};

/// A = F^T d_z F and B = F^T d_zbar F by grid differences of the frame.
FrameDerivative maurer_cartan_fd(const Grid& grid, std::span<const RMat5> frames);

/// |d_zbar A - d_z B - [A, B]| per node, derivatives by grid differences.
std::vector<double> mc_flatness_residual(const Grid& grid, std::span<const CMat5> a, std::span<const CMat5> b);

}  // namespace s4g
