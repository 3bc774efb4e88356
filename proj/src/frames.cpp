#include "s4gauss/frames.hpp"

#include <cmath>
#include <numbers>

#include "s4gauss/error.hpp"
#include "s4gauss/parallel.hpp"
#include "s4gauss/stencil.hpp"

namespace s4g {

RMat5 build_adapted_frame(const Jet2& j, const NormalPair& n) {
  const auto tb = tangent_basis(j);
  RMat5 f;
  f.set_col(0, tb[0]);
  f.set_col(1, tb[1]);
  f.set_col(2, tb[2]);
  f.set_col(3, n.n1);
  f.set_col(4, n.n2);
  if (orthogonality_defect(f) > 1e-9 || !(determinant(f) > 0.0))
    throw Error(ErrorKind::DegenerateFrame, "adapted frame is not in SO(5)");
  return f;
}

std::vector<RMat5> build_frame_field(std::span<const Jet2> jets, const NormalFrameField& normals) {
  std::vector<RMat5> out(jets.size());
  parallel_for(jets.size(), [&](std::size_t k) { out[k] = build_adapted_frame(jets[k], normals.n[k]); });
  return out;
}

AiBi aibi(const FundamentalData& fd) {
  const double eu = std::exp(fd.u), emu = 1.0 / eu;
  const double r = std::numbers::sqrt2 / 2.0;
  return {r * (emu * fd.xi1 + eu * fd.h1), r * (emu * fd.xi2 + eu * fd.h2), r * (emu * fd.xi1 - eu * fd.h1),
          r * (emu * fd.xi2 - eu * fd.h2)};
}

CMat5 assemble_A_analytic(const FundamentalData& fd) {
  const cplx i = kI;
  const double c = std::exp(fd.u) * std::numbers::sqrt2 / 2.0;
  const AiBi k = aibi(fd);
  CMat5 a;
  a(0, 1) = -c;
  a(0, 2) = i * c;
  a(1, 0) = c;
  a(1, 2) = i * fd.u_z;
  a(1, 3) = -k.a1;
  a(1, 4) = -k.a2;
  a(2, 0) = -i * c;
  a(2, 1) = -i * fd.u_z;
  a(2, 3) = -i * k.b1;
  a(2, 4) = -i * k.b2;
  a(3, 1) = k.a1;
  a(3, 2) = i * k.b1;
  a(3, 4) = fd.sigma;
  a(4, 1) = k.a2;
  a(4, 2) = i * k.b2;
  a(4, 3) = -fd.sigma;
  return a;
}

MCForms make_mc_forms(const CMat5& a, const CMat5& b) {
  MCForms m;
  m.A = a;
  m.B = b;
  const KPSplit sa = split_kp(a), sb = split_kp(b);
  m.A_k = sa.k_part;
  m.A_p = sa.p_part;
  m.B_k = sb.k_part;
  m.B_p = sb.p_part;
  m.a1 = a(3, 1);
  m.a2 = a(4, 1);
  m.b1 = -kI * a(3, 2);
  m.b2 = -kI * a(4, 2);
  return m;
}

std::vector<MCForms> kp_fields(std::span<const CMat5> a, std::span<const CMat5> b) {
  std::vector<MCForms> out(a.size());
  parallel_for(a.size(), [&](std::size_t k) { out[k] = make_mc_forms(a[k], b[k]); });
  return out;
}

std::vector<MCForms> analytic_mc_forms(std::span<const FundamentalData> fd) {
  std::vector<MCForms> out(fd.size());
  parallel_for(fd.size(), [&](std::size_t k) {
    const CMat5 a = assemble_A_analytic(fd[k]);
    out[k] = make_mc_forms(a, conj(a));
  });
  return out;
}

double aibi_mismatch(std::span<const MCForms> mc, std::span<const FundamentalData> fd) {
  double worst = 0.0;
  for (std::size_t k = 0; k < mc.size(); ++k) {
    const AiBi r = aibi(fd[k]);
    worst = std::max({worst, std::abs(mc[k].a1 - r.a1), std::abs(mc[k].a2 - r.a2), std::abs(mc[k].b1 - r.b1),
                      std::abs(mc[k].b2 - r.b2)});
  }
  return worst;
}

FrameDerivative maurer_cartan_fd(const Grid& grid, std::span<const RMat5> frames) {
  const auto dz = diff_z<RMat5>(grid, frames);
  FrameDerivative out;
  out.A.resize(frames.size());
  out.B.resize(frames.size());
  parallel_for(frames.size(), [&](std::size_t k) {
    const CMat5 ft = complexify(transpose(frames[k]));
    out.A[k] = ft * dz[k];
    out.B[k] = ft * conj(dz[k]);
  });
  return out;
}

std::vector<double> mc_flatness_residual(const Grid& grid, std::span<const CMat5> a, std::span<const CMat5> b) {
  const auto da = diff_zbar<CMat5>(grid, a);
  const auto db = diff_z<CMat5>(grid, b);
  std::vector<double> r(a.size());
  parallel_for(a.size(), [&](std::size_t k) { r[k] = frobenius(da[k] - db[k] - bracket(a[k], b[k])); });
  return r;
}

}  // namespace s4g
