#include "s4gauss/gauss_tension.hpp"

#include <cmath>
#include <numbers>

#include "s4gauss/parallel.hpp"
#include "s4gauss/stencil.hpp"

namespace s4g {

FlagPoint gauss_map(const RMat5& frame) {
  return {frame.col(0), complexify(frame.col(1), -1.0 * frame.col(2)),
          complexify(frame.col(3), -1.0 * frame.col(4))};
}

FlagDiagnostics check_flag(const FlagPoint& p, const RVec5& f) {
  FlagDiagnostics d;
  const CVec5 x0 = complexify(p.x0);
  d.isotropy = std::max(std::abs(bilinear_c(p.x1, p.x1)), std::abs(bilinear_c(p.x2, p.x2)));
  for (const auto& [v, w] : {std::pair{x0, p.x1}, std::pair{x0, p.x2}, std::pair{p.x1, p.x2}})
    d.orthogonality = std::max({d.orthogonality, std::abs(bilinear_c(v, w)), std::abs(hermitian(v, w))});
  d.projection = norm(p.x0 - f);
  return d;
}

std::vector<CMat5> tension_matrix_direct(const Grid& grid, std::span<const MCForms> mc) {
  std::vector<CMat5> ap(mc.size());
  for (std::size_t k = 0; k < mc.size(); ++k) ap[k] = mc[k].A_p;
  const auto dap = diff_zbar<CMat5>(grid, ap);
  std::vector<CMat5> m(mc.size());
  parallel_for(mc.size(), [&](std::size_t k) { m[k] = dap[k] + bracket(mc[k].B_k, mc[k].A_p); });
  return m;
}

double tension_pattern_defect(const CMat5& m) {
  double s = 0.0;
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t c = 0; c < 5; ++c) {
      const bool allowed = (r == 1 || r == 2) ? (c == 3 || c == 4) : ((r == 3 || r == 4) && (c == 1 || c == 2));
      if (!allowed) s += std::norm(m(r, c));
    }
  return std::sqrt(s);
}

std::vector<TensionCoeffs> tension_coeffs(const Grid& grid, std::span<const FundamentalData> fd) {
  std::vector<double> h1(fd.size()), h2(fd.size());
  for (std::size_t k = 0; k < fd.size(); ++k) {
    h1[k] = fd[k].h1;
    h2[k] = fd[k].h2;
  }
  const auto h1z = diff_z<double>(grid, h1), h1b = diff_zbar<double>(grid, h1);
  const auto h2z = diff_z<double>(grid, h2), h2b = diff_zbar<double>(grid, h2);
  std::vector<TensionCoeffs> out(fd.size());
  for (std::size_t k = 0; k < fd.size(); ++k) {
    const double c = std::exp(fd[k].u) * std::numbers::sqrt2 / 2.0;
    const cplx s = fd[k].sigma, sb = std::conj(s);
    out[k].A1 = c * (h1z[k] + h1b[k] + fd[k].h2 * (s + sb));
    out[k].B1 = c * (h1z[k] - h1b[k] + fd[k].h2 * (s - sb));
    out[k].A2 = c * (h2z[k] + h2b[k] - fd[k].h1 * (s + sb));
    out[k].B2 = c * (h2z[k] - h2b[k] - fd[k].h1 * (s - sb));
  }
  return out;
}

double TensionData::gradH_norm() const { return std::sqrt(std::norm(gradH1) + std::norm(gradH2)); }

std::vector<TensionData> tension_vector(const Grid& grid, std::span<const MCForms> mc,
                                        std::span<const FundamentalData> fd, std::span<const RMat5> frames) {
  const auto m = tension_matrix_direct(grid, mc);
  const auto co = tension_coeffs(grid, fd);
  std::vector<TensionData> out(fd.size());
  parallel_for(fd.size(), [&](std::size_t k) {
    TensionData& t = out[k];
    t.M = m[k];
    t.coeffs = co[k];
    const double s = std::numbers::sqrt2 * std::exp(fd[k].u);
    t.gradH1 = (co[k].A1 + co[k].B1) / s;
    t.gradH2 = (co[k].A2 + co[k].B2) / s;
    t.psi = (-co[k].A1 + kI * co[k].A2) * complexify(frames[k].col(1)) +
            (-kI * co[k].B1 + co[k].B2) * complexify(frames[k].col(2));
  });
  return out;
}

double tension_route_mismatch(const TensionData& t) {
  const TensionCoeffs& c = t.coeffs;
  return std::max({std::abs(t.M(1, 3) + c.A1), std::abs(t.M(1, 4) + c.A2), std::abs(t.M(2, 3) + kI * c.B1),
                   std::abs(t.M(2, 4) + kI * c.B2)});
}

double special_property_residual(const MCForms& mc) {
  return frobenius(split_kp(bracket(mc.A_p, mc.B_p)).p_part);
}

RealnessDiagnostics realness(const Grid& grid, std::span<const TensionData> t) {
  RealnessDiagnostics r;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (!grid.interior(k)) continue;
    const TensionCoeffs& c = t[k].coeffs;
    r.im_A = std::max({r.im_A, std::abs(c.A1.imag()), std::abs(c.A2.imag())});
    r.re_B = std::max({r.re_B, std::abs(c.B1.real()), std::abs(c.B2.real())});
  }
  return r;
}

std::string HarmonicityReport::verdict() const {
  if (!consistent()) return "INCONSISTENT";
  return harmonic() ? "HARMONIC" : "NOT HARMONIC";
}

HarmonicityReport harmonicity_verdict(const Grid& grid, std::span<const TensionData> t, double tol) {
  HarmonicityReport r;
  r.tol = tol;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (!grid.interior(k)) continue;
    const double m = frobenius(t[k].M), g = t[k].gradH_norm();
    r.max_M = std::max(r.max_M, std::isfinite(m) ? m : HUGE_VAL);
    r.max_gradH = std::max(r.max_gradH, std::isfinite(g) ? g : HUGE_VAL);
  }
  r.harmonic_by_M = r.max_M <= tol;
  r.harmonic_by_gradH = r.max_gradH <= tol;
  return r;
}

}  // namespace s4g
