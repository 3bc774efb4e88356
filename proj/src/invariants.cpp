#include "s4gauss/invariants.hpp"

#include <cmath>

#include "s4gauss/error.hpp"
#include "s4gauss/parallel.hpp"
#include "s4gauss/stencil.hpp"

namespace s4g {

std::array<RVec5, 3> tangent_basis(const Jet2& j) {
  const RVec5 e0 = j.f / norm(j.f);
  RVec5 t1 = j.f_x - dot(j.f_x, e0) * e0;
  const double l1 = norm(t1);
  if (l1 < 1e-10) throw Error(ErrorKind::DegenerateImmersion, "f_x vanishes");
  t1 = t1 / l1;
  RVec5 t2 = j.f_y - dot(j.f_y, e0) * e0 - dot(j.f_y, t1) * t1;
  const double l2 = norm(t2);
  if (l2 < 1e-10) throw Error(ErrorKind::DegenerateImmersion, "f_y vanishes or is parallel to f_x");
  return {e0, t1, t2 / l2};
}

namespace {

RVec5 project_normal(const RVec5& v, const std::array<RVec5, 3>& tb) {
  RVec5 r = v;
  for (const RVec5& b : tb) r -= dot(r, b) * b;
  return r;
}

// Closest orthonormal pair in the normal plane of tb to the pair p.
NormalPair transport(const NormalPair& p, const std::array<RVec5, 3>& tb) {
  const RVec5 v1 = project_normal(p.n1, tb), v2 = project_normal(p.n2, tb);
  const double s11 = dot(v1, v1), s12 = dot(v1, v2), s22 = dot(v2, v2);
  const double det = s11 * s22 - s12 * s12;
  const double tr = s11 + s22;
  const double lmin = 0.5 * (tr - std::sqrt(std::max(0.0, (s11 - s22) * (s11 - s22) + 4.0 * s12 * s12)));
  if (!(lmin > 1e-2)) throw Error(ErrorKind::FrameObstruction, "transported normal frame is nearly tangent");
  // S^{1/2} = (S + sqrt(det) I)/sqrt(tr + 2 sqrt(det)); its inverse is
  // adj(S^{1/2})/sqrt(det).
  const double sd = std::sqrt(det), t = std::sqrt(tr + 2.0 * sd);
  const double r11 = (s11 + sd) / t, r12 = s12 / t, r22 = (s22 + sd) / t;
  const double i11 = r22 / sd, i12 = -r12 / sd, i22 = r11 / sd;
  NormalPair q;
  q.n1 = i11 * v1 + i12 * v2;
  q.n2 = i12 * v1 + i22 * v2;
  return q;
}

double rotation_angle(const NormalPair& moved, const NormalPair& ref) {
  return std::atan2(dot(moved.n1, ref.n2), dot(moved.n1, ref.n1));
}

}  // namespace

NormalFrameField build_normal_frame(const Grid& grid, std::span<const Jet2> jets) {
  std::vector<std::array<RVec5, 3>> tb(grid.size());
  parallel_for(grid.size(), [&](std::size_t k) { tb[k] = tangent_basis(jets[k]); });

  NormalFrameField nf;
  nf.n.resize(grid.size());

  // Seed: first ambient axes whose normal residual is comfortably nonzero.
  const std::size_t s0 = grid.index(0, 0);
  std::vector<RVec5> chosen;
  for (int pass = 0; pass < 2 && chosen.size() < 2; ++pass) {
    for (std::size_t a = 0; a < 5 && chosen.size() < 2; ++a) {
      RVec5 r = project_normal(RVec5::unit(a), tb[s0]);
      for (const RVec5& c : chosen) r -= dot(r, c) * c;
      const double l = norm(r);
      if (l >= (pass == 0 ? 0.4 : 1e-3)) chosen.push_back(r / l);
    }
  }
  if (chosen.size() < 2) throw Error(ErrorKind::FrameObstruction, "cannot seed the normal frame");
  NormalPair seed{chosen[0], chosen[1]};
  RMat5 m;
  m.set_col(0, tb[s0][0]);
  m.set_col(1, tb[s0][1]);
  m.set_col(2, tb[s0][2]);
  m.set_col(3, seed.n1);
  m.set_col(4, seed.n2);
  if (determinant(m) < 0.0) seed.n2 = -seed.n2;
  nf.n[s0] = seed;

  for (int i = 1; i < grid.nx(); ++i) nf.n[grid.index(i, 0)] = transport(nf.n[grid.index(i - 1, 0)], tb[grid.index(i, 0)]);
  parallel_for(static_cast<std::size_t>(grid.nx()), [&](std::size_t ii) {
    const int i = static_cast<int>(ii);
    for (int j = 1; j < grid.ny(); ++j)
      nf.n[grid.index(i, j)] = transport(nf.n[grid.index(i, j - 1)], tb[grid.index(i, j)]);
  });

  if (grid.domain().periodic_x)
    nf.closing_angle_x = rotation_angle(transport(nf.n[grid.index(grid.nx() - 1, 0)], tb[s0]), seed);
  if (grid.domain().periodic_y)
    nf.closing_angle_y = rotation_angle(transport(nf.n[grid.index(0, grid.ny() - 1)], tb[s0]), seed);
  return nf;
}

NormalFrameField rotate_normals(const NormalFrameField& nf, double theta) {
  NormalFrameField out = nf;
  const double c = std::cos(theta), s = std::sin(theta);
  for (NormalPair& p : out.n) {
    const RVec5 a = p.n1, b = p.n2;
    p.n1 = c * a + s * b;
    p.n2 = -s * a + c * b;
  }
  return out;
}

double FundamentalData::e2u() const { return std::exp(2.0 * u); }
double FundamentalData::xi_sq() const { return std::norm(xi1) + std::norm(xi2); }

FundamentalData pointwise_fundamental_data(const Jet2& j, const NormalPair& n, double conformal_tol) {
  FundamentalData d;
  d.u = conformal_factor(j, conformal_tol);
  const double em2u = std::exp(-2.0 * d.u);
  const RVec5 lap = j.f_zzbar();
  d.h1 = em2u * dot(lap, n.n1);
  d.h2 = em2u * dot(lap, n.n2);
  const CVec5 fzz = j.f_zz();
  d.xi1 = bilinear_c(fzz, complexify(n.n1));
  d.xi2 = bilinear_c(fzz, complexify(n.n2));
  return d;
}

std::vector<FundamentalData> fundamental_data(const Grid& grid, std::span<const Jet2> jets,
                                              const NormalFrameField& normals, double conformal_tol) {
  std::vector<FundamentalData> fd(grid.size());
  parallel_for(grid.size(),
               [&](std::size_t k) { fd[k] = pointwise_fundamental_data(jets[k], normals.n[k], conformal_tol); });
  std::vector<double> u(grid.size());
  std::vector<RVec5> n1(grid.size()), n2(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    u[k] = fd[k].u;
    n1[k] = normals.n[k].n1;
    n2[k] = normals.n[k].n2;
  }
  const auto uz = diff_z<double>(grid, u);
  const auto dn1 = diff_z<RVec5>(grid, n1);
  const auto dn2 = diff_z<RVec5>(grid, n2);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    fd[k].u_z = uz[k];
    // Antisymmetrized <d_z N2, N1>: equal in the limit, and exactly
    // invariant under constant normal rotations at finite h.
    fd[k].sigma = 0.5 * (bilinear_c(dn2[k], complexify(n1[k])) - bilinear_c(dn1[k], complexify(n2[k])));
  }
  return fd;
}

double gauss_curvature(const FundamentalData& fd) {
  return 1.0 + fd.mean_curvature_sq() - std::exp(-4.0 * fd.u) * fd.xi_sq();
}

std::vector<double> gauss_curvature(std::span<const FundamentalData> fd) {
  std::vector<double> k(fd.size());
  for (std::size_t i = 0; i < fd.size(); ++i) k[i] = gauss_curvature(fd[i]);
  return k;
}

namespace {

template <class Get>
auto field_of(std::span<const FundamentalData> fd, Get get) {
  std::vector<decltype(get(fd[0]))> out(fd.size());
  for (std::size_t i = 0; i < fd.size(); ++i) out[i] = get(fd[i]);
  return out;
}

}  // namespace

std::vector<double> gauss_curvature_laplace(const Grid& grid, std::span<const FundamentalData> fd) {
  const auto u = field_of(fd, [](const FundamentalData& d) { return d.u; });
  auto k = diff_zzbar(grid, u);
  for (std::size_t i = 0; i < k.size(); ++i) k[i] *= -2.0 * std::exp(-2.0 * fd[i].u);
  return k;
}

std::vector<double> normal_curvature(const Grid& grid, std::span<const FundamentalData> fd) {
  const auto sigma = field_of(fd, [](const FundamentalData& d) { return d.sigma; });
  const auto ds = diff_zbar<cplx>(grid, sigma);
  std::vector<double> kp(fd.size());
  for (std::size_t i = 0; i < fd.size(); ++i) kp[i] = -std::exp(-2.0 * fd[i].u) * ds[i].imag();
  return kp;
}

double CompatibilityResiduals::codazzi() const { return std::hypot(res_C1, res_C2); }

std::vector<CompatibilityResiduals> compatibility_residuals(const Grid& grid, std::span<const FundamentalData> fd) {
  const auto u = field_of(fd, [](const FundamentalData& d) { return d.u; });
  const auto h1 = field_of(fd, [](const FundamentalData& d) { return d.h1; });
  const auto h2 = field_of(fd, [](const FundamentalData& d) { return d.h2; });
  const auto xi1 = field_of(fd, [](const FundamentalData& d) { return d.xi1; });
  const auto xi2 = field_of(fd, [](const FundamentalData& d) { return d.xi2; });
  const auto sigma = field_of(fd, [](const FundamentalData& d) { return d.sigma; });
  const auto uzz = diff_zzbar(grid, u);
  const auto h1z = diff_z<double>(grid, h1);
  const auto h2z = diff_z<double>(grid, h2);
  const auto xi1b = diff_zbar<cplx>(grid, xi1);
  const auto xi2b = diff_zbar<cplx>(grid, xi2);
  const auto sigb = diff_zbar<cplx>(grid, sigma);

  std::vector<CompatibilityResiduals> r(fd.size());
  for (std::size_t k = 0; k < fd.size(); ++k) {
    const FundamentalData& d = fd[k];
    const double e2u = d.e2u(), em2u = 1.0 / e2u;
    const cplx s = d.sigma, sb = std::conj(d.sigma);
    r[k].res_G = std::abs(2.0 * uzz[k] - em2u * d.xi_sq() + e2u * (1.0 + d.mean_curvature_sq()));
    r[k].res_C1 = std::abs(e2u * (h1z[k] + d.h2 * s) - (xi1b[k] + d.xi2 * sb));
    r[k].res_C2 = std::abs(e2u * (h2z[k] - d.h1 * s) - (xi2b[k] - d.xi1 * sb));
    r[k].res_R = std::abs(sigb[k].imag() + em2u * (d.xi1 * std::conj(d.xi2)).imag());
  }
  return r;
}

double NormalDerivativeH::norm() const { return std::sqrt(std::norm(direct1) + std::norm(direct2)); }
double NormalDerivativeH::route_difference() const {
  return std::sqrt(std::norm(direct1 - codazzi1) + std::norm(direct2 - codazzi2));
}

std::vector<NormalDerivativeH> normal_derivative_H(const Grid& grid, std::span<const FundamentalData> fd) {
  const auto h1 = field_of(fd, [](const FundamentalData& d) { return d.h1; });
  const auto h2 = field_of(fd, [](const FundamentalData& d) { return d.h2; });
  const auto xi1 = field_of(fd, [](const FundamentalData& d) { return d.xi1; });
  const auto xi2 = field_of(fd, [](const FundamentalData& d) { return d.xi2; });
  const auto h1z = diff_z<double>(grid, h1);
  const auto h2z = diff_z<double>(grid, h2);
  const auto xi1b = diff_zbar<cplx>(grid, xi1);
  const auto xi2b = diff_zbar<cplx>(grid, xi2);
  std::vector<NormalDerivativeH> out(fd.size());
  for (std::size_t k = 0; k < fd.size(); ++k) {
    const FundamentalData& d = fd[k];
    const double em2u = std::exp(-2.0 * d.u);
    const cplx s = d.sigma, sb = std::conj(d.sigma);
    out[k].direct1 = h1z[k] + d.h2 * s;
    out[k].direct2 = h2z[k] - d.h1 * s;
    out[k].codazzi1 = em2u * (xi1b[k] + d.xi2 * sb);
    out[k].codazzi2 = em2u * (xi2b[k] - d.xi1 * sb);
  }
  return out;
}

FieldStats interior_stats(const Grid& grid, std::span<const double> values) {
  FieldStats s;
  double sq = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!grid.interior(k)) continue;
    // Non-finite values must not vanish from a max.
    const double a = std::isfinite(values[k]) ? std::abs(values[k]) : HUGE_VAL;
    s.max = std::max(s.max, a);
    sq += values[k] * values[k];
    ++s.count;
  }
  s.rms = s.count ? std::sqrt(sq / s.count) : 0.0;
  return s;
}

}  // namespace s4g
