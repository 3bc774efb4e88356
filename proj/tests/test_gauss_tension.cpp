#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "s4gauss/analysis.hpp"
#include "s4gauss/gauss_tension.hpp"

using namespace s4g;

namespace {

using V5 = Eigen::Matrix<double, 5, 1>;

V5 ev(const RVec5& v) {
  V5 e;
  for (int i = 0; i < 5; ++i) e(i) = v[i];
  return e;
}

// Mean curvature vector and normal projector from oracle derivatives.
struct HPoint {
  V5 H;
  Eigen::Matrix<double, 5, 5> P;
};

HPoint h_point(const oracle::Surface& s, double x, double y) {
  const oracle::Derivs d = oracle::derivs(s, x, y);
  Eigen::Matrix<double, 3, 5> span;
  span.row(0) = ev(d.f).transpose();
  span.row(1) = ev(d.fx).transpose();
  span.row(2) = ev(d.fy).transpose();
  Eigen::JacobiSVD<Eigen::Matrix<double, 3, 5>> svd(span, Eigen::ComputeFullV);
  const auto N = svd.matrixV().rightCols<2>();
  HPoint p;
  p.P = N * N.transpose();
  const double e2u = (ev(d.fx).squaredNorm() + ev(d.fy).squaredNorm()) / 4.0;
  p.H = p.P * ((ev(d.fxx) + ev(d.fyy)) / (4.0 * e2u));
  return p;
}

// |(d_z H)^perp| from central differences of the oracle H field.
double grad_h_oracle(const oracle::Surface& s, double x, double y) {
  const double h = 1e-3;
  const V5 hx = (h_point(s, x + h, y).H - h_point(s, x - h, y).H) / (2 * h);
  const V5 hy = (h_point(s, x, y + h).H - h_point(s, x, y - h).H) / (2 * h);
  const auto P = h_point(s, x, y).P;
  const V5 re = P * hx / 2.0, im = -(P * hy) / 2.0;
  return std::sqrt(re.squaredNorm() + im.squaredNorm());
}

CMat5 random_skew(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  CMat5 m;
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t c = r + 1; c < 5; ++c) {
      m(r, c) = cplx(n(rng), n(rng));
      m(c, r) = -m(r, c);
    }
  return m;
}

}  // namespace

TEST_SUITE("gauss_tension") {
  TEST_CASE("Gauss map lands in the flag manifold") {
    const auto imm = Immersion::moebius(Immersion::pmc_torus(0.6, 0.8), 0.2 * RVec5::unit(1));
    const auto a = analyze(imm, imm->default_grid(16, 16));
    for (std::size_t k = 0; k < a.grid.size(); ++k) {
      const FlagDiagnostics d = check_flag(gauss_map(a.frames[k]), a.jets[k].f);
      CHECK(d.isotropy <= 1e-14);
      CHECK(d.orthogonality <= 1e-14);
      CHECK(d.projection <= 1e-15);
    }
  }

  TEST_CASE("sphere normal line is constant") {
    const auto imm = Immersion::equatorial_sphere(0.5);
    const auto a = analyze(imm, imm->default_grid(16, 16));
    const CVec5 x2 = gauss_map(a.frames[0]).x2;
    for (const RMat5& f : a.frames) CHECK(norm(gauss_map(f).x2 - x2) <= 1e-13);
  }

  TEST_CASE("tension vanishes on the catalog tori") {
    for (const auto& imm : {Immersion::clifford_torus(), Immersion::pmc_torus(std::sqrt(3.0) / 2, 0.5)}) {
      const auto a = analyze(imm, imm->default_grid(32, 32));
      const auto t = tension_vector(a.grid, a.mc, a.fd, a.frames);
      const auto r = harmonicity_verdict(a.grid, t, 1e-6);
      CHECK(r.max_M <= 1e-12);
      CHECK(r.max_gradH <= 1e-12);
      CHECK(r.verdict() == "HARMONIC");
    }
  }

  TEST_CASE("tension of a Moebius torus: both routes, pattern and oracle") {
    const RVec5 c = 0.3 * RVec5::unit(0);
    const auto imm = Immersion::moebius(Immersion::clifford_torus(), c);
    const auto a = analyze(imm, imm->default_grid(64, 64));
    const auto t = tension_vector(a.grid, a.mc, a.fd, a.frames);
    const auto s = oracle::moebius(oracle::clifford(), c);
    for (int k : {100, 1234, 3000}) {
      CHECK(tension_route_mismatch(t[k]) <= 1e-4);
      CHECK(tension_pattern_defect(t[k].M) <= 1e-4);
      const double x = a.grid.x(a.grid.col_of(k)), y = a.grid.y(a.grid.row_of(k));
      CHECK(t[k].gradH_norm() == doctest::Approx(grad_h_oracle(s, x, y)).epsilon(1e-4));
      // Psi lies in the tangent plane.
      CHECK(std::abs(hermitian(t[k].psi, complexify(a.frames[k].col(3)))) <= 1e-14);
    }
    const RealnessDiagnostics re = realness(a.grid, t);
    CHECK(re.im_A <= 1e-12);
    CHECK(re.re_B <= 1e-12);
    const auto v = harmonicity_verdict(a.grid, t, 1e-6);
    CHECK(v.verdict() == "NOT HARMONIC");
    CHECK(v.max_M > 1e-2);
  }

  TEST_CASE("special property holds on immersions and fails on random pairs") {
    const auto imm = Immersion::moebius(Immersion::pmc_torus(0.6, 0.8), 0.4 * RVec5::unit(4));
    const auto a = analyze(imm, imm->default_grid(16, 16));
    for (const MCForms& m : a.mc) CHECK(special_property_residual(m) <= 1e-12);
    std::mt19937_64 rng(42);
    int violations = 0;
    for (int i = 0; i < 50; ++i) {
      const CMat5 A = random_skew(rng);
      if (special_property_residual(make_mc_forms(A, random_skew(rng))) > 1e-2) ++violations;
    }
    CHECK(violations == 50);
  }
}
