#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "s4gauss/analysis.hpp"
#include "s4gauss/error.hpp"
#include "s4gauss/invariants.hpp"

using namespace s4g;

namespace {

const double kA = std::sqrt(3.0) / 2.0, kB = 0.5;

struct Input {
  const char* name;
  ImmersionPtr imm;
  oracle::Surface s;
};

std::vector<Input> inputs() {
  const RVec5 c = 0.3 * RVec5::unit(0);
  return {
      {"sphere", Immersion::equatorial_sphere(0.5), oracle::sphere()},
      {"clifford", Immersion::clifford_torus(), oracle::clifford()},
      {"pmc", Immersion::pmc_torus(kA, kB), oracle::pmc(kA, kB)},
      {"moebius", Immersion::moebius(Immersion::clifford_torus(), c), oracle::moebius(oracle::clifford(), c)},
  };
}

}  // namespace

TEST_SUITE("invariants") {
  TEST_CASE("normal frame is orthonormal, normal and positively oriented") {
    for (const auto& in : inputs()) {
      CAPTURE(in.name);
      const auto a = analyze(in.imm, in.imm->default_grid(32, 32));
      double worst = 0.0;
      for (std::size_t k = 0; k < a.grid.size(); ++k) {
        const auto& n = a.normals.n[k];
        const Jet2& j = a.jets[k];
        for (const RVec5& v : {j.f, j.f_x, j.f_y}) worst = std::max({worst, std::abs(dot(v, n.n1)), std::abs(dot(v, n.n2))});
        worst = std::max({worst, std::abs(dot(n.n1, n.n2)), std::abs(norm(n.n1) - 1), std::abs(norm(n.n2) - 1)});
        CHECK(determinant(a.frames[k]) > 0.0);
      }
      CHECK(worst <= 1e-12);
    }
  }

  TEST_CASE("gauge-invariant data agree with the independent oracle") {
    for (const auto& in : inputs()) {
      CAPTURE(in.name);
      const Grid g = in.imm->default_grid(32, 32);
      const auto a = analyze(in.imm, g);
      for (int k : {0, 77, 300, 613}) {
        const double x = g.x(g.col_of(k)), y = g.y(g.row_of(k));
        const oracle::Invariants o = oracle::invariants(in.s, x, y);
        const FundamentalData& d = a.fd[k];
        CHECK(d.u == doctest::Approx(o.u).epsilon(1e-9));
        CHECK(std::abs(d.mean_curvature_sq() - o.H2) <= 1e-7);
        CHECK(std::abs(d.xi_sq() - o.xi_sq) <= 1e-7);
        CHECK(std::abs(d.xi1 * d.xi1 + d.xi2 * d.xi2 - o.xi_iso) <= 1e-7);
      }
    }
  }

  TEST_CASE("Gauss curvature: algebraic formula against the intrinsic oracle") {
    for (const auto& in : inputs()) {
      CAPTURE(in.name);
      const Grid g = in.imm->default_grid(32, 32);
      const auto a = analyze(in.imm, g);
      for (int k : {77, 300, 613}) {
        const double x = g.x(g.col_of(k)), y = g.y(g.row_of(k));
        CHECK(gauss_curvature(a.fd[k]) == doctest::Approx(oracle::gauss_curvature(in.s, x, y)).epsilon(1e-5).scale(1));
      }
    }
  }

  TEST_CASE("closed-form values on the catalog") {
    const auto sph = analyze(Immersion::equatorial_sphere(0.5), Immersion::equatorial_sphere(0.5)->default_grid(16, 16));
    for (const auto& d : sph.fd) {
      CHECK(std::abs(d.h1) + std::abs(d.h2) + std::abs(d.xi1) + std::abs(d.xi2) <= 1e-14);
      CHECK(std::abs(d.sigma) <= 1e-12);
      CHECK(gauss_curvature(d) == doctest::Approx(1.0));
    }
    const auto cl = analyze(Immersion::clifford_torus(), Immersion::clifford_torus()->default_grid(16, 16));
    for (const auto& d : cl.fd) {
      CHECK(d.mean_curvature_sq() <= 1e-28);
      CHECK(d.xi_sq() == doctest::Approx(1.0 / 16));
      CHECK(std::abs(gauss_curvature(d)) <= 1e-14);
    }
    const auto pm = analyze(Immersion::pmc_torus(kA, kB), Immersion::pmc_torus(kA, kB)->default_grid(16, 16));
    for (const auto& d : pm.fd) {
      CHECK(d.mean_curvature_sq() == doctest::Approx(1.0 / 3));
      CHECK(std::abs(gauss_curvature(d)) <= 1e-14);
    }
    const auto kp = normal_curvature(pm.grid, pm.fd);
    for (double v : kp) CHECK(std::abs(v) <= 1e-12);
  }

  TEST_CASE("compatibility residuals vanish to discretization order") {
    const auto imm = Immersion::moebius(Immersion::clifford_torus(), 0.3 * RVec5::unit(0));
    double gmax[2];
    for (int t = 0; t < 2; ++t) {
      const auto a = analyze(imm, imm->default_grid(32 << t, 32 << t));
      const auto res = compatibility_residuals(a.grid, a.fd);
      std::vector<double> gv(res.size());
      for (std::size_t k = 0; k < res.size(); ++k) gv[k] = std::max({res[k].res_G, res[k].codazzi(), res[k].res_R});
      gmax[t] = interior_stats(a.grid, gv).max;
    }
    CHECK(gmax[1] <= 1e-5);
    CHECK(gmax[0] / gmax[1] >= 12.0);  // fourth-order differences
  }

  TEST_CASE("normal derivative of H by the direct and Codazzi routes") {
    const auto imm = Immersion::moebius(Immersion::clifford_torus(), 0.2 * RVec5::unit(2));
    const auto a = analyze(imm, imm->default_grid(64, 64));
    const auto nd = normal_derivative_H(a.grid, a.fd);
    std::vector<double> diff(nd.size()), mag(nd.size());
    for (std::size_t k = 0; k < nd.size(); ++k) {
      diff[k] = nd[k].route_difference();
      mag[k] = nd[k].norm();
    }
    CHECK(interior_stats(a.grid, diff).max <= 1e-4);
    CHECK(interior_stats(a.grid, mag).max >= 1e-2);
  }

  TEST_CASE("constant normal rotation preserves gauge invariants") {
    const auto imm = Immersion::moebius(Immersion::clifford_torus(), 0.3 * RVec5::unit(0));
    const auto a = analyze(imm, imm->default_grid(32, 32));
    const auto b = with_normals(a, rotate_normals(a.normals, 0.9));
    const auto kp_a = normal_curvature(a.grid, a.fd), kp_b = normal_curvature(b.grid, b.fd);
    for (std::size_t k = 0; k < a.fd.size(); ++k) {
      CHECK(std::abs(gauss_curvature(a.fd[k]) - gauss_curvature(b.fd[k])) <= 1e-12);
      CHECK(std::abs(kp_a[k] - kp_b[k]) <= 1e-12);
      CHECK(std::abs(std::abs(a.fd[k].sigma) - std::abs(b.fd[k].sigma)) <= 1e-12);
    }
  }

  TEST_CASE("interior statistics ignore the open-edge margin and surface NaN") {
    const Grid g(Domain{0, 1, 0, 1, false, false}, 16, 16);
    std::vector<double> v(g.size(), 1.0);
    v[0] = 100.0;
    CHECK(interior_stats(g, v).max == 1.0);
    v[g.index(8, 8)] = std::nan("");
    CHECK(std::isinf(interior_stats(g, v).max));
  }
}
