#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "s4gauss/analysis.hpp"
#include "s4gauss/frames.hpp"

using namespace s4g;

namespace {

double max_interior(const Grid& g, const std::vector<double>& v) { return interior_stats(g, v).max; }

double afd_error(const ImmersionPtr& imm, int n) {
  const auto a = analyze(imm, imm->default_grid(n, n));
  const auto m = maurer_cartan_fd(a.grid, a.frames);
  std::vector<double> e(a.grid.size());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = frobenius(m.A[k] - a.mc[k].A);
  return max_interior(a.grid, e);
}

}  // namespace

TEST_SUITE("frames") {
  TEST_CASE("sphere frame and connection at the origin") {
    const auto imm = Immersion::equatorial_sphere(0.5);
    const auto a = analyze(imm, imm->default_grid(33, 33));
    const std::size_t k0 = a.grid.index(16, 16);
    REQUIRE(a.grid.x(16) == 0.0);
    const RMat5& f = a.frames[k0];
    CHECK(norm(f.col(0) - RVec5::unit(2)) <= 1e-15);
    CHECK(norm(f.col(1) - RVec5::unit(0)) <= 1e-15);
    CHECK(norm(f.col(2) - RVec5::unit(1)) <= 1e-15);
    const CMat5& A = a.mc[k0].A;
    for (std::size_t r = 0; r < 5; ++r)
      for (std::size_t c = 0; c < 5; ++c) {
        const bool allowed = (r == 0 && (c == 1 || c == 2)) || (c == 0 && (r == 1 || r == 2));
        if (!allowed) CHECK(std::abs(A(r, c)) <= 1e-12);
      }
    // c = e^u / sqrt 2 with e^{2u} = 2 at the origin.
    CHECK(A(0, 1).real() == doctest::Approx(-1.0));
    CHECK(A(0, 2).imag() == doctest::Approx(1.0));
  }

  TEST_CASE("closed-form A is skew with the expected scalar entries") {
    const auto imm = Immersion::moebius(Immersion::clifford_torus(), 0.3 * RVec5::unit(0));
    const Grid g = imm->default_grid(32, 32);
    const auto a = analyze(imm, g);
    for (int k : {5, 200, 801}) {
      const CMat5& A = a.mc[k].A;
      CHECK(frobenius(A + transpose(A)) == 0.0);
      const double u = oracle::invariants(oracle::moebius(oracle::clifford(), 0.3 * RVec5::unit(0)),
                                          g.x(g.col_of(k)), g.y(g.row_of(k)))
                           .u;
      CHECK(A(1, 0).real() == doctest::Approx(std::exp(u) / std::sqrt(2.0)).epsilon(1e-9));
      CHECK(std::abs(A(1, 2) - kI * a.fd[k].u_z) <= 1e-15);
    }
    CHECK(aibi_mismatch(a.mc, a.fd) <= 1e-15);
  }

  TEST_CASE("frame differences reproduce A at fourth order") {
    const auto imm = Immersion::moebius(Immersion::clifford_torus(), 0.3 * RVec5::unit(0));
    const double e32 = afd_error(imm, 32), e64 = afd_error(imm, 64);
    CHECK(e64 <= 1e-4);
    CHECK(e32 / e64 == doctest::Approx(16.0).epsilon(0.2));
  }

  TEST_CASE("B is the conjugate of A for real frames") {
    const auto imm = Immersion::pmc_torus(0.6, 0.8);
    const auto a = analyze(imm, imm->default_grid(32, 32));
    const auto m = maurer_cartan_fd(a.grid, a.frames);
    for (std::size_t k = 0; k < a.grid.size(); ++k) CHECK(frobenius(m.B[k] - conj(m.A[k])) <= 1e-13);
  }

  TEST_CASE("Maurer-Cartan flatness") {
    const auto imm = Immersion::moebius(Immersion::clifford_torus(), 0.2 * RVec5::unit(2));
    const auto a = analyze(imm, imm->default_grid(64, 64));
    std::vector<CMat5> A(a.mc.size()), B(a.mc.size());
    for (std::size_t k = 0; k < A.size(); ++k) {
      A[k] = a.mc[k].A;
      B[k] = a.mc[k].B;
    }
    CHECK(max_interior(a.grid, mc_flatness_residual(a.grid, A, B)) <= 1e-4);
    // A perturbed connection is not flat.
    for (std::size_t k = 0; k < A.size(); ++k) A[k](3, 4) += 0.1 * std::sin(a.grid.x(a.grid.col_of(k)));
    for (std::size_t k = 0; k < A.size(); ++k) A[k](4, 3) = -A[k](3, 4);
    CHECK(max_interior(a.grid, mc_flatness_residual(a.grid, A, B)) >= 1e-2);
  }

  TEST_CASE("kp split of the forms") {
    const auto imm = Immersion::clifford_torus();
    const auto a = analyze(imm, imm->default_grid(16, 16));
    for (const MCForms& m : a.mc) {
      CHECK(frobenius(m.A_k + m.A_p - m.A) == 0.0);
      CHECK(frobenius(m.B_k + m.B_p - m.B) == 0.0);
    }
  }
}
