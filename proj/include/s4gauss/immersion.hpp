#pragma once

// Immersion sources and their 2-jets.

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "s4gauss/grid.hpp"
#include "s4gauss/linalg5.hpp"

namespace s4g {

/// Position and partial derivatives up to order two at one point.
struct Jet2 {
  RVec5 f, f_x, f_y, f_xx, f_xy, f_yy;

  /// (f_x - i f_y)/2.
  CVec5 f_z() const;
  /// (f_xx + f_yy)/4.
  RVec5 f_zzbar() const;
  /// (f_xx - f_yy - 2i f_xy)/4.
  CVec5 f_zz() const;
};

struct DerivativeMode {
  enum class Kind { Analytic, FiniteDifference };
  Kind kind = Kind::Analytic;
  /// FD steps; a value <= 0 means 1e-4 times the axis extent.
  double hx = 0.0, hy = 0.0;

  static DerivativeMode analytic() { return {}; }
  static DerivativeMode finite_difference(double h) { return {Kind::FiniteDifference, h, h}; }
  static DerivativeMode finite_difference(double hx, double hy) {
    return {Kind::FiniteDifference, hx, hy};
  }
};

/// Samples of f on a lattice, as stored in an S4GRID file.
struct GridSamples {
  int nx = 0, ny = 0;
  Domain domain;
  std::vector<RVec5> f;  // row-major, y outer

  Grid grid() const { return Grid(domain, nx, ny); }
};

GridSamples read_grid_file(const std::string& path);
void write_grid_file(const GridSamples& samples, const std::string& path);

class Immersion;
using ImmersionPtr = std::shared_ptr<const Immersion>;

/// Immutable immersion source: a catalog surface, a Moebius image of
/// another source, or sampled grid data.
class Immersion {
 public:
  struct EquatorialSphere {
    double radius;
  };
  struct CliffordTorus {};
  struct PmcTorus {
    double a, b;
  };
  struct Sampled {
    GridSamples samples;
  };
  struct Moebius {
    ImmersionPtr inner;
    RVec5 center;
  };
  using Source = std::variant<EquatorialSphere, CliffordTorus, PmcTorus, Sampled, Moebius>;

  /// Stereographic chart (2x, 2y, 1 - r^2, 0, 0)/(1 + r^2) on [-R, R]^2.
  static ImmersionPtr equatorial_sphere(double chart_radius = 1.0);
  /// (cos x, sin x, cos y, sin y, 0)/sqrt 2 on [0, 2pi)^2.
  static ImmersionPtr clifford_torus();
  /// (a cos(x/a), a sin(x/a), b cos(y/b), b sin(y/b), 0) on
  /// [0, 2pi a) x [0, 2pi b). Requires a^2 + b^2 = 1 within 1e-6 and
  /// 0 < a, b < 1; (a, b) is rescaled onto the unit circle.
  static ImmersionPtr pmc_torus(double a, double b);
  static ImmersionPtr sampled(GridSamples samples);
  static ImmersionPtr grid_file(const std::string& path);
  /// Image of inner under the Moebius map with center a, |a| < 1.
  static ImmersionPtr moebius(ImmersionPtr inner, const RVec5& a);

  const Source& source() const { return src_; }
  const Domain& domain() const { return dom_; }
  std::string describe() const;
  /// Torus charts (both axes periodic) have genus 1, everything else 0.
  int genus() const { return dom_.periodic_x && dom_.periodic_y ? 1 : 0; }
  bool is_sampled() const;

  /// Position at a domain point. Sampled sources answer only at nodes.
  RVec5 position(double x, double y) const;

  /// Throws OutOfDomain, OffSphere.
  Jet2 jet(double x, double y, const DerivativeMode& mode) const;

  /// Jets at every node. Sampled sources require the sample lattice and
  /// use second-order grid differences.
  std::vector<Jet2> sample_jets(const Grid& grid, const DerivativeMode& mode) const;

  /// The grid this source is naturally sampled on (the sample lattice for
  /// sampled data).
  Grid default_grid(int nx, int ny) const;

 private:
  Immersion(Source src, Domain dom) : src_(std::move(src)), dom_(dom) {}
  void verify_periodicity() const;
  Jet2 analytic_jet(double x, double y) const;
  Jet2 fd_jet(double x, double y, double hx, double hy) const;

  Source src_;
  Domain dom_;
};

/// Samples an immersion at the nodes of grid (for grid-difference jets).
GridSamples sample_positions(const Immersion& imm, const Grid& grid);

/// ((1 - |a|^2) p + 2(1 + <p,a>) a) / (1 + 2<p,a> + |a|^2).
RVec5 moebius_transform(const RVec5& a, const RVec5& p);
/// Pushes a jet forward through the Moebius map with center a.
Jet2 moebius_pushforward(const RVec5& a, const Jet2& j);

/// (<f_x, f_y>, |f_x|^2 - |f_y|^2).
std::pair<double, double> conformality_residual(const Jet2& j);
/// Conformality residual relative to |f_x|^2 + |f_y|^2.
double relative_conformality_defect(const Jet2& j);

/// u with e^{2u} = hermitian(f_z, f_z) = (|f_x|^2 + |f_y|^2)/4, which is
/// |f_x|^2/2 for conformal jets. Throws DegenerateImmersion when
/// |f_x| < 1e-10 and NotConformal when the relative defect exceeds tol.
double conformal_factor(const Jet2& j, double tol = 1e-3);

/// xi_1^2 + xi_2^2 for the given unit normals.
cplx isotropy_indicator(const Jet2& j, const RVec5& n1, const RVec5& n2);

}  // namespace s4g
