#pragma once

#include <cstddef>

namespace s4g {

/// Coordinate rectangle of a chart. On a periodic axis the upper end is the
/// period and is not itself a node.
struct Domain {
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  bool periodic_x = false, periodic_y = false;

  double extent_x() const { return x1 - x0; }
  double extent_y() const { return y1 - y0; }
};

/// Uniform node lattice over a Domain, row-major with y outer.
class Grid {
 public:
  /// Throws InvalidArgument unless nx, ny >= 8 and the ranges are nonempty.
  Grid(const Domain& domain, int nx, int ny);

  const Domain& domain() const { return dom_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }
  double x(int i) const { return dom_.x0 + i * hx_; }
  double y(int j) const { return dom_.y0 + j * hy_; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx_ + i; }
  int col_of(std::size_t k) const { return static_cast<int>(k % nx_); }
  int row_of(std::size_t k) const { return static_cast<int>(k / nx_); }

  /// Nodes at distance >= margin from every open boundary. Periodic axes
  /// have no boundary.
  bool interior(int i, int j, int margin = kStatMargin) const;
  bool interior(std::size_t k, int margin = kStatMargin) const {
    return interior(col_of(k), row_of(k), margin);
  }

  /// Nodes this close to an open edge carry lower-order one-sided stencils
  /// and are left out of residual statistics.
  static constexpr int kStatMargin = 4;

 private:
  Domain dom_;
  int nx_, ny_;
  double hx_, hy_;
};

}  // namespace s4g
