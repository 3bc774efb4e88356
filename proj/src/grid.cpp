#include "s4gauss/grid.hpp"

#include "s4gauss/error.hpp"

namespace s4g {

Grid::Grid(const Domain& domain, int nx, int ny) : dom_(domain), nx_(nx), ny_(ny) {
  if (nx < 8 || ny < 8) throw Error(ErrorKind::InvalidArgument, "grid needs nx, ny >= 8");
  if (!(domain.x1 > domain.x0) || !(domain.y1 > domain.y0))
    throw Error(ErrorKind::InvalidArgument, "empty domain range");
  hx_ = domain.extent_x() / (domain.periodic_x ? nx : nx - 1);
  hy_ = domain.extent_y() / (domain.periodic_y ? ny : ny - 1);
}

bool Grid::interior(int i, int j, int margin) const {
  if (!dom_.periodic_x && (i < margin || i >= nx_ - margin)) return false;
  if (!dom_.periodic_y && (j < margin || j >= ny_ - margin)) return false;
  return true;
}

}  // namespace s4g

#include "s4gauss/stencil.hpp"

namespace s4g {

std::vector<double> diff_zzbar(const Grid& g, std::span<const double> f, FdOrder order) {
  auto xx = diff2<double>(g, f, Axis::X, order);
  const auto yy = diff2<double>(g, f, Axis::Y, order);
  for (std::size_t k = 0; k < xx.size(); ++k) xx[k] = 0.25 * (xx[k] + yy[k]);
  return xx;
}

}  // namespace s4g
