#include "s4gauss/energy.hpp"

#include <cmath>
#include <numbers>

namespace s4g {

double energy_density(const FundamentalData& fd) {
  return 1.0 + fd.mean_curvature_sq() + std::exp(-4.0 * fd.u) * fd.xi_sq();
}

double willmore_density(const FundamentalData& fd) { return 1.0 + fd.mean_curvature_sq() - gauss_curvature(fd); }

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t h = v.size() / 2;
  return pairwise_sum(v.first(h)) + pairwise_sum(v.subspan(h));
}

double integrate_area(const Grid& grid, std::span<const FundamentalData> fd, std::span<const double> g,
                      const QuadratureOptions& opt) {
  std::vector<double> terms(grid.size());
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) {
      const std::size_t k = grid.index(i, j);
      double w = grid.hx() * grid.hy();
      if (!grid.domain().periodic_x && (i == 0 || i == grid.nx() - 1)) w *= 0.5;
      if (!grid.domain().periodic_y && (j == 0 || j == grid.ny() - 1)) w *= 0.5;
      if (opt.disk_radius) {
        const double x = grid.x(i), y = grid.y(j);
        if (x * x + y * y > *opt.disk_radius * *opt.disk_radius) w = 0.0;
      }
      terms[k] = w == 0.0 ? 0.0 : w * g[k] * 2.0 * fd[k].e2u();
    }
  return pairwise_sum(terms);
}

namespace {

template <class F>
double integrate_fn(const Grid& grid, std::span<const FundamentalData> fd, const QuadratureOptions& opt, F f) {
  std::vector<double> g(fd.size());
  for (std::size_t k = 0; k < fd.size(); ++k) g[k] = f(fd[k]);
  return integrate_area(grid, fd, g, opt);
}

}  // namespace

double total_energy(const Grid& grid, std::span<const FundamentalData> fd, const QuadratureOptions& opt) {
  return integrate_fn(grid, fd, opt, [](const FundamentalData& d) { return energy_density(d); });
}

double willmore_energy(const Grid& grid, std::span<const FundamentalData> fd, const QuadratureOptions& opt) {
  return integrate_fn(grid, fd, opt, [](const FundamentalData& d) { return willmore_density(d); }) /
         (2.0 * std::numbers::pi);
}

double total_curvature(const Grid& grid, std::span<const FundamentalData> fd, const QuadratureOptions& opt) {
  return integrate_fn(grid, fd, opt, [](const FundamentalData& d) { return gauss_curvature(d); });
}

double surface_area(const Grid& grid, std::span<const FundamentalData> fd, const QuadratureOptions& opt) {
  return integrate_fn(grid, fd, opt, [](const FundamentalData&) { return 1.0; });
}

double energy_identity(double e, double w, double total_k) { return e - 4.0 * std::numbers::pi * w - total_k; }

double bound_check(double e, int genus) { return e - 2.0 * std::numbers::pi * (2.0 - 2.0 * genus); }

EnergyReport energy_report(const Grid& grid, std::span<const FundamentalData> fd, int genus,
                           const QuadratureOptions& opt) {
  EnergyReport r;
  r.genus = genus;
  r.E = total_energy(grid, fd, opt);
  r.W = willmore_energy(grid, fd, opt);
  r.total_K = total_curvature(grid, fd, opt);
  r.area = surface_area(grid, fd, opt);
  r.identity_residual = energy_identity(r.E, r.W, r.total_K);
  r.euler_char_estimate = r.total_K / (2.0 * std::numbers::pi);
  r.bound_slack = bound_check(r.E, genus);
  if (opt.disk_radius) r.tail_bound = 4.0 * std::numbers::pi / (1.0 + *opt.disk_radius * *opt.disk_radius);
  r.min_willmore_density = HUGE_VAL;
  for (const FundamentalData& d : fd) {
    const double k = gauss_curvature(d);
    r.density_identity = std::max(r.density_identity, std::abs(energy_density(d) - (2.0 * (1.0 + d.mean_curvature_sq()) - k)));
    r.min_willmore_density = std::min(r.min_willmore_density, willmore_density(d));
  }
  return r;
}

}  // namespace s4g
