#pragma once

// Normal energy of the Gauss map, Willmore energy and Gauss-Bonnet totals.

#include <optional>
#include <span>
#include <vector>

#include "s4gauss/grid.hpp"
#include "s4gauss/invariants.hpp"

namespace s4g {

/// 1 + |H|^2 + e^{-4u}(|xi1|^2 + |xi2|^2).
double energy_density(const FundamentalData& fd);
/// 1 + |H|^2 - K, the Willmore integrand.
double willmore_density(const FundamentalData& fd);

struct QuadratureOptions {
  /// Restricts integration to x^2 + y^2 <= r^2 (used for the sphere chart).
  std::optional<double> disk_radius;
};

/// Tree-ordered sum; the order depends only on the length.
double pairwise_sum(std::span<const double> v);

/// Integral of g dA with dA = 2 e^{2u} dx dy. Periodic axes use the
/// periodic trapezoid rule, open axes the composite trapezoid rule.
double integrate_area(const Grid& grid, std::span<const FundamentalData> fd, std::span<const double> g,
                      const QuadratureOptions& opt = {});

double total_energy(const Grid& grid, std::span<const FundamentalData> fd, const QuadratureOptions& opt = {});
double willmore_energy(const Grid& grid, std::span<const FundamentalData> fd, const QuadratureOptions& opt = {});
double total_curvature(const Grid& grid, std::span<const FundamentalData> fd, const QuadratureOptions& opt = {});
double surface_area(const Grid& grid, std::span<const FundamentalData> fd, const QuadratureOptions& opt = {});

/// E - 4 pi W - total_K.
double energy_identity(double e, double w, double total_k);
/// E - 2 pi (2 - 2g).
double bound_check(double e, int genus);

struct EnergyReport {
  double E = 0.0;
  double W = 0.0;
  double total_K = 0.0;
  double area = 0.0;
  double identity_residual = 0.0;
  double euler_char_estimate = 0.0;
  double bound_slack = 0.0;
  int genus = 0;
  /// Energy of the part of a stereographic sphere chart outside the disk
  /// (density 1 there); zero when no disk is used.
  double tail_bound = 0.0;
  /// Largest |energy_density - (2(1 + |H|^2) - K)|.
  double density_identity = 0.0;
  /// Smallest Willmore integrand value.
  double min_willmore_density = 0.0;
};

EnergyReport energy_report(const Grid& grid, std::span<const FundamentalData> fd, int genus,
                           const QuadratureOptions& opt = {});

}  // namespace s4g
