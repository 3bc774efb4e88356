#pragma once

// Run configuration, verification reports, file export and command dispatch
// behind the s4gauss executable.

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "s4gauss/analysis.hpp"
#include "s4gauss/energy.hpp"
#include "s4gauss/immersion.hpp"
#include "s4gauss/linalg5.hpp"

namespace s4g {

/// Which surface to load. For kind = moebius, `inner` names the source that
/// is transformed and the remaining fields describe that source.
struct ImmersionSpec {
  std::string kind = "clifford_torus";
  std::string inner = "clifford_torus";
  double a = 0.8660254037844386;
  double b = 0.5;
  double radius = 1.0;
  std::string path;
  RVec5 center{};
};

struct Tolerances {
  double conformal = 1e-3;
  /// Harmonicity threshold for the reported verdict.
  double harmonic = 1e-6;
  /// Threshold for grid-difference-limited residuals; 0 selects fd_tolerance.
  double residual = 0.0;
  double special = 1e-8;
  double orthogonality = 1e-9;
};

struct FamilyOptions {
  /// Angles of lambda on the unit circle in units of pi.
  std::vector<double> lambda_angles = {0.5};
  int substeps = 4;
  int retract_every = 1;
  int base_i = 0, base_j = 0;
};

struct OutputOptions {
  std::string dir = ".";
  bool fields = true;
  bool mesh = true;
  bool obj = false;
  std::array<int, 3> obj_axes = {0, 1, 2};
};

struct RunConfig {
  ImmersionSpec immersion;
  DerivativeMode derivative;
  int nx = 64, ny = 64;
  FamilyOptions family;
  Tolerances tol;
  OutputOptions output;
  /// Energy disk for open charts; unset means the inscribed disk.
  std::optional<double> disk_radius;
};

/// Throws ConfigError carrying the offending line number.
RunConfig parse_config(const std::string& text);
/// Reads and parses a file; IoError if unreadable.
RunConfig load_config(const std::string& path);

ImmersionPtr build_immersion(const ImmersionSpec& spec);

struct Check {
  std::string name;
  double max = 0.0;
  double rms = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string note;
};

struct VerificationReport {
  std::string subject;
  std::vector<Check> checks;
  bool pass() const;
};

void write_report(const VerificationReport& r, std::ostream& os);

/// Threshold used for grid-difference-limited residuals.
double residual_threshold(const RunConfig& cfg, const SurfaceAnalysis& a);

/// Loads the configured immersion and analyzes it on the configured grid
/// (the sample lattice for grid files).
SurfaceAnalysis analyze_config(const RunConfig& cfg);

/// Residual suite on a finished analysis.
VerificationReport verify_analysis(const RunConfig& cfg, const SurfaceAnalysis& a);

/// analyze_config followed by verify_analysis. Library errors during setup
/// become a failed check named after the error kind.
VerificationReport verify(const RunConfig& cfg);

/// Header x,y,u,h1,h2,re_xi1,im_xi1,re_xi2,im_xi2,re_sigma,im_sigma,K,Kperp,
/// res_G,res_C1,res_C2,res_R,density; one row per node.
void export_fields(const SurfaceAnalysis& a, const std::string& path);

/// `S4MESH nx ny`, then `x y f0 f1 f2 f3 f4` per node.
void export_mesh(const Grid& grid, const std::vector<RVec5>& f, const std::string& path);
/// Wavefront OBJ of the projection onto three ambient axes.
void export_obj(const Grid& grid, const std::vector<RVec5>& f, const std::array<int, 3>& axes,
                const std::string& path);

/// Flat key=value block.
void write_energy_report(const EnergyReport& r, std::ostream& os);

/// cmd is one of analyze, tension, family, energy, verify, catalog. Returns
/// 0 on success, 1 when an internal-consistency check fails or the run
/// errors, 2 on configuration errors. Human-readable output goes to out.
int run_command(const std::string& cmd, const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace s4g
