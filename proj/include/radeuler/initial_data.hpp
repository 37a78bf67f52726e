#ifndef RADEULER_INITIAL_DATA_HPP
#define RADEULER_INITIAL_DATA_HPP

#include <string>
#include <utility>
#include <vector>

#include "radeuler/model.hpp"

namespace radeuler {

enum class ProfileKind { equilibrium, gaussian_pulse, smoothed_jump, table };

std::string to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(const std::string& name);

/// Continuum initial profile (rho0, u0) on r >= 0.
///   gaussian_pulse: rho0 = amplitude exp(-((r - center)/width)^2)
///   smoothed_jump:  rho0 = amplitude (1 - tanh((r - center)/width)) / 2
///   table:          rho0 linear in the (r, value) rows, constant below the first row and
///                   zero beyond the last
///   equilibrium:    rho0 = 0 (the data reduce to the floor / far-field state)
/// u0 = velocity_amplitude exp(-((r - velocity_center)/velocity_width)^2).
struct ProfileSpec {
  ProfileKind kind = ProfileKind::equilibrium;
  double amplitude = 1.0;
  double center = 1.0;
  double width = 0.25;
  double velocity_amplitude = 0.0;
  double velocity_center = 1.0;
  double velocity_width = 0.25;
  /// User floor; the data use max(floor, rho_bar).
  double floor = 0.0;
  std::string table_path;
  std::vector<std::pair<double, double>> table;

  double density(double r) const;
  double velocity(double r) const;
};

/// Reads "r, value" rows (comma or whitespace separated, '#' comments) into spec.table.
void load_profile_table(ProfileSpec& spec);

struct LevelParameters {
  double eps;
  double a;
  double b;
  double rho_bar;
};

/// Mollified, floored and boundary-blended data on the grid. The first and last four nodes
/// are held at the boundary states; a quintic ramp over the next 2h joins the interior.
State build_initial_data(const ProfileSpec& profile, const GasModel& model,
                         const LevelParameters& level, const RadialGrid& grid);

/// Width, in cells, of the blended margin at each end.
inline constexpr std::size_t kBlendMarginCells = 5;

struct CompatibilityResidual {
  std::string name;
  double value = 0.0;     // |lhs - rhs|
  double scale = 0.0;     // term scale the value is compared against
  double relative = 0.0;  // value / scale
  bool pass = false;
};

struct CompatibilityReport {
  std::vector<CompatibilityResidual> residuals;
  double tolerance = 1e-8;
  bool pass = true;
};

/// Boundary values at a and b, (r^(n-1) m)_r = 0 at a, and both second-order identities
/// at b, all with second-order one-sided differences.
CompatibilityReport verify_compatibility(const State& state, const GasModel& model, double eps,
                                         double rho_bar, double tolerance = 1e-8);

}  // namespace radeuler

#endif  // RADEULER_INITIAL_DATA_HPP
