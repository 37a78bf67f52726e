#ifndef RADEULER_CONFIG_HPP
#define RADEULER_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "radeuler/continuation.hpp"
#include "radeuler/diagnostics.hpp"
#include "radeuler/initial_data.hpp"
#include "radeuler/model.hpp"
#include "radeuler/solver.hpp"

namespace radeuler {

struct ModelBlock {
  double gamma = 0.0;
  std::optional<double> kappa;  // nullopt: normalized
  int n = 0;
};

struct PlanBlock {
  std::vector<double> ladder;
  std::optional<double> k1;  // nullopt: canonical (k1 = n)
  std::optional<double> k2;  // nullopt: canonical (k2 = n / gamma)
  PowerRule a_rule{1.0, 0.5};
  PowerRule b_rule{1.0, -0.5};
  double budget = 2.0;
};

struct SolverBlock {
  double cfl = 0.4;
  double t_final = 1.0;
  double max_dt = 1.0;
  double newton_tol = 1e-12;
  int newton_max_iter = 8;
  double positivity_floor_report = 0.0;
  std::size_t samples = 64;
  double cells_per_viscous_length = 64.0;
  std::size_t min_cells = 64;
  std::size_t max_cells = 1 << 16;
  std::optional<std::size_t> cells;  // fixes N for the run command
};

struct TestSpec {
  std::string shape = "bump";  // bump | cutoff | centered
  double t0 = 0.0, t1 = 1.0;
  double r0 = 0.0, r1 = 1.0;
  double amplitude = 1.0;
};

struct DiagnosticsBlock {
  Window K;
  double a1 = 1.0;
  double rho_tilde = 0.0;
  double maxprinciple_C = kFrozenMaxPrincipleC;
  double energy_monotone_tol = 1e-8;
  double energy_residual_tol = 1e-4;
  double triangle_tol = 0.05;
  double compat_tol = 1e-8;
  std::vector<std::string> pairs{"half_s2", "half_s_abs_s"};
  std::vector<TestSpec> tests;  // empty: default catalog
  double cauchy_p = 1.0;
  double cauchy_q = 1.0;
  std::vector<std::string> entropy_psi{"half_s2"};
  double entropy_rel_tol = 1e-3;
  double uniformity_band = 2.0;
};

struct RunBlock {
  std::optional<double> eps;  // nullopt: first ladder level
};

struct OutputBlock {
  std::string directory = "out";
  std::vector<std::string> formats{"json", "csv", "snapshots", "plots"};
  bool has(const std::string& f) const;
};

struct RunConfig {
  ModelBlock model;
  PlanBlock plan;
  ProfileSpec profile;
  SolverBlock solver;
  DiagnosticsBlock diagnostics;
  RunBlock run;
  OutputBlock output;
  std::string base_dir;  // directory of the config file; relative table paths resolve here

  GasModel gas_model() const;
  ScalingPlan scaling_plan() const;
  SolverConfig solver_config() const;
  ResolutionRule resolution() const;
  std::vector<TestFunction> tests() const;
  DiagnosticsSettings diagnostics_settings() const;
  SweepConfig sweep_config() const;
};

/// Parses and validates a JSON config. Throws ConfigError listing every problem found:
/// missing required keys, type mismatches, unknown keys and cross-field violations.
RunConfig parse_config_text(const std::string& text, const std::string& base_dir = ".");
RunConfig parse_config_file(const std::string& path);

/// JSON with every field present (defaults filled), so parse(emit(parse(c))) == parse(c).
std::string emit_config(const RunConfig& config);

}  // namespace radeuler

#endif  // RADEULER_CONFIG_HPP
