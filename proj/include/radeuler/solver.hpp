#ifndef RADEULER_SOLVER_HPP
#define RADEULER_SOLVER_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "radeuler/model.hpp"

namespace radeuler {

struct SolverConfig {
  std::size_t N = 256;
  double cfl = 0.4;
  double t_final = 1.0;
  double max_dt = 1e-2;
  double newton_tol = 1e-12;
  int newton_max_iter = 8;
  /// A density at or below this value is reported as a positivity failure.
  double positivity_floor_report = 0.0;
};

/// Throws ConfigError listing every violated constraint.
void validate(const SolverConfig& config);

struct StepReport {
  double dt = 0.0;
  double rho_max = 0.0;
  double rho_min = 0.0;
  double u_max = 0.0;
  /// eps r^(n-1) rho_r at r = a and r = b (the viscous mass fluxes; m vanishes there).
  double flux_a = 0.0;
  double flux_b = 0.0;
  int newton_iterations = 0;
};

struct Rhs {
  std::vector<double> drho;
  std::vector<double> dm;
};

/// Full semidiscrete right-hand side of the viscous system at the nodes. Interior rows use
/// the node values as given (no boundary conditions are imposed here); drho[0] is the
/// value implied by the algebraic Neumann row, the Dirichlet rows are zero.
Rhs semidiscrete_rhs(const GasModel& model, double rho_bar, const State& state, double eps);

/// Convective and geometric terms only (the explicit part of the splitting).
Rhs convective_rhs(const GasModel& model, const State& state);

/// Both viscous operators in flux-difference form (the implicit part).
Rhs viscous_rhs(const State& state, double eps, int n_dim);

/// rho_r(a) = 0 by the second-order one-sided row, m(a) = 0, rho(b) = rho_bar, m(b) = 0.
void apply_boundary_conditions(State& state, double rho_bar);

/// Three dissipation rates eps int (h''|rho_r|^2, rho|u_r|^2, (n-1) rho u^2/r^2) r^(n-1) dr.
std::array<double, 3> dissipation_rates(const GasModel& model, const State& state, double eps);

/// dt = min(cfl h / max(|u| + c), max_dt).
double stable_dt(const GasModel& model, const State& state, const SolverConfig& config);

/// One IMEX step (ARS(2,2,2): explicit convection, implicit viscosity) of size dt.
StepReport advance_step(const GasModel& model, double rho_bar, State& state, double eps,
                        double dt, const SolverConfig& config);

/// Sample times t_k = t_final (k/K)^2, k = 0..K.
std::vector<double> quadratic_schedule(double t_final, std::size_t samples);

/// Quantities accumulated inside the time loop, recorded at each sample time.
struct SampleRecord {
  double t = 0.0;
  std::array<double, 3> dissipation{0.0, 0.0, 0.0};  // time-integrated rates
  double maxprinciple_integral = 0.0;  // int (1 + |rho|_inf^{max(1,gamma-1)/2}) |u|_inf dt
  double boundary_mass_flux = 0.0;     // int eps (b^(n-1) rho_r(b) - a^(n-1) rho_r(a)) dt
  double rho_min = 0.0;                // min over nodes and over all steps so far
  double rho_max = 0.0;
  double u_max = 0.0;
  std::size_t steps = 0;
};

struct Trajectory {
  double eps = 0.0;
  double rho_bar = 0.0;
  GasModel model;
  std::vector<State> snapshots;
  std::vector<SampleRecord> records;
};

/// Integrates from initial.t to config.t_final, snapshotting at every schedule time.
/// Rethrows step failures as NumericalError/PositivityError stamped with the time.
Trajectory run_simulation(const GasModel& model, const State& initial, double eps, double rho_bar,
                          const SolverConfig& config, const std::vector<double>& schedule);

}  // namespace radeuler

#endif  // RADEULER_SOLVER_HPP
