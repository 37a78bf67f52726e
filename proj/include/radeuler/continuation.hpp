#ifndef RADEULER_CONTINUATION_HPP
#define RADEULER_CONTINUATION_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "radeuler/diagnostics.hpp"
#include "radeuler/initial_data.hpp"
#include "radeuler/model.hpp"
#include "radeuler/solver.hpp"

namespace radeuler {

/// N(eps) = ceil(cells_per_viscous_length (b - a) / sqrt(eps)), clamped to [min_cells, max_cells].
struct ResolutionRule {
  double cells_per_viscous_length = 64.0;
  std::size_t min_cells = 64;
  std::size_t max_cells = 1 << 16;

  std::size_t cells(double a, double b, double eps) const;
};

struct SweepConfig {
  ScalingPlan plan;
  ProfileSpec profile;
  /// gamma, kappa and n; delta is replaced by the plan's delta(eps) at each level.
  GasModel model;
  /// N is ignored (the resolution rule decides it); every level shares t_final and the schedule.
  SolverConfig solver;
  ResolutionRule resolution;
  std::size_t samples = 64;
  Window K;
  /// 0: take RADIAL_EULER_THREADS, else one thread per level.
  std::size_t threads = 0;
};

struct LevelRun {
  std::size_t index = 0;
  LevelParameters level{};
  std::size_t cells = 0;
  CompatibilityReport compatibility;
  Trajectory trajectory;
};

struct SweepResult {
  std::vector<LevelRun> levels;
  BudgetReport budget;
  Window K;
  double t_final = 0.0;
  std::vector<double> times;  // shared snapshot schedule
};

/// Worker count for a sweep of `levels` levels: min(levels, RADIAL_EULER_THREADS) when the
/// variable holds a positive integer, else min(levels, hardware concurrency).
std::size_t sweep_thread_count(std::size_t levels);

/// Runs every level of the plan. A failing level aborts the sweep; the error names the level.
SweepResult run_sweep(const SweepConfig& config);

/// Fields sampled on a tensor grid (times x radii), row-major in time.
struct SampledField {
  std::vector<double> t;
  std::vector<double> r;
  std::vector<double> rho;
  std::vector<double> m;

  double rho_at(std::size_t k, std::size_t j) const { return rho[k * r.size() + j]; }
  double m_at(std::size_t k, std::size_t j) const { return m[k * r.size() + j]; }
};

/// Zero-extended, piecewise-linear-in-r samples of a trajectory at its own snapshot times.
SampledField sample_trajectory(const Trajectory& traj, const std::vector<double>& radii);

/// (f_fine - q f_coarse) / (1 - q) with q = eps_fine / eps_coarse.
SampledField richardson_extrapolate(const SampledField& fine, double eps_fine, const SampledField& coarse,
                                    double eps_coarse);

/// Uniform radii on [lo, hi] at least as fine as the finest level.
std::vector<double> reference_radii(const SweepResult& sweep, double lo, double hi);

/// Throws ConfigError unless 1 <= p < gamma + 1 and 1 <= q < 3 (gamma + 1) / (gamma + 3).
void validate_exponents(double p, double q, const GasModel& model);

struct CauchyRow {
  double eps_coarse = 0.0;
  double eps_fine = 0.0;
  double rho_diff = 0.0;  // ||rho_k - rho_(k+1)||_{L^p(W)}
  double m_diff = 0.0;    // ||m_k - m_(k+1)||_{L^q(W)}
};

struct CauchyTable {
  double p = 1.0;
  double q = 1.0;
  std::vector<CauchyRow> rows;
  bool rho_decreasing = true;
  bool m_decreasing = true;
};

/// Consecutive-level differences over W = [0, T] x K with plain dr dt. Needs >= 3 levels.
CauchyTable cauchy_lp_differences(const SweepResult& sweep, double p, double q);

struct WeakResidualRow {
  std::string candidate;  // "eps=<value>" or "richardson"
  double eps = 0.0;       // 0 for the extrapolated candidate
  std::size_t test = 0;
  double continuity = 0.0;
  double momentum = 0.0;
};

struct WeakResidualTable {
  std::vector<WeakResidualRow> rows;
  /// |continuity residual| non-increasing along the ladder for every test.
  bool continuity_decreasing = true;
  bool momentum_decreasing = true;
};

/// Throws ConfigError when a test violates phi_r(t,0) = 0 (continuity) or
/// phi(t,0) = phi_r(t,0) = 0 (momentum), or leaves [0, T] in time.
void check_weak_tests(const std::vector<TestFunction>& tests, double t_final, bool momentum);

/// Both weak forms, with the initial-data term, for every level and for the Richardson
/// extrapolation of the last two. The limit pressure is kappa rho^gamma.
WeakResidualTable weak_euler_residual(const SweepResult& sweep, const std::vector<TestFunction>& continuity_tests,
                                      const std::vector<TestFunction>& momentum_tests);

/// Weak-form integrals of one sampled candidate against one test. The sample radii must cover
/// the test's support.
double weak_continuity(const SampledField& f, const SampledField& initial, const TestFunction& phi, int n_dim);
double weak_momentum(const SampledField& f, const SampledField& initial, const TestFunction& phi,
                     const GasModel& model);

struct EntropyCheckRow {
  std::string pair;
  std::size_t test = 0;
  double pairing = 0.0;
  bool pass = false;
};

struct EnergyCheckRow {
  double eps = 0.0;
  double initial = 0.0;  // int eta*(rho0, m0) r^(n-1) dr
  double final = 0.0;    // same at t = T
  bool monotone = true;  // non-increasing along every pair t1 <= t2 of samples
  bool pass = true;
};

struct EntropyCheckReport {
  double energy_scale = 0.0;
  double tolerance = 0.0;
  std::vector<EntropyCheckRow> rows;
  std::vector<EnergyCheckRow> energy;
  bool pass = true;
};

/// Pairs the distributional entropy inequality at the finest level with each nonnegative
/// test: P = int int [-(eta phi_t + q phi_r) r^(n-1)
///                     + (n-1) r^(n-2) (m eta_rho + m^2/rho eta_m - q) phi] dr dt
/// and passes iff P <= rel_tol * energy_scale, energy_scale = int eta_psi(rho0, m0) r^(n-1) dr.
/// Also checks the finite-energy inequality on every level.
EntropyCheckReport entropy_inequality_check(const SweepResult& sweep, const std::vector<std::string>& psi_names,
                                            const std::vector<TestFunction>& tests, double rel_tol = 1e-3);

/// The distributional pairing for one trajectory, one pair and one test.
double entropy_pairing(const Trajectory& traj, const PairEvaluator& pair, const TestFunction& phi);

}  // namespace radeuler

#endif  // RADEULER_CONTINUATION_HPP
