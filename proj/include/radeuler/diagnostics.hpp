#ifndef RADEULER_DIAGNOSTICS_HPP
#define RADEULER_DIAGNOSTICS_HPP

#include <memory>
#include <string>
#include <vector>

#include "radeuler/entropy.hpp"
#include "radeuler/model.hpp"
#include "radeuler/solver.hpp"

namespace radeuler {

/// Compact radial window K = [r_lo, r_hi].
struct Window {
  double r_lo = 0.8;
  double r_hi = 1.6;
};

/// phi(t, r) = sum_k coef_k tau_k(t) sigma_k(r) with smooth separable factors.
class TestFunction {
 public:
  enum class TimeShape { bump, cutoff };
  enum class SpaceShape { bump, centered };

  struct Term {
    double coef;
    TimeShape time_shape;
    double t0, t1;  // bump: support (t0, t1); cutoff: 1 on [0, t0], 0 from t1 on
    SpaceShape space_shape;
    double r0, r1;  // bump: support (r0, r1); centered: support [0, r1), r0 unused
  };

  /// tau = bump on (t0, t1), sigma = bump on (r0, r1).
  static TestFunction bump(double t0, double t1, double r0, double r1, double amplitude = 1.0);
  /// tau = 1 near t = 0 decaying to 0 at t1, sigma = bump on (r0, r1).
  static TestFunction initial_cutoff(double t0, double t1, double r0, double r1, double amplitude = 1.0);
  /// sigma = even bump of radius R about r = 0: sigma'(0) = 0 but sigma(0) != 0.
  static TestFunction centered(double t0, double t1, double R, double amplitude = 1.0);

  TestFunction operator+(const TestFunction& other) const;
  TestFunction operator*(double c) const;

  double value(double t, double r) const;
  double dt(double t, double r) const;
  double dr(double t, double r) const;
  /// Upper bound of |phi| (sum of |coef| times the factor maxima).
  double sup_abs() const;

  double t_min() const;
  double t_max() const;
  double r_min() const;
  double r_max() const;

  /// sigma'(0) = 0, checked numerically on the zero extension.
  bool derivative_vanishes_at_origin() const;
  /// sigma(0) = sigma'(0) = 0, checked numerically.
  bool value_and_derivative_vanish_at_origin() const;
  bool nonnegative() const;

  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::string describe() const;

 private:
  std::vector<Term> terms_;
};

/// Five nonnegative bumps inside (0, T) x K used when a config does not list its own.
std::vector<TestFunction> default_test_catalog(double t_final, const Window& K);

struct EnergyReport {
  std::vector<double> times;
  std::vector<double> energy;
  std::vector<std::array<double, 3>> dissipation;
  std::vector<double> residual;
  std::vector<double> measure_above;  // r^(n-1) dr measure of {rho > 3 rho_bar / 2}
  double E0 = 0.0;
  double max_residual = 0.0;
  bool non_increasing = true;
  double c1 = 0.0;
  double c2 = 0.0;
  double measure_bound = 0.0;  // c2 E0
  bool measure_pass = true;
};

/// Relative energy, the three accumulated dissipation integrals, the balance residual
/// |E(t) + D(t) - E(0)| and the measure bound. The energy counts as non-increasing when
/// E(t_k) <= E(t_(k-1)) + monotone_tol * E0 * (t_k - t_(k-1)).
EnergyReport energy_report(const Trajectory& traj, double monotone_tol = 1e-8);

struct MaxPrincipleReport {
  std::vector<double> times;
  std::vector<double> max_w;      // running max over Q_t
  std::vector<double> min_z;      // running min over Q_t
  std::vector<double> max_u;      // running max over Q_t
  std::vector<double> R_sup;      // ||R(rho)||_inf over Q_t
  std::vector<double> integral;   // int (1 + |rho|^{max(1,gamma-1)/2}) |u|_inf
  std::vector<double> bound_w;
  std::vector<double> bound_z;
  std::vector<double> bound_u;
  double C = 0.0;
  bool pass = true;
};

/// Maximum-principle bounds with a frozen constant C; the reference bound is fixed at t = 0.
MaxPrincipleReport riemann_maxprinciple_report(const Trajectory& traj, double C);

/// Smallest C that makes the bounds hold on this trajectory.
double calibrate_maxprinciple_constant(const Trajectory& traj);

/// calibrate_maxprinciple_constant on the validation run (gaussian pulse, zero velocity,
/// n = 3, gamma = 2, eps = 1/8) returns 0: max w0 + ||R||_inf already bounds max w there.
inline constexpr double kFrozenMaxPrincipleC = 0.0;

struct IntegrabilityReport {
  Window K;
  double a1 = 1.0;
  std::vector<double> rho_gamma_moments;      // sup_t int_{a1}^b rho^gamma r^l dr, l = 0..n-1
  double rho3_tail_a = 0.0;        // int_0^T int_a^b rho^3 y^(n-1) dy dt
  double rho3_tail_K = 0.0;        // same from r = K.r_lo
  double interior_pressure = 0.0;             // int int_K (rho^(gamma+1) + delta rho^3) dr dt
  double interior_delta_rho3 = 0.0;  // int int_K delta rho^3 dr dt
  double interior_flux = 0.0;             // int int_K (rho |u|^3 + rho^(gamma+theta)) dr dt
  double norm_rho_gamma = 1.0;              // 1 + rho_bar^gamma b^n
  double norm_interior_pressure = 1.0;              // the bound carries no eps-dependent factor
  double norm_rho3_tail = 1.0;              // 1 + b^n / eps
  double norm_interior_flux = 1.0;              // 1 + rho_bar^gamma b^n + delta b^n / eps
  std::vector<double> rho_gamma_moments_normalized;
  double rho3_tail_normalized = 0.0;
  double interior_pressure_normalized = 0.0;
  double interior_flux_normalized = 0.0;
  /// sup_t int_a^b rho^gamma r^(n-1) dr over the whole annulus.
  double rho_gamma_annulus = 0.0;
};

/// Throws ConfigError when K is not compactly inside (a, b) or a1 is outside (a, 1].
IntegrabilityReport higher_integrability_report(const Trajectory& traj, const Window& K, double a1 = 1.0);

struct PairingRow {
  std::string pair;
  std::size_t test = 0;
  double D = 0.0;                // int int (eta phi_t + q phi_r) dr dt
  double bounded_L1 = 0.0;       // || I1 + I3 + I5 ||_{L1(supp phi)}
  double sup_phi = 0.0;
  double vanishing = 0.0;        // | int int (I2 + I4) phi |
  double I2_L1 = 0.0;
  double I4_L1 = 0.0;
  double consistency = 0.0;      // | D + int int (I1 + ... + I5) phi |
  bool triangle_pass = false;    // |D| <= (1 + tol) (bounded_L1 sup_phi + vanishing)
};

struct EntropyDissipationReport {
  std::vector<PairingRow> rows;
  double small_density_gradient = 0.0;  // eps^(3/2) int int_K |rho_r|^2
  /// L^(gamma+1)(W) norms of eta and q per pair: the computable shadow of the W^{-1,q} bound.
  std::vector<std::pair<std::string, std::array<double, 2>>> lq_norms;
};

EntropyDissipationReport entropy_dissipation_proxy(const Trajectory& traj,
                                                   const std::vector<const PairEvaluator*>& pairs,
                                                   const std::vector<TestFunction>& tests,
                                                   const Window& K, double triangle_tol = 0.05);

/// eps^(3/2) int_0^T int_K |rho_r|^2 dr dt.
double small_density_gradient(const Trajectory& traj, const Window& K);

struct VacuumReport {
  double rho_tilde = 0.0;
  std::vector<double> times;
  std::vector<double> phi_integral;  // int_a^b phi(rho) dr
  double sup_phi_integral = 0.0;
  double rho_r2_over_rho3 = 0.0;     // int int_{rho < rho_tilde} |rho_r|^2 / rho^3 dr dt
  double min_rho = 0.0;              // min over every step of the run
};

/// phi(rho) = 1/rho - 1/rho~ + (rho - rho~)/rho~^2 for rho < rho~, zero above.
double vacuum_phi(double rho, double rho_tilde);

VacuumReport vacuum_proximity_report(const Trajectory& traj, double rho_tilde);

/// Weights of the trapezoidal rule on the snapshot times.
std::vector<double> time_weights(const std::vector<double>& times);

struct DiagnosticsSettings {
  Window K;
  double a1 = 1.0;
  double rho_tilde = 0.0;  // 0 selects rho_bar
  double maxprinciple_C = kFrozenMaxPrincipleC;
  double energy_monotone_tol = 1e-8;
  double triangle_tol = 0.05;
  std::vector<std::string> pairs{"half_s2", "half_s_abs_s"};
  std::vector<TestFunction> tests;  // empty selects default_test_catalog
};

struct DiagnosticReport {
  double eps = 0.0;
  double rho_bar = 0.0;
  EnergyReport energy;
  MaxPrincipleReport maxprinciple;
  IntegrabilityReport integrability;
  EntropyDissipationReport entropy;
  VacuumReport vacuum;
};

DiagnosticReport build_diagnostic_report(const Trajectory& traj, const DiagnosticsSettings& settings);

}  // namespace radeuler

#endif  // RADEULER_DIAGNOSTICS_HPP
