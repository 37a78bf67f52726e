#ifndef RADEULER_MODEL_HPP
#define RADEULER_MODEL_HPP

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace radeuler {

/// Polytropic gas with the quadratic anti-cavitation correction
///   p_delta(rho) = kappa rho^gamma + delta rho^2
/// posed in n_dim space dimensions under radial symmetry.
class GasModel {
 public:
  GasModel(double gamma, double kappa, double delta, int n_dim);

  /// kappa = (gamma-1)^2 / (4 gamma), the normalization under which R(rho) = rho^theta
  /// and the entropy kernel formulas hold exactly.
  static GasModel normalized(double gamma, double delta, int n_dim);
  static double normalized_kappa(double gamma) { return (gamma - 1.0) * (gamma - 1.0) / (4.0 * gamma); }

  double gamma() const noexcept { return gamma_; }
  double kappa() const noexcept { return kappa_; }
  double delta() const noexcept { return delta_; }
  int n_dim() const noexcept { return n_dim_; }
  bool kappa_normalized() const noexcept { return kappa_normalized_; }

  double theta() const noexcept { return 0.5 * (gamma_ - 1.0); }
  double lambda() const noexcept { return (3.0 - gamma_) / (2.0 * (gamma_ - 1.0)); }

  GasModel with_delta(double delta) const;

  /// p_delta and its derivative. Negative density is a DomainError.
  double pressure(double rho) const;
  double dpressure(double rho) const;
  /// Inviscid-limit pressure kappa rho^gamma (no delta term).
  double pressure_euler(double rho) const;
  double dpressure_euler(double rho) const;

  double sound_speed(double rho) const { return std::sqrt(dpressure(rho)); }

  /// h_delta(rho) = rho * int_0^rho p_delta(s)/s^2 ds = kappa rho^gamma/(gamma-1) + delta rho^2.
  double internal_energy(double rho) const;
  double dinternal_energy(double rho) const;
  double d2internal_energy(double rho) const;

  /// R(rho) = int_0^rho sqrt(p_delta'(s))/s ds. Closed form when delta = 0.
  double riemann_R(double rho) const;
  /// Always evaluates R by adaptive quadrature (used to cross-check the closed form).
  double riemann_R_quadrature(double rho) const;

 private:
  double gamma_;
  double kappa_;
  double delta_;
  int n_dim_;
  bool kappa_normalized_;
};

struct PressureValue {
  double p;
  double dp;
};

PressureValue pressure_delta(const GasModel& model, double rho);

struct RiemannInvariants {
  double w;
  double z;
  double lambda1;  // u - sqrt(p')
  double lambda2;  // u + sqrt(p')
};

RiemannInvariants riemann_invariants(const GasModel& model, double rho, double m);

/// Mechanical energy of the viscous system relative to the equilibrium (rho_bar, 0).
double relative_energy_density(const GasModel& model, double rho_bar, double rho, double m);

/// h_delta(rho) - h_delta(rho_bar) - h_delta'(rho_bar)(rho - rho_bar).
double relative_internal_energy(const GasModel& model, double rho_bar, double rho);

/// Largest c1 with relative_internal_energy >= c1 rho (rho^theta - rho_bar^theta)^2 on
/// [rho_lo, rho_hi]: log-grid search refined by golden section.
double energy_lower_bound_constant(const GasModel& model, double rho_bar, double rho_lo,
                                   double rho_hi, int samples = 4000);

/// Power-law rule eps -> coef * eps^power.
struct PowerRule {
  double coef = 1.0;
  double power = 0.5;
  double operator()(double eps) const;
};

/// A scaling exponent given either as "the minimum the budget allows" or as a value.
/// Stored as the excess over the minimum so the canonical choice is represented exactly.
struct Exponent {
  std::optional<double> value;  // nullopt == canonical minimum
  static Exponent canonical() { return {}; }
  static Exponent of(double v) { return {v}; }
};

/// The epsilon ladder and the coupled a(eps), b(eps), delta(eps), rho_bar(eps):
///   delta = eps b^{-k1},  rho_bar = b^{-k2},  k1 >= n,  k2 >= n/gamma.
class ScalingPlan {
 public:
  ScalingPlan(std::vector<double> ladder, Exponent k1, Exponent k2, PowerRule a_rule,
              PowerRule b_rule, double budget, const GasModel& model);

  const std::vector<double>& ladder() const noexcept { return ladder_; }
  double k1() const noexcept { return n_ + k1_excess_; }
  double k2() const noexcept { return n_ / gamma_ + k2_excess_; }
  double k1_excess() const noexcept { return k1_excess_; }
  double k2_excess() const noexcept { return k2_excess_; }
  const PowerRule& a_rule() const noexcept { return a_rule_; }
  const PowerRule& b_rule() const noexcept { return b_rule_; }
  double budget() const noexcept { return budget_; }

  double a(double eps) const { return a_rule_(eps); }
  double b(double eps) const { return b_rule_(eps); }
  double delta(double eps) const;
  double rho_bar(double eps) const;
  /// rho_bar^gamma b^n + (delta/eps) b^n, evaluated through the exponents.
  double budget_value(double eps) const;

  ScalingPlan truncated(std::size_t levels) const;

 private:
  std::vector<double> ladder_;
  double k1_excess_;
  double k2_excess_;
  PowerRule a_rule_;
  PowerRule b_rule_;
  double budget_;
  double n_;
  double gamma_;
};

struct BudgetLevel {
  double eps;
  double a;
  double b;
  double delta;
  double rho_bar;
  double value;
  bool pass;
};

struct BudgetReport {
  std::vector<BudgetLevel> levels;
  bool all_pass = true;
};

BudgetReport validate_scaling_plan(const ScalingPlan& plan, const GasModel& model);

/// Uniform radial mesh r_i = a + i h, i = 0..N, on [a, b].
class RadialGrid {
 public:
  RadialGrid(double a, double b, std::size_t cells);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  std::size_t cells() const noexcept { return cells_; }
  std::size_t nodes() const noexcept { return cells_ + 1; }
  double h() const noexcept { return h_; }
  double r(std::size_t i) const noexcept { return i == cells_ ? b_ : a_ + static_cast<double>(i) * h_; }
  double r_half(std::size_t i) const noexcept { return a_ + (static_cast<double>(i) + 0.5) * h_; }
  std::vector<double> radii() const;

  bool operator==(const RadialGrid&) const = default;

 private:
  double a_;
  double b_;
  std::size_t cells_;
  double h_;
};

/// Nodal density and momentum at one instant. Density is strictly positive.
struct State {
  RadialGrid grid;
  double t = 0.0;
  std::vector<double> rho;
  std::vector<double> m;

  State(RadialGrid grid, double t, std::vector<double> rho, std::vector<double> m);

  std::size_t size() const noexcept { return rho.size(); }
  double u(std::size_t i) const noexcept { return m[i] / rho[i]; }
};

}  // namespace radeuler

#endif  // RADEULER_MODEL_HPP
