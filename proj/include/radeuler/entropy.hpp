#ifndef RADEULER_ENTROPY_HPP
#define RADEULER_ENTROPY_HPP

#include <array>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "radeuler/model.hpp"
#include "radeuler/quadrature.hpp"

namespace radeuler {

/// Generating function psi of a weak entropy pair, with the metadata the kernel
/// quadrature needs: kink locations and an analyticity length scale.
struct GeneratingFunction {
  std::string name;
  std::function<double(double)> psi;
  std::function<double(double)> dpsi;
  std::function<double(double)> d2psi;
  /// Points where psi or psi' fails to be smooth; quadrature panels are split there.
  std::vector<double> kinks;
  /// Distance to the nearest complex singularity for analytic non-polynomial psi.
  /// Panels are kept shorter than this in the argument variable. nullopt: piecewise polynomial.
  std::optional<double> analytic_scale;
  bool convex = false;
  /// |psi(s)| = O(s^2) as |s| -> infinity.
  bool subquadratic = false;
  double sup_abs_d2psi = std::numeric_limits<double>::infinity();

  static GeneratingFunction one();
  static GeneratingFunction s();
  static GeneratingFunction half_s2();
  static GeneratingFunction half_s_abs_s();
  static GeneratingFunction sqrt_1_s2();
  /// Smooth compactly supported bump exp(-1/(1-s^2)) on (-1, 1).
  static GeneratingFunction bump();
  /// Looks up one of the catalog entries above by name.
  static GeneratingFunction by_name(const std::string& name);
  static std::vector<std::string> catalog();
};

/// Closed-form moments of the kernel weight (1-s^2)^lambda on [-1, 1].
struct KernelMoments {
  double c_lambda;  // int (1-s^2)^lambda ds = B(1/2, lambda+1)
  double d_lambda;  // int s^2 (1-s^2)^lambda ds = c_lambda / (2 lambda + 3)

  static KernelMoments of(double lambda);
};

struct PairValue {
  double eta = 0.0;
  double q = 0.0;
};

struct PairGradient {
  double eta_rho = 0.0;
  double eta_m = 0.0;
};

/// Anything that evaluates an entropy/entropy-flux candidate at (rho, m).
class PairEvaluator {
 public:
  virtual ~PairEvaluator() = default;
  virtual std::string name() const = 0;
  virtual PairValue value(double rho, double m) const = 0;
  /// Gradient of eta. The default uses central differences with relative step 1e-6.
  virtual PairGradient gradient(double rho, double m) const;
};

/// Weak entropy pair generated by psi through the kernel
///   eta = rho int psi(u + rho^theta s) (1-s^2)^lambda ds
///   q   = rho int (u + theta rho^theta s) psi(u + rho^theta s) (1-s^2)^lambda ds.
/// The kernel identities hold for the normalized kappa.
class EntropyPair : public PairEvaluator {
 public:
  EntropyPair(GeneratingFunction psi, const GasModel& model, int quadrature_order = 24);

  std::string name() const override { return "kernel[" + psi_.name + "]"; }
  PairValue value(double rho, double m) const override;
  PairGradient gradient(double rho, double m) const override;

  const GeneratingFunction& psi() const noexcept { return psi_; }
  int quadrature_order() const noexcept { return order_; }
  double lambda() const noexcept { return lambda_; }
  double theta() const noexcept { return theta_; }

  /// Gauss rules on [-1, 1] used for the kernel panels.
  struct Rules {
    double lambda;
    bool polynomial_weight;  // lambda a nonnegative integer
    GaussRule symmetric;     // Jacobi(lambda, lambda)
    GaussRule left;          // Jacobi(0, lambda): singular at -1
    GaussRule right;         // Jacobi(lambda, 0): singular at +1
    GaussRule legendre;
  };

 private:
  std::vector<double> cuts_for(double u, double rt) const;

  GeneratingFunction psi_;
  int order_;
  double theta_;
  double lambda_;
  Rules rules_;
};

PairValue eval_weak_entropy_pair(const EntropyPair& pair, double rho, double m);

/// (eta*, q*): mechanical energy and its flux for p = kappa rho^gamma.
class MechanicalEnergyPair : public PairEvaluator {
 public:
  explicit MechanicalEnergyPair(const GasModel& model) : model_(model) {}
  std::string name() const override { return "mechanical_energy"; }
  PairValue value(double rho, double m) const override;
  PairGradient gradient(double rho, double m) const override;

 private:
  GasModel model_;
};

PairValue mechanical_energy_pair(const GasModel& model, double rho, double m);

/// The psi = s|s|/2 pair with its value and gradient at (rho_bar, 0) removed:
///   eta~ = eta - grad eta(rho_bar,0).(rho - rho_bar, m)
///   q~   = q   - grad eta(rho_bar,0).(m, m^2/rho + p(rho)).
class ShiftedEntropyPair : public PairEvaluator {
 public:
  ShiftedEntropyPair(const GasModel& model, double rho_bar, int quadrature_order = 24);
  std::string name() const override { return "shifted_half_s_abs_s"; }
  PairValue value(double rho, double m) const override;
  PairGradient gradient(double rho, double m) const override;

  const EntropyPair& base() const noexcept { return base_; }
  PairGradient equilibrium_gradient() const noexcept { return shift_; }
  double rho_bar() const noexcept { return rho_bar_; }

 private:
  GasModel model_;
  double rho_bar_;
  EntropyPair base_;
  PairGradient shift_;
};

PairValue shifted_entropy_pair(const GasModel& model, double rho_bar, double rho, double m);

/// Wraps arbitrary callables, e.g. to build deliberately broken pairs.
class FunctionPair : public PairEvaluator {
 public:
  FunctionPair(std::string name, std::function<PairValue(double, double)> f)
      : name_(std::move(name)), f_(std::move(f)) {}
  std::string name() const override { return name_; }
  PairValue value(double rho, double m) const override { return f_(rho, m); }

 private:
  std::string name_;
  std::function<PairValue(double, double)> f_;
};

struct StatePoint {
  double rho;
  double m;
};

/// Tensor grid of states with rho log-spaced in [rho_lo, rho_hi] and u uniform in [-u_max, u_max].
std::vector<StatePoint> state_box(double rho_lo, double rho_hi, double u_max, int n_rho, int n_u);

struct ResidualStats {
  double max = 0.0;
  double mean = 0.0;
  StatePoint argmax{0.0, 0.0};
  std::size_t samples = 0;
};

/// Central-difference residual of grad q = grad eta . grad F with the Euler flux
/// F = (m, m^2/rho + kappa rho^gamma). Steps are h_fd * rho and h_fd * max(|m|, rho).
ResidualStats entropy_pde_residual(const PairEvaluator& pair, const GasModel& model,
                                   const std::vector<StatePoint>& samples, double h_fd = 1e-5);

/// Central-difference Hessian of eta, as [eta_rr, eta_rm, eta_mm].
std::array<double, 3> eta_hessian(const PairEvaluator& pair, double rho, double m, double h_fd = 1e-4);

/// Exact Hessian of the mechanical energy eta* for p = kappa rho^gamma.
std::array<double, 3> mechanical_energy_hessian(const GasModel& model, double rho, double m);

}  // namespace radeuler

#endif  // RADEULER_ENTROPY_HPP
