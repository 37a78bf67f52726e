#include "radeuler/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "radeuler/errors.hpp"
#include "radeuler/quadrature.hpp"

namespace radeuler {

namespace {

void require_nonnegative(double rho, const char* what) {
  if (!(rho >= 0.0)) throw DomainError(std::string(what) + ": density must be nonnegative");
}

void require_positive(double rho, const char* what) {
  if (!(rho > 0.0)) throw DomainError(std::string(what) + ": density must be positive");
}

}  // namespace

GasModel::GasModel(double gamma, double kappa, double delta, int n_dim)
    : gamma_(gamma), kappa_(kappa), delta_(delta), n_dim_(n_dim), kappa_normalized_(false) {
  if (!(gamma > 1.0 && gamma <= 3.0)) throw ConfigError("model.gamma must lie in (1, 3]");
  if (!(kappa > 0.0)) throw ConfigError("model.kappa must be positive");
  if (!(delta >= 0.0)) throw ConfigError("model.delta must be nonnegative");
  if (n_dim < 2) throw ConfigError("model.n must be at least 2");
  kappa_normalized_ = kappa == normalized_kappa(gamma);
}

GasModel GasModel::normalized(double gamma, double delta, int n_dim) {
  if (!(gamma > 1.0 && gamma <= 3.0)) throw ConfigError("model.gamma must lie in (1, 3]");
  return GasModel(gamma, normalized_kappa(gamma), delta, n_dim);
}

GasModel GasModel::with_delta(double delta) const { return GasModel(gamma_, kappa_, delta, n_dim_); }

double GasModel::pressure(double rho) const {
  require_nonnegative(rho, "pressure");
  return kappa_ * std::pow(rho, gamma_) + delta_ * rho * rho;
}

double GasModel::dpressure(double rho) const {
  require_nonnegative(rho, "pressure derivative");
  return kappa_ * gamma_ * std::pow(rho, gamma_ - 1.0) + 2.0 * delta_ * rho;
}

double GasModel::pressure_euler(double rho) const {
  require_nonnegative(rho, "pressure");
  return kappa_ * std::pow(rho, gamma_);
}

double GasModel::dpressure_euler(double rho) const {
  require_nonnegative(rho, "pressure derivative");
  return kappa_ * gamma_ * std::pow(rho, gamma_ - 1.0);
}

double GasModel::internal_energy(double rho) const {
  require_nonnegative(rho, "internal energy");
  return kappa_ * std::pow(rho, gamma_) / (gamma_ - 1.0) + delta_ * rho * rho;
}

double GasModel::dinternal_energy(double rho) const {
  require_nonnegative(rho, "internal energy");
  return kappa_ * gamma_ * std::pow(rho, gamma_ - 1.0) / (gamma_ - 1.0) + 2.0 * delta_ * rho;
}

double GasModel::d2internal_energy(double rho) const {
  require_positive(rho, "internal energy");
  return kappa_ * gamma_ * std::pow(rho, gamma_ - 2.0) + 2.0 * delta_;
}

double GasModel::riemann_R(double rho) const {
  require_nonnegative(rho, "riemann invariant");
  if (delta_ == 0.0) {
    // int_0^rho sqrt(kappa gamma) s^(theta-1) ds
    return std::sqrt(kappa_ * gamma_) * std::pow(rho, theta()) / theta();
  }
  return riemann_R_quadrature(rho);
}

double GasModel::riemann_R_quadrature(double rho) const {
  require_nonnegative(rho, "riemann invariant");
  if (rho == 0.0) return 0.0;
  // s = rho v^p removes the s^(alpha-1) endpoint singularity, alpha = min(theta, 1/2)
  // when delta > 0 and alpha = theta otherwise.
  const double alpha = delta_ > 0.0 ? std::min(theta(), 0.5) : theta();
  const double p = 2.0 / alpha;
  const double kg = kappa_ * gamma_;
  const double gm1 = gamma_ - 1.0;
  auto integrand = [&](double v) {
    if (v <= 0.0) return 0.0;
    const double s = rho * std::pow(v, p);
    const double g = std::sqrt(kg * std::pow(s, gm1) + 2.0 * delta_ * s);
    return g * p / v;
  };
  return integrate_adaptive(integrand, 0.0, 1.0, 1e-12);
}

PressureValue pressure_delta(const GasModel& model, double rho) {
  return {model.pressure(rho), model.dpressure(rho)};
}

RiemannInvariants riemann_invariants(const GasModel& model, double rho, double m) {
  require_positive(rho, "riemann_invariants");
  const double u = m / rho;
  const double R = model.riemann_R(rho);
  const double c = model.sound_speed(rho);
  return {u + R, u - R, u - c, u + c};
}

double relative_internal_energy(const GasModel& model, double rho_bar, double rho) {
  require_positive(rho_bar, "relative energy (rho_bar)");
  require_nonnegative(rho, "relative energy");
  return model.internal_energy(rho) - model.internal_energy(rho_bar) -
         model.dinternal_energy(rho_bar) * (rho - rho_bar);
}

double relative_energy_density(const GasModel& model, double rho_bar, double rho, double m) {
  require_positive(rho, "relative_energy_density");
  return 0.5 * m * m / rho + relative_internal_energy(model, rho_bar, rho);
}

double energy_lower_bound_constant(const GasModel& model, double rho_bar, double rho_lo,
                                   double rho_hi, int samples) {
  if (!(rho_lo > 0.0 && rho_hi > rho_lo)) throw DomainError("energy_lower_bound_constant: bad range");
  const double theta = model.theta();
  const double rbt = std::pow(rho_bar, theta);
  auto ratio = [&](double rho) {
    const double d = std::pow(rho, theta) - rbt;
    return relative_internal_energy(model, rho_bar, rho) / (rho * d * d);
  };
  // Limit at rho = rho_bar from the second-order expansions of both sides.
  const double at_equilibrium = 0.5 * model.d2internal_energy(rho_bar) /
                                (theta * theta * std::pow(rho_bar, 2.0 * theta - 1.0));

  const double log_lo = std::log(rho_lo);
  const double log_hi = std::log(rho_hi);
  double best = std::numeric_limits<double>::infinity();
  int best_index = -1;
  std::vector<double> xs(samples);
  for (int i = 0; i < samples; ++i) {
    xs[i] = std::exp(log_lo + (log_hi - log_lo) * i / (samples - 1));
  }
  for (int i = 0; i < samples; ++i) {
    if (std::abs(xs[i] / rho_bar - 1.0) < 1e-4) continue;
    const double v = ratio(xs[i]);
    if (v < best) {
      best = v;
      best_index = i;
    }
  }
  if (rho_bar > rho_lo && rho_bar < rho_hi && at_equilibrium < best) return at_equilibrium;
  if (best_index < 0) return at_equilibrium;

  // Golden-section refinement in log(rho) between the neighbours of the grid minimum.
  double lo = std::log(xs[std::max(best_index - 1, 0)]);
  double hi = std::log(xs[std::min(best_index + 1, samples - 1)]);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  auto f = [&](double x) {
    const double rho = std::exp(x);
    if (std::abs(rho / rho_bar - 1.0) < 1e-4) return at_equilibrium;
    return ratio(rho);
  };
  double x1 = hi - g * (hi - lo);
  double x2 = lo + g * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    }
  }
  return std::min({best, f1, f2});
}

double PowerRule::operator()(double eps) const { return coef * std::pow(eps, power); }

ScalingPlan::ScalingPlan(std::vector<double> ladder, Exponent k1, Exponent k2, PowerRule a_rule,
                         PowerRule b_rule, double budget, const GasModel& model)
    : ladder_(std::move(ladder)),
      k1_excess_(0.0),
      k2_excess_(0.0),
      a_rule_(a_rule),
      b_rule_(b_rule),
      budget_(budget),
      n_(model.n_dim()),
      gamma_(model.gamma()) {
  std::vector<std::string> errors;
  if (ladder_.empty()) errors.emplace_back("plan.ladder must contain at least one epsilon");
  for (std::size_t i = 0; i < ladder_.size(); ++i) {
    if (!(ladder_[i] > 0.0 && ladder_[i] <= 1.0)) {
      errors.emplace_back("plan.ladder[" + std::to_string(i) + "] must lie in (0, 1]");
    }
    if (i > 0 && !(ladder_[i] < ladder_[i - 1])) {
      errors.emplace_back("plan.ladder must be strictly decreasing (entry " + std::to_string(i) + ")");
    }
  }
  if (k1.value) {
    k1_excess_ = *k1.value - n_;
    if (k1_excess_ < 0.0) {
      errors.emplace_back("plan.k1 = " + std::to_string(*k1.value) +
                          " violates the scaling-budget constraint k1 >= n (n = " +
                          std::to_string(model.n_dim()) + ")");
    }
  }
  if (k2.value) {
    k2_excess_ = *k2.value - n_ / gamma_;
    if (k2_excess_ < 0.0) {
      errors.emplace_back("plan.k2 = " + std::to_string(*k2.value) +
                          " violates the scaling-budget constraint k2 >= n/gamma (= " +
                          std::to_string(n_ / gamma_) + ")");
    }
  }
  if (!(a_rule_.coef > 0.0 && a_rule_.power > 0.0)) {
    errors.emplace_back("plan.a_rule needs coef > 0 and power > 0 so that a(eps) -> 0");
  }
  if (!(b_rule_.coef > 0.0 && b_rule_.power < 0.0)) {
    errors.emplace_back("plan.b_rule needs coef > 0 and power < 0 so that b(eps) -> infinity");
  }
  if (!(budget_ > 0.0)) errors.emplace_back("plan.M_budget must be positive");
  if (errors.empty()) {
    for (double eps : ladder_) {
      const double a = a_rule_(eps);
      const double b = b_rule_(eps);
      if (!(a > 0.0 && a < 1.0 && b > 1.0)) {
        errors.emplace_back("plan: epsilon = " + std::to_string(eps) + " gives a = " +
                            std::to_string(a) + ", b = " + std::to_string(b) +
                            "; need 0 < a < 1 < b");
      }
    }
  }
  if (!errors.empty()) throw ConfigError(errors);
}

double ScalingPlan::delta(double eps) const { return eps * std::pow(b(eps), -k1()); }

double ScalingPlan::rho_bar(double eps) const { return std::pow(b(eps), -k2()); }

double ScalingPlan::budget_value(double eps) const {
  // rho_bar^gamma b^n = b^(n - gamma k2) = b^(-gamma k2_excess); (delta/eps) b^n = b^(-k1_excess).
  const double bb = b(eps);
  return std::pow(bb, -gamma_ * k2_excess_) + std::pow(bb, -k1_excess_);
}

ScalingPlan ScalingPlan::truncated(std::size_t levels) const {
  ScalingPlan copy = *this;
  if (levels == 0) throw ConfigError("--levels must be at least 1");
  if (levels < copy.ladder_.size()) copy.ladder_.resize(levels);
  return copy;
}

BudgetReport validate_scaling_plan(const ScalingPlan& plan, const GasModel& model) {
  (void)model;
  BudgetReport report;
  for (double eps : plan.ladder()) {
    BudgetLevel level{eps,           plan.a(eps),         plan.b(eps), plan.delta(eps),
                      plan.rho_bar(eps), plan.budget_value(eps), false};
    level.pass = level.value <= plan.budget() && level.a > 0.0 && level.a < 1.0 && level.b > 1.0;
    report.all_pass = report.all_pass && level.pass;
    report.levels.push_back(level);
  }
  return report;
}

RadialGrid::RadialGrid(double a, double b, std::size_t cells) : a_(a), b_(b), cells_(cells), h_(0.0) {
  if (!(a > 0.0 && a < 1.0 && b > 1.0)) throw ConfigError("grid needs 0 < a < 1 < b");
  if (cells < 2) throw ConfigError("grid needs at least two cells");
  h_ = (b - a) / static_cast<double>(cells);
}

std::vector<double> RadialGrid::radii() const {
  std::vector<double> r(nodes());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = this->r(i);
  return r;
}

State::State(RadialGrid grid_, double t_, std::vector<double> rho_, std::vector<double> m_)
    : grid(grid_), t(t_), rho(std::move(rho_)), m(std::move(m_)) {
  if (rho.size() != grid.nodes() || m.size() != grid.nodes()) {
    throw DomainError("state arrays must have one entry per grid node");
  }
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!(rho[i] > 0.0)) throw PositivityError(i, t, rho[i]);
  }
}

}  // namespace radeuler
