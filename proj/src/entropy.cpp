#include "radeuler/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "radeuler/errors.hpp"

namespace radeuler {

namespace {

using Rules = EntropyPair::Rules;

template <std::size_t K>
using Vec = std::array<double, K>;

template <std::size_t K>
void axpy(Vec<K>& acc, double w, const Vec<K>& v) {
  for (std::size_t k = 0; k < K; ++k) acc[k] += w * v[k];
}

double weight(double lambda, double xi) { return std::pow((1.0 - xi) * (1.0 + xi), lambda); }

// int_lo^hi f(sign*xi) (1-xi^2)^lambda dxi for 0 <= lo < hi <= 1.
template <std::size_t K, class F>
Vec<K> integrate_half(const Rules& rules, const F& f, double sign, double lo, double hi) {
  Vec<K> acc{};
  if (!(hi > lo)) return acc;
  const double lam = rules.lambda;
  auto legendre_piece = [&](double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const GaussRule& g = rules.legendre;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double xi = c + h * g.nodes[i];
      axpy(acc, h * g.weights[i] * weight(lam, xi), f(sign * xi));
    }
  };
  if (rules.polynomial_weight) {
    legendre_piece(lo, hi);
    return acc;
  }
  if (hi == 1.0) {
    // (1 - xi) = h (1 - x) goes into the Jacobi(lambda, 0) weight.
    const double c = 0.5 * (lo + 1.0);
    const double h = 0.5 * (1.0 - lo);
    const double scale = h * std::pow(h, lam);
    const GaussRule& g = rules.right;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double xi = c + h * g.nodes[i];
      axpy(acc, scale * g.weights[i] * std::pow(1.0 + xi, lam), f(sign * xi));
    }
    return acc;
  }
  // Grade geometrically toward the singularity at 1 so no piece is longer than its
  // distance to it.
  double upper = hi;
  while (upper > lo) {
    const double d = 1.0 - upper;
    const double lower = (upper - lo <= d) ? lo : std::max(lo, 1.0 - 2.0 * d);
    legendre_piece(lower, upper);
    upper = lower;
  }
  return acc;
}

template <std::size_t K, class F>
Vec<K> integrate_piece(const Rules& rules, const F& f, double lo, double hi) {
  Vec<K> acc{};
  if (!(hi > lo)) return acc;
  if (lo == -1.0 && hi == 1.0 && !rules.polynomial_weight) {
    const GaussRule& g = rules.symmetric;
    for (std::size_t i = 0; i < g.size(); ++i) axpy(acc, g.weights[i], f(g.nodes[i]));
    return acc;
  }
  if (lo < 0.0 && hi > 0.0) {
    acc = integrate_piece<K>(rules, f, lo, 0.0);
    axpy(acc, 1.0, integrate_piece<K>(rules, f, 0.0, hi));
    return acc;
  }
  if (hi <= 0.0) return integrate_half<K>(rules, f, -1.0, -hi, -lo);
  return integrate_half<K>(rules, f, 1.0, lo, hi);
}

template <std::size_t K, class F>
Vec<K> kernel_integrate(const Rules& rules, const F& f, const std::vector<double>& cuts) {
  Vec<K> acc{};
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    axpy(acc, 1.0, integrate_piece<K>(rules, f, cuts[j], cuts[j + 1]));
  }
  return acc;
}

bool is_nonnegative_integer(double x) { return x >= 0.0 && std::floor(x) == x; }

}  // namespace

GeneratingFunction GeneratingFunction::one() {
  GeneratingFunction g;
  g.name = "one";
  g.psi = [](double) { return 1.0; };
  g.dpsi = [](double) { return 0.0; };
  g.d2psi = [](double) { return 0.0; };
  g.convex = true;
  g.subquadratic = true;
  g.sup_abs_d2psi = 0.0;
  return g;
}

GeneratingFunction GeneratingFunction::s() {
  GeneratingFunction g;
  g.name = "s";
  g.psi = [](double s) { return s; };
  g.dpsi = [](double) { return 1.0; };
  g.d2psi = [](double) { return 0.0; };
  g.convex = true;
  g.subquadratic = true;
  g.sup_abs_d2psi = 0.0;
  return g;
}

GeneratingFunction GeneratingFunction::half_s2() {
  GeneratingFunction g;
  g.name = "half_s2";
  g.psi = [](double s) { return 0.5 * s * s; };
  g.dpsi = [](double s) { return s; };
  g.d2psi = [](double) { return 1.0; };
  g.convex = true;
  g.subquadratic = true;
  g.sup_abs_d2psi = 1.0;
  return g;
}

GeneratingFunction GeneratingFunction::half_s_abs_s() {
  GeneratingFunction g;
  g.name = "half_s_abs_s";
  g.psi = [](double s) { return 0.5 * s * std::abs(s); };
  g.dpsi = [](double s) { return std::abs(s); };
  g.d2psi = [](double s) { return s > 0.0 ? 1.0 : (s < 0.0 ? -1.0 : 0.0); };
  g.kinks = {0.0};
  g.convex = false;
  g.subquadratic = true;
  g.sup_abs_d2psi = 1.0;
  return g;
}

GeneratingFunction GeneratingFunction::sqrt_1_s2() {
  GeneratingFunction g;
  g.name = "sqrt_1_s2";
  g.psi = [](double s) { return std::sqrt(1.0 + s * s); };
  g.dpsi = [](double s) { return s / std::sqrt(1.0 + s * s); };
  g.d2psi = [](double s) { return std::pow(1.0 + s * s, -1.5); };
  g.analytic_scale = 1.0;  // branch points at +-i
  g.convex = true;
  g.subquadratic = true;
  g.sup_abs_d2psi = 1.0;
  return g;
}

GeneratingFunction GeneratingFunction::bump() {
  GeneratingFunction g;
  g.name = "bump";
  g.psi = [](double s) {
    const double t = 1.0 - s * s;
    return t > 0.0 ? std::exp(-1.0 / t) : 0.0;
  };
  g.dpsi = [](double s) {
    const double t = 1.0 - s * s;
    return t > 0.0 ? std::exp(-1.0 / t) * (-2.0 * s / (t * t)) : 0.0;
  };
  g.d2psi = [](double s) {
    const double t = 1.0 - s * s;
    if (!(t > 0.0)) return 0.0;
    const double t2 = t * t;
    return std::exp(-1.0 / t) * (4.0 * s * s / (t2 * t2) - 2.0 / t2 - 8.0 * s * s / (t2 * t));
  };
  g.kinks = {-1.0, 1.0};
  g.analytic_scale = 0.125;
  g.convex = false;
  g.subquadratic = true;
  double sup = 0.0;
  for (int i = 0; i <= 20000; ++i) sup = std::max(sup, std::abs(g.d2psi(-1.0 + i * 1e-4)));
  g.sup_abs_d2psi = sup;
  return g;
}

std::vector<std::string> GeneratingFunction::catalog() {
  return {"one", "s", "half_s2", "half_s_abs_s", "sqrt_1_s2", "bump"};
}

GeneratingFunction GeneratingFunction::by_name(const std::string& name) {
  if (name == "one") return one();
  if (name == "s") return s();
  if (name == "half_s2") return half_s2();
  if (name == "half_s_abs_s") return half_s_abs_s();
  if (name == "sqrt_1_s2") return sqrt_1_s2();
  if (name == "bump") return bump();
  throw ConfigError("unknown generating function '" + name +
                    "' (known: one, s, half_s2, half_s_abs_s, sqrt_1_s2, bump)");
}

KernelMoments KernelMoments::of(double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("kernel exponent lambda must be nonnegative");
  const double c = std::exp(0.5 * std::log(M_PI) + std::lgamma(lambda + 1.0) - std::lgamma(lambda + 1.5));
  return {c, c / (2.0 * lambda + 3.0)};
}

PairGradient PairEvaluator::gradient(double rho, double m) const {
  const double hr = 1e-6 * rho;
  const double hm = 1e-6 * std::max(std::abs(m), rho);
  const double er = (value(rho + hr, m).eta - value(rho - hr, m).eta) / (2.0 * hr);
  const double em = (value(rho, m + hm).eta - value(rho, m - hm).eta) / (2.0 * hm);
  return {er, em};
}

EntropyPair::EntropyPair(GeneratingFunction psi, const GasModel& model, int quadrature_order)
    : psi_(std::move(psi)),
      order_(quadrature_order),
      theta_(model.theta()),
      lambda_(model.lambda()) {
  if (quadrature_order < 2) throw ConfigError("entropy quadrature order must be at least 2");
  if (!psi_.psi || !psi_.dpsi) throw ConfigError("generating function needs psi and psi'");
  rules_.lambda = lambda_;
  rules_.polynomial_weight = is_nonnegative_integer(lambda_);
  rules_.legendre = gauss_legendre(order_);
  if (!rules_.polynomial_weight) {
    rules_.symmetric = gauss_jacobi(order_, lambda_, lambda_);
    rules_.left = gauss_jacobi(order_, 0.0, lambda_);
    rules_.right = gauss_jacobi(order_, lambda_, 0.0);
  }
}

std::vector<double> EntropyPair::cuts_for(double u, double rt) const {
  std::vector<double> cuts{-1.0, 1.0};
  if (rt > 0.0) {
    for (double k : psi_.kinks) {
      const double xi = (k - u) / rt;
      if (xi > -1.0 && xi < 1.0) cuts.push_back(xi);
    }
    if (psi_.analytic_scale) {
      const int panels = std::min(256, static_cast<int>(std::ceil(2.0 * rt / *psi_.analytic_scale)));
      for (int j = 1; j < panels; ++j) cuts.push_back(-1.0 + 2.0 * j / panels);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double x, double y) { return y - x < 1e-15; }),
             cuts.end());
  if (cuts.back() != 1.0) cuts.back() = 1.0;
  return cuts;
}

PairValue EntropyPair::value(double rho, double m) const {
  if (!(rho >= 0.0)) throw DomainError("entropy pair: density must be nonnegative");
  if (rho == 0.0) return {0.0, 0.0};
  const double u = m / rho;
  const double rt = std::pow(rho, theta_);
  const auto& psi = psi_.psi;
  const double th = theta_;
  auto f = [&](double xi) -> Vec<2> {
    const double p = psi(u + rt * xi);
    return {p, (u + th * rt * xi) * p};
  };
  const Vec<2> I = kernel_integrate<2>(rules_, f, cuts_for(u, rt));
  return {rho * I[0], rho * I[1]};
}

PairGradient EntropyPair::gradient(double rho, double m) const {
  if (!(rho >= 0.0)) throw DomainError("entropy pair: density must be nonnegative");
  const double u = rho > 0.0 ? m / rho : 0.0;
  const double rt = std::pow(rho, theta_);
  const auto& psi = psi_.psi;
  const auto& dpsi = psi_.dpsi;
  const double th = theta_;
  auto f = [&](double xi) -> Vec<2> {
    const double v = u + rt * xi;
    const double d = dpsi(v);
    return {psi(v) + d * (th * rt * xi - u), d};
  };
  const Vec<2> I = kernel_integrate<2>(rules_, f, cuts_for(u, rt));
  return {I[0], I[1]};
}

PairValue eval_weak_entropy_pair(const EntropyPair& pair, double rho, double m) {
  return pair.value(rho, m);
}

PairValue MechanicalEnergyPair::value(double rho, double m) const {
  return mechanical_energy_pair(model_, rho, m);
}

PairGradient MechanicalEnergyPair::gradient(double rho, double m) const {
  if (!(rho > 0.0)) throw DomainError("mechanical energy gradient needs positive density");
  const double g = model_.gamma();
  const double k = model_.kappa();
  const double u = m / rho;
  return {-0.5 * u * u + k * g / (g - 1.0) * std::pow(rho, g - 1.0), u};
}

PairValue mechanical_energy_pair(const GasModel& model, double rho, double m) {
  if (!(rho >= 0.0)) throw DomainError("mechanical energy: density must be nonnegative");
  if (rho == 0.0) return {0.0, 0.0};
  const double g = model.gamma();
  const double k = model.kappa();
  const double eta = 0.5 * m * m / rho + k * std::pow(rho, g) / (g - 1.0);
  const double q = 0.5 * m * m * m / (rho * rho) + k * g / (g - 1.0) * m * std::pow(rho, g - 1.0);
  return {eta, q};
}

ShiftedEntropyPair::ShiftedEntropyPair(const GasModel& model, double rho_bar, int quadrature_order)
    : model_(model),
      rho_bar_(rho_bar),
      base_(GeneratingFunction::half_s_abs_s(), model, quadrature_order),
      shift_{} {
  if (!(rho_bar > 0.0)) throw DomainError("shifted pair needs a positive equilibrium density");
  shift_ = base_.gradient(rho_bar, 0.0);
}

PairValue ShiftedEntropyPair::value(double rho, double m) const {
  const PairValue v = base_.value(rho, m);
  const double flux = (rho > 0.0 ? m * m / rho : 0.0) + model_.pressure_euler(rho);
  return {v.eta - shift_.eta_rho * (rho - rho_bar_) - shift_.eta_m * m,
          v.q - shift_.eta_rho * m - shift_.eta_m * flux};
}

PairGradient ShiftedEntropyPair::gradient(double rho, double m) const {
  const PairGradient g = base_.gradient(rho, m);
  return {g.eta_rho - shift_.eta_rho, g.eta_m - shift_.eta_m};
}

PairValue shifted_entropy_pair(const GasModel& model, double rho_bar, double rho, double m) {
  return ShiftedEntropyPair(model, rho_bar).value(rho, m);
}

std::vector<StatePoint> state_box(double rho_lo, double rho_hi, double u_max, int n_rho, int n_u) {
  std::vector<StatePoint> pts;
  pts.reserve(static_cast<std::size_t>(n_rho) * n_u);
  const double l0 = std::log(rho_lo);
  const double l1 = std::log(rho_hi);
  for (int i = 0; i < n_rho; ++i) {
    const double rho = n_rho == 1 ? rho_lo : std::exp(l0 + (l1 - l0) * i / (n_rho - 1));
    for (int j = 0; j < n_u; ++j) {
      const double u = n_u == 1 ? 0.0 : -u_max + 2.0 * u_max * j / (n_u - 1);
      pts.push_back({rho, rho * u});
    }
  }
  return pts;
}

ResidualStats entropy_pde_residual(const PairEvaluator& pair, const GasModel& model,
                                   const std::vector<StatePoint>& samples, double h_fd) {
  ResidualStats stats;
  double sum = 0.0;
  for (const auto& pt : samples) {
    if (!(pt.rho > 0.0)) throw DomainError("entropy residual samples need positive density");
    const double hr = h_fd * pt.rho;
    const double hm = h_fd * std::max(std::abs(pt.m), pt.rho);
    const PairValue rp = pair.value(pt.rho + hr, pt.m);
    const PairValue rm = pair.value(pt.rho - hr, pt.m);
    const PairValue mp = pair.value(pt.rho, pt.m + hm);
    const PairValue mm = pair.value(pt.rho, pt.m - hm);
    const double eta_r = (rp.eta - rm.eta) / (2.0 * hr);
    const double eta_m = (mp.eta - mm.eta) / (2.0 * hm);
    const double q_r = (rp.q - rm.q) / (2.0 * hr);
    const double q_m = (mp.q - mm.q) / (2.0 * hm);
    const double u = pt.m / pt.rho;
    const double dp = model.dpressure_euler(pt.rho);
    const double r1 = q_r - eta_m * (dp - u * u);
    const double r2 = q_m - eta_r - 2.0 * u * eta_m;
    const double res = std::hypot(r1, r2);
    sum += res;
    if (res > stats.max || stats.samples == 0) {
      stats.max = res;
      stats.argmax = pt;
    }
    ++stats.samples;
  }
  stats.mean = stats.samples ? sum / static_cast<double>(stats.samples) : 0.0;
  return stats;
}

std::array<double, 3> eta_hessian(const PairEvaluator& pair, double rho, double m, double h_fd) {
  const double hr = h_fd * rho;
  const double hm = h_fd * std::max(std::abs(m), rho);
  auto e = [&](double r, double mm) { return pair.value(r, mm).eta; };
  const double e0 = e(rho, m);
  const double err = (e(rho + hr, m) - 2.0 * e0 + e(rho - hr, m)) / (hr * hr);
  const double emm = (e(rho, m + hm) - 2.0 * e0 + e(rho, m - hm)) / (hm * hm);
  const double erm = (e(rho + hr, m + hm) - e(rho + hr, m - hm) - e(rho - hr, m + hm) +
                      e(rho - hr, m - hm)) /
                     (4.0 * hr * hm);
  return {err, erm, emm};
}

std::array<double, 3> mechanical_energy_hessian(const GasModel& model, double rho, double m) {
  if (!(rho > 0.0)) throw DomainError("mechanical energy Hessian needs positive density");
  const double g = model.gamma();
  return {m * m / (rho * rho * rho) + model.kappa() * g * std::pow(rho, g - 2.0), -m / (rho * rho),
          1.0 / rho};
}

}  // namespace radeuler
