#include "radeuler/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "radeuler/errors.hpp"
#include "radeuler/grid_ops.hpp"

namespace radeuler {

namespace {

// exp(1 - 1/(1 - y^2)) on |y| < 1: peak value 1 at y = 0.
double bump_value(double y) {
  const double s = 1.0 - y * y;
  return s > 0.0 ? std::exp(1.0 - 1.0 / s) : 0.0;
}

double bump_slope(double y) {
  const double s = 1.0 - y * y;
  return s > 0.0 ? bump_value(y) * (-2.0 * y / (s * s)) : 0.0;
}

double expneg(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
double expneg_slope(double x) { return x > 0.0 ? std::exp(-1.0 / x) / (x * x) : 0.0; }

double time_factor(const TestFunction::Term& k, double t, bool derivative) {
  if (k.time_shape == TestFunction::TimeShape::bump) {
    const double y = (2.0 * t - k.t0 - k.t1) / (k.t1 - k.t0);
    return derivative ? bump_slope(y) * 2.0 / (k.t1 - k.t0) : bump_value(y);
  }
  const double s = 1.0 / (k.t1 - k.t0);
  const double A = expneg((k.t1 - t) * s);
  const double B = expneg((t - k.t0) * s);
  if (!derivative) return A / (A + B);
  const double dA = -expneg_slope((k.t1 - t) * s) * s;
  const double dB = expneg_slope((t - k.t0) * s) * s;
  return (dA * B - A * dB) / ((A + B) * (A + B));
}

double space_factor(const TestFunction::Term& k, double r, bool derivative) {
  if (k.space_shape == TestFunction::SpaceShape::bump) {
    const double y = (2.0 * r - k.r0 - k.r1) / (k.r1 - k.r0);
    return derivative ? bump_slope(y) * 2.0 / (k.r1 - k.r0) : bump_value(y);
  }
  const double y = r / k.r1;
  return derivative ? bump_slope(y) / k.r1 : bump_value(y);
}

std::vector<double> snapshot_times(const Trajectory& traj) {
  std::vector<double> t;
  t.reserve(traj.snapshots.size());
  for (const auto& s : traj.snapshots) t.push_back(s.t);
  return t;
}

double relative_energy(const GasModel& model, double rho_bar, const State& s, const std::vector<double>& w) {
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) acc += w[i] * relative_energy_density(model, rho_bar, s.rho[i], s.m[i]);
  return acc;
}

// r^(n-1) dr measure of {rho > level} for the piecewise linear interpolant.
double superlevel_measure(const State& s, double level, int n_dim) {
  const RadialGrid& g = s.grid;
  double acc = 0.0;
  auto cell_measure = [&](double r0, double r1) {
    return (std::pow(r1, n_dim) - std::pow(r0, n_dim)) / n_dim;
  };
  for (std::size_t i = 0; i < g.cells(); ++i) {
    const double f0 = s.rho[i] - level;
    const double f1 = s.rho[i + 1] - level;
    const double r0 = g.r(i);
    const double r1 = g.r(i + 1);
    if (f0 > 0.0 && f1 > 0.0) {
      acc += cell_measure(r0, r1);
    } else if (f0 > 0.0 || f1 > 0.0) {
      const double rc = r0 + (r1 - r0) * f0 / (f0 - f1);
      acc += f0 > 0.0 ? cell_measure(r0, rc) : cell_measure(rc, r1);
    }
  }
  return acc;
}

void require_window(const Trajectory& traj, const Window& K) {
  const RadialGrid& g = traj.snapshots.front().grid;
  if (!(K.r_lo > g.a() && K.r_hi < g.b() && K.r_lo < K.r_hi)) {
    std::ostringstream msg;
    msg << "window K = [" << K.r_lo << ", " << K.r_hi << "] must lie compactly inside (a, b) = (" << g.a()
        << ", " << g.b() << ")";
    throw ConfigError(msg.str());
  }
}

}  // namespace

TestFunction TestFunction::bump(double t0, double t1, double r0, double r1, double amplitude) {
  if (!(t1 > t0 && t0 >= 0.0 && r1 > r0 && r0 >= 0.0)) throw ConfigError("test function: bad bump support");
  TestFunction f;
  f.terms_.push_back({amplitude, TimeShape::bump, t0, t1, SpaceShape::bump, r0, r1});
  return f;
}

TestFunction TestFunction::initial_cutoff(double t0, double t1, double r0, double r1, double amplitude) {
  if (!(t1 > t0 && t0 >= 0.0 && r1 > r0 && r0 >= 0.0)) throw ConfigError("test function: bad cutoff support");
  TestFunction f;
  f.terms_.push_back({amplitude, TimeShape::cutoff, t0, t1, SpaceShape::bump, r0, r1});
  return f;
}

TestFunction TestFunction::centered(double t0, double t1, double R, double amplitude) {
  if (!(t1 > t0 && t0 >= 0.0 && R > 0.0)) throw ConfigError("test function: bad centered support");
  TestFunction f;
  f.terms_.push_back({amplitude, TimeShape::bump, t0, t1, SpaceShape::centered, 0.0, R});
  return f;
}

TestFunction TestFunction::operator+(const TestFunction& other) const {
  TestFunction f = *this;
  f.terms_.insert(f.terms_.end(), other.terms_.begin(), other.terms_.end());
  return f;
}

TestFunction TestFunction::operator*(double c) const {
  TestFunction f = *this;
  for (auto& k : f.terms_) k.coef *= c;
  return f;
}

double TestFunction::value(double t, double r) const {
  double acc = 0.0;
  for (const auto& k : terms_) acc += k.coef * time_factor(k, t, false) * space_factor(k, r, false);
  return acc;
}

double TestFunction::dt(double t, double r) const {
  double acc = 0.0;
  for (const auto& k : terms_) acc += k.coef * time_factor(k, t, true) * space_factor(k, r, false);
  return acc;
}

double TestFunction::dr(double t, double r) const {
  double acc = 0.0;
  for (const auto& k : terms_) acc += k.coef * time_factor(k, t, false) * space_factor(k, r, true);
  return acc;
}

double TestFunction::sup_abs() const {
  double acc = 0.0;
  for (const auto& k : terms_) acc += std::abs(k.coef);
  return acc;
}

double TestFunction::t_min() const {
  double v = std::numeric_limits<double>::infinity();
  for (const auto& k : terms_) v = std::min(v, k.time_shape == TimeShape::cutoff ? 0.0 : k.t0);
  return v;
}

double TestFunction::t_max() const {
  double v = -std::numeric_limits<double>::infinity();
  for (const auto& k : terms_) v = std::max(v, k.t1);
  return v;
}

double TestFunction::r_min() const {
  double v = std::numeric_limits<double>::infinity();
  for (const auto& k : terms_) v = std::min(v, k.space_shape == SpaceShape::centered ? 0.0 : k.r0);
  return v;
}

double TestFunction::r_max() const {
  double v = -std::numeric_limits<double>::infinity();
  for (const auto& k : terms_) v = std::max(v, k.r1);
  return v;
}

bool TestFunction::derivative_vanishes_at_origin() const {
  for (const auto& k : terms_) {
    const double d0 = space_factor(k, 0.0, true);
    const double fd = (space_factor(k, 1e-6, false) - space_factor(k, -1e-6, false)) / 2e-6;
    if (std::abs(d0) > 1e-12 || std::abs(fd) > 1e-6) return false;
  }
  return true;
}

bool TestFunction::value_and_derivative_vanish_at_origin() const {
  if (!derivative_vanishes_at_origin()) return false;
  for (const auto& k : terms_) {
    if (std::abs(space_factor(k, 0.0, false)) > 1e-12) return false;
  }
  return true;
}

bool TestFunction::nonnegative() const {
  for (const auto& k : terms_) {
    if (k.coef < 0.0) return false;
  }
  return true;
}

std::string TestFunction::describe() const {
  std::ostringstream out;
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    const auto& k = terms_[j];
    if (j) out << " + ";
    out << k.coef << "*" << (k.time_shape == TimeShape::bump ? "bump_t(" : "cutoff_t(") << k.t0 << "," << k.t1
        << ")*";
    if (k.space_shape == SpaceShape::bump) {
      out << "bump_r(" << k.r0 << "," << k.r1 << ")";
    } else {
      out << "centered_r(" << k.r1 << ")";
    }
  }
  return out.str();
}

std::vector<TestFunction> default_test_catalog(double T, const Window& K) {
  const double L = K.r_hi - K.r_lo;
  const double lo = K.r_lo;
  return {
      TestFunction::bump(0.05 * T, 0.95 * T, lo + 0.02 * L, lo + 0.98 * L),
      TestFunction::bump(0.10 * T, 0.60 * T, lo + 0.05 * L, lo + 0.55 * L),
      TestFunction::bump(0.40 * T, 0.90 * T, lo + 0.45 * L, lo + 0.95 * L),
      TestFunction::bump(0.20 * T, 0.80 * T, lo + 0.25 * L, lo + 0.75 * L),
      TestFunction::bump(0.02 * T, 0.50 * T, lo + 0.10 * L, lo + 0.90 * L, 2.0),
  };
}

std::vector<double> time_weights(const std::vector<double>& t) {
  std::vector<double> w(t.size(), 0.0);
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    const double d = 0.5 * (t[k + 1] - t[k]);
    w[k] += d;
    w[k + 1] += d;
  }
  return w;
}

EnergyReport energy_report(const Trajectory& traj, double monotone_tol) {
  EnergyReport rep;
  if (traj.snapshots.empty()) return rep;
  const GasModel& model = traj.model;
  const RadialGrid& g = traj.snapshots.front().grid;
  const std::vector<double> w = radial_weights(g, model.n_dim() - 1);
  const double level = 1.5 * traj.rho_bar;
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const State& s = traj.snapshots[k];
    const SampleRecord& r = traj.records[k];
    const double E = relative_energy(model, traj.rho_bar, s, w);
    if (k == 0) rep.E0 = E;
    rep.times.push_back(s.t);
    rep.energy.push_back(E);
    rep.dissipation.push_back(r.dissipation);
    const double res = std::abs(E + r.dissipation[0] + r.dissipation[1] + r.dissipation[2] - rep.E0);
    rep.residual.push_back(res);
    rep.max_residual = std::max(rep.max_residual, res);
    rep.measure_above.push_back(superlevel_measure(s, level, model.n_dim()));
    // Rounding floor: the relative energy cancels terms of size ~scale.
    double scale = 0.0;
    const double e_bar = model.internal_energy(traj.rho_bar), de_bar = model.dinternal_energy(traj.rho_bar);
    for (std::size_t i = 0; i < s.size(); ++i) {
      scale += w[i] * (std::abs(model.internal_energy(s.rho[i])) + std::abs(e_bar) + std::abs(de_bar) * s.rho[i] +
                       0.5 * s.m[i] * s.m[i] / s.rho[i]);
    }
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * scale;
    if (k > 0 && E > rep.energy[k - 1] + monotone_tol * rep.E0 * (s.t - rep.times[k - 1]) + floor) {
      rep.non_increasing = false;
    }
  }
  const SampleRecord& last = traj.records.back();
  const double lo = std::min(last.rho_min, 0.5 * traj.rho_bar);
  const double hi = std::max(last.rho_max, 2.0 * traj.rho_bar) * 1.01;
  rep.c1 = energy_lower_bound_constant(model, traj.rho_bar, lo, hi);
  const double theta = model.theta();
  const double g0 = 1.5 * traj.rho_bar * std::pow(std::pow(1.5, theta) - 1.0, 2.0) *
                    std::pow(traj.rho_bar, 2.0 * theta);
  rep.c2 = 1.0 / (rep.c1 * g0);
  rep.measure_bound = rep.c2 * rep.E0;
  for (double m : rep.measure_above) rep.measure_pass = rep.measure_pass && m <= rep.measure_bound;
  return rep;
}

MaxPrincipleReport riemann_maxprinciple_report(const Trajectory& traj, double C) {
  MaxPrincipleReport rep;
  rep.C = C;
  if (traj.snapshots.empty()) return rep;
  const GasModel& model = traj.model;
  double max_w = -std::numeric_limits<double>::infinity();
  double min_z = std::numeric_limits<double>::infinity();
  double w0 = 0.0, z0 = 0.0;
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const State& s = traj.snapshots[k];
    for (std::size_t i = 0; i < s.size(); ++i) {
      const RiemannInvariants ri = riemann_invariants(model, s.rho[i], s.m[i]);
      max_w = std::max(max_w, ri.w);
      min_z = std::min(min_z, ri.z);
    }
    if (k == 0) {
      w0 = max_w;
      z0 = min_z;
    }
    const SampleRecord& r = traj.records[k];
    const double Rsup = model.riemann_R(r.rho_max);
    rep.times.push_back(s.t);
    rep.max_w.push_back(max_w);
    rep.min_z.push_back(min_z);
    rep.max_u.push_back(r.u_max);
    rep.R_sup.push_back(Rsup);
    rep.integral.push_back(r.maxprinciple_integral);
    const double bw = w0 + Rsup + C * r.maxprinciple_integral;
    const double bz = -z0 + Rsup + C * r.maxprinciple_integral;
    const double bu = std::max(w0, -z0) + Rsup + C * r.maxprinciple_integral;
    rep.bound_w.push_back(bw);
    rep.bound_z.push_back(bz);
    rep.bound_u.push_back(bu);
    rep.pass = rep.pass && max_w <= bw && -min_z <= bz && r.u_max <= bu;
  }
  return rep;
}

double calibrate_maxprinciple_constant(const Trajectory& traj) {
  const MaxPrincipleReport rep = riemann_maxprinciple_report(traj, 0.0);
  double C = 0.0;
  for (std::size_t k = 0; k < rep.times.size(); ++k) {
    const double I = rep.integral[k];
    if (!(I > 0.0)) continue;
    C = std::max(C, (rep.max_w[k] - rep.bound_w[k]) / I);
    C = std::max(C, (-rep.min_z[k] - rep.bound_z[k]) / I);
    C = std::max(C, (rep.max_u[k] - rep.bound_u[k]) / I);
  }
  return C;
}

IntegrabilityReport higher_integrability_report(const Trajectory& traj, const Window& K, double a1) {
  if (traj.snapshots.empty()) throw DomainError("integrability report needs snapshots");
  require_window(traj, K);
  const RadialGrid& g = traj.snapshots.front().grid;
  if (!(a1 > g.a() && a1 <= 1.0)) {
    throw ConfigError("diagnostics.a1 = " + std::to_string(a1) + " must lie in (a, 1] with a = " +
                      std::to_string(g.a()));
  }
  const GasModel& model = traj.model;
  const int n = model.n_dim();
  const double gam = model.gamma();
  const double delta = model.delta();
  const double eps = traj.eps;
  const double b = g.b();

  IntegrabilityReport rep;
  rep.K = K;
  rep.a1 = a1;
  rep.rho_gamma_moments.assign(n, 0.0);
  std::vector<std::vector<double>> w31(n);
  for (int l = 0; l < n; ++l) w31[l] = radial_weights(g, l, a1, b);
  const std::vector<double> w_annulus = radial_weights(g, n - 1);
  const std::vector<double> w32a = radial_weights(g, n - 1);
  const std::vector<double> w32K = radial_weights(g, n - 1, K.r_lo, b);
  const std::vector<double> wK = radial_weights(g, 0, K.r_lo, K.r_hi);
  const std::vector<double> tw = time_weights(snapshot_times(traj));

  std::vector<double> f(g.nodes());
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const State& s = traj.snapshots[k];
    for (std::size_t i = 0; i < s.size(); ++i) f[i] = std::pow(s.rho[i], gam);
    for (int l = 0; l < n; ++l) rep.rho_gamma_moments[l] = std::max(rep.rho_gamma_moments[l], integrate_nodal(w31[l], f));
    rep.rho_gamma_annulus = std::max(rep.rho_gamma_annulus, integrate_nodal(w_annulus, f));

    for (std::size_t i = 0; i < s.size(); ++i) f[i] = s.rho[i] * s.rho[i] * s.rho[i];
    rep.rho3_tail_a += tw[k] * integrate_nodal(w32a, f);
    rep.rho3_tail_K += tw[k] * integrate_nodal(w32K, f);
    rep.interior_delta_rho3 += tw[k] * delta * integrate_nodal(wK, f);

    for (std::size_t i = 0; i < s.size(); ++i) f[i] = std::pow(s.rho[i], gam + 1.0) + delta * std::pow(s.rho[i], 3.0);
    rep.interior_pressure += tw[k] * integrate_nodal(wK, f);

    for (std::size_t i = 0; i < s.size(); ++i) {
      const double u = s.m[i] / s.rho[i];
      f[i] = s.rho[i] * std::abs(u * u * u) + std::pow(s.rho[i], gam + model.theta());
    }
    rep.interior_flux += tw[k] * integrate_nodal(wK, f);
  }
  const double bn = std::pow(b, n);
  rep.norm_rho_gamma = 1.0 + std::pow(traj.rho_bar, gam) * bn;
  rep.norm_rho3_tail = 1.0 + bn / eps;
  rep.norm_interior_flux = 1.0 + std::pow(traj.rho_bar, gam) * bn + delta * bn / eps;
  for (double v : rep.rho_gamma_moments) rep.rho_gamma_moments_normalized.push_back(v / rep.norm_rho_gamma);
  rep.rho3_tail_normalized = rep.rho3_tail_a / rep.norm_rho3_tail;
  rep.interior_pressure_normalized = rep.interior_pressure / rep.norm_interior_pressure;
  rep.interior_flux_normalized = rep.interior_flux / rep.norm_interior_flux;
  return rep;
}

double small_density_gradient(const Trajectory& traj, const Window& K) {
  require_window(traj, K);
  const RadialGrid& g = traj.snapshots.front().grid;
  const std::vector<double> wK = radial_weights(g, 0, K.r_lo, K.r_hi);
  const std::vector<double> tw = time_weights(snapshot_times(traj));
  double acc = 0.0;
  std::vector<double> f(g.nodes());
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const std::vector<double> d = nodal_derivative(g, traj.snapshots[k].rho);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = d[i] * d[i];
    acc += tw[k] * integrate_nodal(wK, f);
  }
  return std::pow(traj.eps, 1.5) * acc;
}

namespace {
const double kGauss3x[3] = {0.5 - 0.5 * std::sqrt(0.6), 0.5, 0.5 + 0.5 * std::sqrt(0.6)};
const double kGauss3w[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
}  // namespace

EntropyDissipationReport entropy_dissipation_proxy(const Trajectory& traj,
                                                   const std::vector<const PairEvaluator*>& pairs,
                                                   const std::vector<TestFunction>& tests, const Window& K,
                                                   double triangle_tol) {
  require_window(traj, K);
  const double T = traj.snapshots.back().t;
  for (std::size_t j = 0; j < tests.size(); ++j) {
    const TestFunction& phi = tests[j];
    if (phi.t_min() < 0.0 || phi.t_max() > T || phi.r_min() < K.r_lo || phi.r_max() > K.r_hi) {
      throw ConfigError("test function " + std::to_string(j) + " (" + phi.describe() +
                        ") is not supported inside the window [0, T] x K");
    }
    if (std::abs(phi.value(0.0, 0.5 * (phi.r_min() + phi.r_max()))) > 0.0) {
      throw ConfigError("test function " + std::to_string(j) +
                        " must vanish at t = 0 for the entropy dissipation pairing");
    }
  }
  const GasModel& model = traj.model;
  const RadialGrid& g = traj.snapshots.front().grid;
  const std::size_t n = g.nodes();
  const double eps = traj.eps;
  const double delta = model.delta();
  const double e = static_cast<double>(model.n_dim() - 1);
  const double h = g.h();
  const std::vector<double> tw = time_weights(snapshot_times(traj));
  const std::vector<double> wK = radial_weights(g, 0, K.r_lo, K.r_hi);
  std::vector<std::vector<double>> wtest;
  for (const auto& phi : tests) wtest.push_back(radial_weights(g, 0, phi.r_min(), phi.r_max()));

  EntropyDissipationReport rep;
  rep.small_density_gradient = small_density_gradient(traj, K);
  const double p_norm = model.gamma() + 1.0;

  for (const PairEvaluator* pair : pairs) {
    std::vector<double> A(tests.size(), 0.0);
    std::vector<double> D(tests.size(), 0.0), B(tests.size(), 0.0), V(tests.size(), 0.0), I2n(tests.size(), 0.0),
        I4n(tests.size(), 0.0), S(tests.size(), 0.0);
    double eta_norm = 0.0, q_norm = 0.0;
    std::vector<double> eta_prev(n), q_prev(n);
    std::vector<double> eta(n), q(n), er(n), em(n), i135(n), i2(n), i4(n);
    for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
      const State& s = traj.snapshots[k];
      for (std::size_t i = 0; i < n; ++i) {
        const PairValue v = pair->value(s.rho[i], s.m[i]);
        const PairGradient gr = pair->gradient(s.rho[i], s.m[i]);
        eta[i] = v.eta;
        q[i] = v.q;
        er[i] = gr.eta_rho;
        em[i] = gr.eta_m;
      }
      const std::vector<double> rho_r = nodal_derivative(g, s.rho);
      const std::vector<double> m_r = nodal_derivative(g, s.m);
      const std::vector<double> er_r = nodal_derivative(g, er);
      const std::vector<double> em_r = nodal_derivative(g, em);
      for (std::size_t i = 0; i < n; ++i) {
        const double r = g.r(i);
        const double u = s.m[i] / s.rho[i];
        const double I1 = -e / r * s.m[i] * (er[i] + u * em[i]);
        const double I2 = eps * e / r * (rho_r[i] * er[i] + (m_r[i] - s.m[i] / r) * em[i]);
        const double I3 = -eps * (rho_r[i] * er_r[i] + m_r[i] * em_r[i]);
        double eta_rr = 0.0;
        if (i > 0 && i + 1 < n) eta_rr = (eta[i + 1] - 2.0 * eta[i] + eta[i - 1]) / (h * h);
        const double I4 = eps * eta_rr;
        const double I5 = -2.0 * delta * s.rho[i] * rho_r[i] * em[i];
        i135[i] = I1 + I3 + I5;
        i2[i] = I2;
        i4[i] = I4;
      }
      std::vector<double> f(n);
      for (std::size_t i = 0; i < n; ++i) f[i] = std::pow(std::abs(eta[i]), p_norm);
      eta_norm += tw[k] * integrate_nodal(wK, f);
      for (std::size_t i = 0; i < n; ++i) f[i] = std::pow(std::abs(q[i]), p_norm);
      q_norm += tw[k] * integrate_nodal(wK, f);

      for (std::size_t j = 0; j < tests.size(); ++j) {
        const TestFunction& phi = tests[j];
        const std::vector<double>& w = wtest[j];
        // Flux pairing with eta and q linear in t between samples, integrated by parts in t and r
        // (phi vanishes on the boundary of its support), so a steady uniform state contributes
        // exactly nothing. The t-integrals use 3-point Gauss per interval.
        if (k > 0) {
          const double t0 = traj.snapshots[k - 1].t, dt = s.t - t0;
          for (int gq = 0; gq < 3; ++gq) {
            const double tg = t0 + kGauss3x[gq] * dt, a1 = kGauss3x[gq], a0 = 1.0 - a1;
            double d = 0.0, mag = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
              if (w[i] == 0.0) continue;
              const double r = g.r(i);
              d -= w[i] * (eta[i] - eta_prev[i]) / dt * phi.value(tg, r);
              mag += w[i] * (std::abs((a0 * eta_prev[i] + a1 * eta[i]) * phi.dt(tg, r)) +
                             std::abs((a0 * q_prev[i] + a1 * q[i]) * phi.dr(tg, r)));
            }
            for (std::size_t i = 0; i + 1 < n; ++i) {
              if (g.r(i + 1) <= phi.r_min() || g.r(i) >= phi.r_max()) continue;
              const double dq = a0 * (q_prev[i + 1] - q_prev[i]) + a1 * (q[i + 1] - q[i]);
              d -= dq * 0.5 * (phi.value(tg, g.r(i)) + phi.value(tg, g.r(i + 1)));
            }
            D[j] += kGauss3w[gq] * dt * d;
            A[j] += kGauss3w[gq] * dt * mag;
          }
        }
        double b = 0.0, v = 0.0, n2 = 0.0, n4 = 0.0, sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          if (w[i] == 0.0) continue;
          const double r = g.r(i);
          const double p = phi.value(s.t, r);
          b += w[i] * std::abs(i135[i]);
          v += w[i] * (i2[i] + i4[i]) * p;
          n2 += w[i] * std::abs(i2[i]);
          n4 += w[i] * std::abs(i4[i]);
          sum += w[i] * (i135[i] + i2[i] + i4[i]) * p;
        }
        const bool in_time = s.t >= phi.t_min() && s.t <= phi.t_max();
        if (in_time) {
          B[j] += tw[k] * b;
          I2n[j] += tw[k] * n2;
          I4n[j] += tw[k] * n4;
        }
        V[j] += tw[k] * v;
        S[j] += tw[k] * sum;
      }
      eta_prev = eta;
      q_prev = q;
    }
    for (std::size_t j = 0; j < tests.size(); ++j) {
      PairingRow row;
      row.pair = pair->name();
      row.test = j;
      row.D = D[j];
      row.bounded_L1 = B[j];
      row.sup_phi = tests[j].sup_abs();
      row.vanishing = std::abs(V[j]);
      row.I2_L1 = I2n[j];
      row.I4_L1 = I4n[j];
      row.consistency = std::abs(D[j] + S[j]);
      row.triangle_pass = std::abs(row.D) <= (1.0 + triangle_tol) * (row.bounded_L1 * row.sup_phi + row.vanishing) +
                                                 64.0 * std::numeric_limits<double>::epsilon() * A[j];
      rep.rows.push_back(row);
    }
    rep.lq_norms.push_back({pair->name(), {std::pow(eta_norm, 1.0 / p_norm), std::pow(q_norm, 1.0 / p_norm)}});
  }
  return rep;
}

double vacuum_phi(double rho, double rho_tilde) {
  if (rho >= rho_tilde) return 0.0;
  return 1.0 / rho - 1.0 / rho_tilde + (rho - rho_tilde) / (rho_tilde * rho_tilde);
}

VacuumReport vacuum_proximity_report(const Trajectory& traj, double rho_tilde) {
  if (!(rho_tilde > 0.0)) throw ConfigError("vacuum threshold rho_tilde must be positive");
  VacuumReport rep;
  rep.rho_tilde = rho_tilde;
  if (traj.snapshots.empty()) return rep;
  const RadialGrid& g = traj.snapshots.front().grid;
  const std::vector<double> w = radial_weights(g, 0);
  const std::vector<double> tw = time_weights(snapshot_times(traj));
  std::vector<double> f(g.nodes());
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const State& s = traj.snapshots[k];
    for (std::size_t i = 0; i < s.size(); ++i) f[i] = vacuum_phi(s.rho[i], rho_tilde);
    const double I = integrate_nodal(w, f);
    rep.times.push_back(s.t);
    rep.phi_integral.push_back(I);
    rep.sup_phi_integral = std::max(rep.sup_phi_integral, I);
    const std::vector<double> d = nodal_derivative(g, s.rho);
    for (std::size_t i = 0; i < s.size(); ++i) {
      f[i] = s.rho[i] < rho_tilde ? d[i] * d[i] / (s.rho[i] * s.rho[i] * s.rho[i]) : 0.0;
    }
    rep.rho_r2_over_rho3 += tw[k] * integrate_nodal(w, f);
  }
  rep.min_rho = traj.records.back().rho_min;
  return rep;
}

namespace {

std::unique_ptr<PairEvaluator> make_pair(const std::string& name, const GasModel& model, double rho_bar) {
  if (name == "mechanical_energy") return std::make_unique<MechanicalEnergyPair>(model);
  if (name == "shifted_half_s_abs_s") return std::make_unique<ShiftedEntropyPair>(model, rho_bar);
  return std::make_unique<EntropyPair>(GeneratingFunction::by_name(name), model);
}

}  // namespace

DiagnosticReport build_diagnostic_report(const Trajectory& traj, const DiagnosticsSettings& settings) {
  DiagnosticReport rep;
  rep.eps = traj.eps;
  rep.rho_bar = traj.rho_bar;
  rep.energy = energy_report(traj, settings.energy_monotone_tol);
  rep.maxprinciple = riemann_maxprinciple_report(traj, settings.maxprinciple_C);
  rep.integrability = higher_integrability_report(traj, settings.K, settings.a1);
  std::vector<std::unique_ptr<PairEvaluator>> owned;
  std::vector<const PairEvaluator*> pairs;
  for (const auto& name : settings.pairs) {
    owned.push_back(make_pair(name, traj.model, traj.rho_bar));
    pairs.push_back(owned.back().get());
  }
  const std::vector<TestFunction> tests =
      settings.tests.empty() ? default_test_catalog(traj.snapshots.back().t, settings.K) : settings.tests;
  rep.entropy = entropy_dissipation_proxy(traj, pairs, tests, settings.K, settings.triangle_tol);
  rep.vacuum = vacuum_proximity_report(traj, settings.rho_tilde > 0.0 ? settings.rho_tilde : traj.rho_bar);
  return rep;
}

}  // namespace radeuler
