#include "radeuler/solver.hpp"

#include <algorithm>
#include <cmath>

#include "radeuler/errors.hpp"
#include "radeuler/grid_ops.hpp"

namespace radeuler {

namespace {

// Tridiagonal operator on the interior unknowns 1..N-1: (lower, diag, upper) plus an affine part.
struct Tridiagonal {
  std::vector<double> lower;
  std::vector<double> diag;
  std::vector<double> upper;
  std::vector<double> constant;

  explicit Tridiagonal(std::size_t n) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0), constant(n, 0.0) {}

  std::vector<double> apply(const std::vector<double>& x) const {
    const std::size_t n = diag.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      double v = diag[i] * x[i] + constant[i];
      if (i > 0) v += lower[i] * x[i - 1];
      if (i + 1 < n) v += upper[i] * x[i + 1];
      y[i] = v;
    }
    return y;
  }
};

// Thomas algorithm for (I - c T) x = rhs, ignoring T.constant.
std::vector<double> solve_shifted(const Tridiagonal& T, double c, const std::vector<double>& rhs) {
  const std::size_t n = rhs.size();
  std::vector<double> cp(n), dp(n), x(n);
  double b0 = 1.0 - c * T.diag[0];
  if (b0 == 0.0) throw NumericalError("implicit stage: singular tridiagonal system");
  cp[0] = n > 1 ? -c * T.upper[0] / b0 : 0.0;
  dp[0] = rhs[0] / b0;
  for (std::size_t i = 1; i < n; ++i) {
    const double a = -c * T.lower[i];
    const double b = 1.0 - c * T.diag[i];
    const double denom = b - a * cp[i - 1];
    if (denom == 0.0) throw NumericalError("implicit stage: singular tridiagonal system");
    cp[i] = i + 1 < n ? -c * T.upper[i] / denom : 0.0;
    dp[i] = (rhs[i] - a * dp[i - 1]) / denom;
  }
  x[n - 1] = dp[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = dp[i] - cp[i] * x[i + 1];
  return x;
}

Tridiagonal density_viscosity(const RadialGrid& g, int n_dim, double eps, double rho_bar) {
  const std::size_t N = g.cells();
  const double h2 = g.h() * g.h();
  const double e = static_cast<double>(n_dim - 1);
  Tridiagonal T(N - 1);
  for (std::size_t i = 1; i < N; ++i) {
    const std::size_t k = i - 1;
    const double scale = eps * std::pow(g.r(i), -e) / h2;
    const double left = scale * std::pow(g.r_half(i - 1), e);
    const double right = scale * std::pow(g.r_half(i), e);
    T.diag[k] = -(left + right);
    if (i == 1) {
      // rho_0 = (4 rho_1 - rho_2) / 3
      T.diag[k] += left * 4.0 / 3.0;
      if (N - 1 > 1) T.upper[k] += -left / 3.0;
    } else {
      T.lower[k] = left;
    }
    if (i + 1 == N) {
      T.constant[k] = right * rho_bar;
    } else {
      T.upper[k] += right;
    }
  }
  return T;
}

Tridiagonal momentum_viscosity(const RadialGrid& g, int n_dim, double eps) {
  const std::size_t N = g.cells();
  const double h2 = g.h() * g.h();
  const double e = static_cast<double>(n_dim - 1);
  Tridiagonal T(N - 1);
  for (std::size_t i = 1; i < N; ++i) {
    const std::size_t k = i - 1;
    const double inv_right = std::pow(g.r_half(i), -e);
    const double inv_left = std::pow(g.r_half(i - 1), -e);
    T.diag[k] = -eps * (inv_right + inv_left) * std::pow(g.r(i), e) / h2;
    if (i > 1) T.lower[k] = eps * inv_left * std::pow(g.r(i - 1), e) / h2;
    if (i + 1 < N) T.upper[k] = eps * inv_right * std::pow(g.r(i + 1), e) / h2;
  }
  return T;
}

std::vector<double> interior(const std::vector<double>& v) {
  return std::vector<double>(v.begin() + 1, v.end() - 1);
}

void scatter(State& s, const std::vector<double>& rho_in, const std::vector<double>& m_in, double rho_bar) {
  const std::size_t N = s.grid.cells();
  for (std::size_t i = 1; i < N; ++i) {
    s.rho[i] = rho_in[i - 1];
    s.m[i] = m_in[i - 1];
  }
  apply_boundary_conditions(s, rho_bar);
}

void check_positive(const State& s, double floor) {
  for (std::size_t i = 0; i < s.rho.size(); ++i) {
    if (!(s.rho[i] > floor)) throw PositivityError(i, s.t, s.rho[i]);
  }
}

// Newton iteration for x - c (T x + T.constant) = rhs; one step is exact for this linear
// operator, the loop guards against round-off and reports the count.
std::vector<double> implicit_solve(const Tridiagonal& T, double c, const std::vector<double>& rhs,
                                   const SolverConfig& config, int& iterations) {
  std::vector<double> x = rhs;
  auto residual = [&](const std::vector<double>& y) {
    std::vector<double> Ty = T.apply(y);
    std::vector<double> F(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) F[i] = y[i] - c * Ty[i] - rhs[i];
    return F;
  };
  auto norm = [](const std::vector<double>& v) {
    double n = 0.0;
    for (double x : v) n = std::max(n, std::abs(x));
    return n;
  };
  std::vector<double> F = residual(x);
  double fn = norm(F);
  const double scale = std::max(1.0, norm(rhs));
  int it = 0;
  while (fn > config.newton_tol * scale) {
    if (it >= config.newton_max_iter) {
      throw NumericalError("implicit stage: Newton did not converge (residual " + std::to_string(fn) + ")");
    }
    const std::vector<double> dx = solve_shifted(T, c, F);
    double damping = 1.0;
    std::vector<double> trial(x.size());
    double tn = fn;
    for (int ls = 0; ls < 30; ++ls) {
      for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] - damping * dx[i];
      const std::vector<double> Ft = residual(trial);
      tn = norm(Ft);
      if (tn < fn || tn <= config.newton_tol * scale) {
        F = Ft;
        break;
      }
      damping *= 0.5;
    }
    x = trial;
    ++it;
    if (!(tn < fn) && tn > config.newton_tol * scale) {
      throw NumericalError("implicit stage: Newton stalled (residual " + std::to_string(tn) + ")");
    }
    fn = tn;
  }
  iterations += it;
  return x;
}

}  // namespace

void validate(const SolverConfig& c) {
  std::vector<std::string> errors;
  if (c.N < 16) errors.emplace_back("solver.N must be at least 16");
  if (!(c.cfl > 0.0 && c.cfl < 1.0)) errors.emplace_back("solver.cfl must lie in (0, 1)");
  if (!(c.t_final > 0.0)) errors.emplace_back("solver.t_final must be positive");
  if (!(c.max_dt > 0.0)) errors.emplace_back("solver.max_dt must be positive");
  if (!(c.newton_tol > 0.0)) errors.emplace_back("solver.newton_tol must be positive");
  if (c.newton_max_iter < 1) errors.emplace_back("solver.newton_max_iter must be at least 1");
  if (!(c.positivity_floor_report >= 0.0)) errors.emplace_back("solver.positivity_floor_report must be nonnegative");
  if (!errors.empty()) throw ConfigError(errors);
}

Rhs convective_rhs(const GasModel& model, const State& s) {
  const RadialGrid& g = s.grid;
  const std::size_t N = g.cells();
  const double h = g.h();
  const double e = static_cast<double>(model.n_dim() - 1);
  Rhs out{std::vector<double>(N + 1, 0.0), std::vector<double>(N + 1, 0.0)};
  std::vector<double> G(N + 1);
  for (std::size_t i = 0; i <= N; ++i) {
    if (!(s.rho[i] > 0.0)) throw PositivityError(i, s.t, s.rho[i]);
    G[i] = s.m[i] * s.m[i] / s.rho[i] + model.pressure(s.rho[i]);
  }
  for (std::size_t i = 1; i < N; ++i) {
    const double r = g.r(i);
    out.drho[i] = -(s.m[i + 1] - s.m[i - 1]) / (2.0 * h) - e * s.m[i] / r;
    out.dm[i] = -(G[i + 1] - G[i - 1]) / (2.0 * h) - e * s.m[i] * s.m[i] / (s.rho[i] * r);
  }
  return out;
}

Rhs viscous_rhs(const State& s, double eps, int n_dim) {
  const RadialGrid& g = s.grid;
  const std::size_t N = g.cells();
  const double h = g.h();
  const double e = static_cast<double>(n_dim - 1);
  Rhs out{std::vector<double>(N + 1, 0.0), std::vector<double>(N + 1, 0.0)};
  // Face fluxes r^(n-1) rho_r and r^(1-n) (r^(n-1) m)_r at i+1/2.
  std::vector<double> frho(N), fm(N);
  for (std::size_t j = 0; j < N; ++j) {
    const double rh = g.r_half(j);
    frho[j] = std::pow(rh, e) * (s.rho[j + 1] - s.rho[j]) / h;
    fm[j] = std::pow(rh, -e) *
            (std::pow(g.r(j + 1), e) * s.m[j + 1] - std::pow(g.r(j), e) * s.m[j]) / h;
  }
  for (std::size_t i = 1; i < N; ++i) {
    out.drho[i] = eps * std::pow(g.r(i), -e) * (frho[i] - frho[i - 1]) / h;
    out.dm[i] = eps * (fm[i] - fm[i - 1]) / h;
  }
  return out;
}

Rhs semidiscrete_rhs(const GasModel& model, double rho_bar, const State& state, double eps) {
  (void)rho_bar;
  Rhs c = convective_rhs(model, state);
  const Rhs v = viscous_rhs(state, eps, model.n_dim());
  const std::size_t N = state.grid.cells();
  for (std::size_t i = 1; i < N; ++i) {
    c.drho[i] += v.drho[i];
    c.dm[i] += v.dm[i];
  }
  c.drho[0] = N >= 3 ? (4.0 * c.drho[1] - c.drho[2]) / 3.0 : 4.0 * c.drho[1] / 3.0;
  c.drho[N] = 0.0;
  c.dm[0] = 0.0;
  c.dm[N] = 0.0;
  return c;
}

void apply_boundary_conditions(State& s, double rho_bar) {
  const std::size_t N = s.grid.cells();
  s.rho[0] = (4.0 * s.rho[1] - s.rho[2]) / 3.0;
  s.m[0] = 0.0;
  s.rho[N] = rho_bar;
  s.m[N] = 0.0;
}

std::array<double, 3> dissipation_rates(const GasModel& model, const State& s, double eps) {
  const RadialGrid& g = s.grid;
  const std::size_t n = s.size();
  const int nd = model.n_dim();
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = s.m[i] / s.rho[i];
  const std::vector<double> rho_r = nodal_derivative(g, s.rho);
  const std::vector<double> u_r = nodal_derivative(g, u);
  std::vector<double> f1(n), f2(n), f3(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = g.r(i);
    f1[i] = model.d2internal_energy(s.rho[i]) * rho_r[i] * rho_r[i];
    f2[i] = s.rho[i] * u_r[i] * u_r[i];
    f3[i] = (nd - 1) * s.rho[i] * u[i] * u[i] / (r * r);
  }
  const std::vector<double> w = radial_weights(g, nd - 1);
  return {eps * integrate_nodal(w, f1), eps * integrate_nodal(w, f2), eps * integrate_nodal(w, f3)};
}

double stable_dt(const GasModel& model, const State& s, const SolverConfig& config) {
  double speed = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    speed = std::max(speed, std::abs(s.m[i] / s.rho[i]) + model.sound_speed(s.rho[i]));
  }
  double dt = config.max_dt;
  if (speed > 0.0) dt = std::min(dt, config.cfl * s.grid.h() / speed);
  return dt;
}

StepReport advance_step(const GasModel& model, double rho_bar, State& state, double eps, double dt,
                        const SolverConfig& config) {
  const RadialGrid& g = state.grid;
  const std::size_t N = g.cells();
  if (N < 3) throw DomainError("advance_step needs at least three cells");
  if (!(dt > 0.0)) throw DomainError("advance_step needs a positive time step");
  const int nd = model.n_dim();
  const double gm = 1.0 - 1.0 / std::sqrt(2.0);
  const double dl = 1.0 - 1.0 / (2.0 * gm);

  const Tridiagonal Lr = density_viscosity(g, nd, eps, rho_bar);
  const Tridiagonal Lm = momentum_viscosity(g, nd, eps);
  StepReport report;
  report.dt = dt;

  apply_boundary_conditions(state, rho_bar);
  check_positive(state, config.positivity_floor_report);
  const std::vector<double> r1 = interior(state.rho);
  const std::vector<double> m1 = interior(state.m);
  const Rhs E1 = convective_rhs(model, state);
  const std::vector<double> e1r = interior(E1.drho);
  const std::vector<double> e1m = interior(E1.dm);
  const std::size_t n = N - 1;

  // Stage 2.
  std::vector<double> br(n), bm(n);
  for (std::size_t k = 0; k < n; ++k) {
    br[k] = r1[k] + dt * gm * e1r[k] + dt * gm * Lr.constant[k];
    bm[k] = m1[k] + dt * gm * e1m[k];
  }
  Tridiagonal Lr0 = Lr;
  std::fill(Lr0.constant.begin(), Lr0.constant.end(), 0.0);
  std::vector<double> r2 = implicit_solve(Lr0, dt * gm, br, config, report.newton_iterations);
  std::vector<double> m2 = implicit_solve(Lm, dt * gm, bm, config, report.newton_iterations);
  State s2 = state;
  s2.t = state.t + gm * dt;
  scatter(s2, r2, m2, rho_bar);
  check_positive(s2, config.positivity_floor_report);
  const Rhs E2 = convective_rhs(model, s2);
  const std::vector<double> L2r = Lr.apply(r2);
  const std::vector<double> L2m = Lm.apply(m2);

  // Stage 3 (stiffly accurate: it is the new solution).
  for (std::size_t k = 0; k < n; ++k) {
    br[k] = r1[k] + dt * (dl * e1r[k] + (1.0 - dl) * E2.drho[k + 1]) + dt * (1.0 - gm) * L2r[k] +
            dt * gm * Lr.constant[k];
    bm[k] = m1[k] + dt * (dl * e1m[k] + (1.0 - dl) * E2.dm[k + 1]) + dt * (1.0 - gm) * L2m[k];
  }
  std::vector<double> r3 = implicit_solve(Lr0, dt * gm, br, config, report.newton_iterations);
  std::vector<double> m3 = implicit_solve(Lm, dt * gm, bm, config, report.newton_iterations);
  state.t += dt;
  scatter(state, r3, m3, rho_bar);
  check_positive(state, config.positivity_floor_report);

  report.rho_min = *std::min_element(state.rho.begin(), state.rho.end());
  report.rho_max = *std::max_element(state.rho.begin(), state.rho.end());
  for (std::size_t i = 0; i <= N; ++i) report.u_max = std::max(report.u_max, std::abs(state.u(i)));
  const double h = g.h();
  const double e = static_cast<double>(nd - 1);
  report.flux_a = eps * std::pow(g.a(), e) *
                  (-3.0 * state.rho[0] + 4.0 * state.rho[1] - state.rho[2]) / (2.0 * h);
  report.flux_b = eps * std::pow(g.b(), e) *
                  (3.0 * state.rho[N] - 4.0 * state.rho[N - 1] + state.rho[N - 2]) / (2.0 * h);
  return report;
}

std::vector<double> quadratic_schedule(double t_final, std::size_t samples) {
  if (samples < 1) throw ConfigError("diagnostics schedule needs at least one sample after t = 0");
  std::vector<double> t(samples + 1);
  for (std::size_t k = 0; k <= samples; ++k) {
    const double x = static_cast<double>(k) / static_cast<double>(samples);
    t[k] = t_final * x * x;
  }
  t.back() = t_final;
  return t;
}

Trajectory run_simulation(const GasModel& model, const State& initial, double eps, double rho_bar,
                          const SolverConfig& config, const std::vector<double>& schedule) {
  validate(config);
  if (schedule.empty()) throw ConfigError("diagnostics schedule is empty");
  for (std::size_t k = 1; k < schedule.size(); ++k) {
    if (!(schedule[k] > schedule[k - 1])) throw ConfigError("diagnostics schedule must be increasing");
  }
  if (schedule.front() != initial.t) throw ConfigError("diagnostics schedule must start at the initial time");

  Trajectory traj{eps, rho_bar, model, {}, {}};
  State state = initial;
  apply_boundary_conditions(state, rho_bar);
  check_positive(state, config.positivity_floor_report);

  const double mp_exp = std::max(1.0, model.gamma() - 1.0) / 2.0;
  auto sup_norms = [&](const State& s) {
    double rmax = 0.0, umax = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      rmax = std::max(rmax, s.rho[i]);
      umax = std::max(umax, std::abs(s.u(i)));
    }
    return std::pair<double, double>(rmax, umax);
  };
  auto mp_integrand = [&](const State& s) {
    const auto [rmax, umax] = sup_norms(s);
    return (1.0 + std::pow(rmax, mp_exp)) * umax;
  };
  const std::size_t N = state.grid.cells();
  const double h = state.grid.h();
  const double e = static_cast<double>(model.n_dim() - 1);
  auto mass_flux = [&](const State& s) {
    const double fb = std::pow(s.grid.b(), e) * (3.0 * s.rho[N] - 4.0 * s.rho[N - 1] + s.rho[N - 2]) / (2.0 * h);
    const double fa = std::pow(s.grid.a(), e) * (-3.0 * s.rho[0] + 4.0 * s.rho[1] - s.rho[2]) / (2.0 * h);
    return eps * (fb - fa);
  };

  SampleRecord rec;
  rec.t = state.t;
  rec.rho_min = *std::min_element(state.rho.begin(), state.rho.end());
  rec.rho_max = *std::max_element(state.rho.begin(), state.rho.end());
  rec.u_max = sup_norms(state).second;
  traj.snapshots.push_back(state);
  traj.records.push_back(rec);

  std::array<double, 3> rates = dissipation_rates(model, state, eps);
  double mp_prev = mp_integrand(state);
  double flux_prev = mass_flux(state);
  for (std::size_t k = 1; k < schedule.size(); ++k) {
    const double target = schedule[k];
    while (state.t < target) {
      const double remaining = target - state.t;
      const double dt_cap = stable_dt(model, state, config);
      const double steps = std::ceil(remaining / dt_cap - 1e-9);
      const double dt = steps <= 1.0 ? remaining : remaining / steps;
      StepReport sr;
      try {
        sr = advance_step(model, rho_bar, state, eps, dt, config);
      } catch (const PositivityError&) {
        throw;
      } catch (const NumericalError& err) {
        throw NumericalError(std::string(err.what()) + " (t = " + std::to_string(state.t) + ")");
      }
      if (steps <= 1.0) state.t = target;
      const std::array<double, 3> next = dissipation_rates(model, state, eps);
      for (int j = 0; j < 3; ++j) rec.dissipation[j] += 0.5 * dt * (rates[j] + next[j]);
      rates = next;
      const double mp_next = mp_integrand(state);
      rec.maxprinciple_integral += 0.5 * dt * (mp_prev + mp_next);
      mp_prev = mp_next;
      const double flux_next = mass_flux(state);
      rec.boundary_mass_flux += 0.5 * dt * (flux_prev + flux_next);
      flux_prev = flux_next;
      rec.rho_min = std::min(rec.rho_min, sr.rho_min);
      rec.rho_max = std::max(rec.rho_max, sr.rho_max);
      rec.u_max = std::max(rec.u_max, sr.u_max);
      ++rec.steps;
    }
    rec.t = state.t;
    traj.snapshots.push_back(state);
    traj.records.push_back(rec);
  }
  return traj;
}

}  // namespace radeuler
