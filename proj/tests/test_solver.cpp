#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "radeuler/errors.hpp"
#include "radeuler/grid_ops.hpp"
#include "radeuler/initial_data.hpp"
#include "radeuler/solver.hpp"
#include "manufactured.hpp"

using namespace radeuler;
using radeuler::testing::Manufactured;

namespace {

constexpr double kPi = std::numbers::pi;

State uniform_state(const RadialGrid& g, double rho, double m = 0.0) {
  return State(g, 0.0, std::vector<double>(g.nodes(), rho), std::vector<double>(g.nodes(), m));
}


std::pair<double, double> manufactured_errors(const Manufactured& mf, std::size_t N) {
  const RadialGrid g(mf.a, mf.b, N);
  std::vector<double> rho(g.nodes()), m(g.nodes());
  for (std::size_t i = 0; i < g.nodes(); ++i) {
    rho[i] = mf.rho(g.r(i));
    m[i] = mf.m(g.r(i));
  }
  const Rhs rhs = semidiscrete_rhs(mf.model, 1.0, State(g, 0.0, rho, m), mf.eps);
  double e1 = 0.0, e2 = 0.0;
  for (std::size_t i = 1; i < N; ++i) {
    e1 += g.h() * std::pow(rhs.drho[i] - mf.drho(g.r(i)), 2.0);
    e2 += g.h() * std::pow(rhs.dm[i] - mf.dm(g.r(i)), 2.0);
  }
  return {std::sqrt(e1), std::sqrt(e2)};
}

State pulse_state(const GasModel& model, double eps, double a, double b, double rho_bar, std::size_t N) {
  ProfileSpec p;
  p.kind = ProfileKind::gaussian_pulse;
  p.amplitude = 1.0;
  p.center = 1.2;
  p.width = 0.3;
  p.velocity_amplitude = 0.3;
  p.velocity_center = 1.2;
  return build_initial_data(p, model, {eps, a, b, rho_bar}, RadialGrid(a, b, N));
}

}  // namespace

TEST_CASE("constant equilibrium has zero right-hand side") {
  const GasModel model = GasModel::normalized(2.0, 0.01, 3);
  const RadialGrid g(0.3, 3.0, 64);
  const Rhs rhs = semidiscrete_rhs(model, 0.2, uniform_state(g, 0.2), 0.1);
  for (std::size_t i = 0; i < g.nodes(); ++i) {
    CHECK(std::abs(rhs.drho[i]) < 1e-14);
    CHECK(std::abs(rhs.dm[i]) < 1e-14);
  }
}

TEST_CASE("three-node stencil matches the hand-telescoped viscous flux difference") {
  // a = 0.5, b = 2.5, h = 1; faces at r = 1 and r = 2 carry r^2 rho_r = 1 and -4.
  // rho_t(1.5) = (−4 − 1) / (1.5^2 * 1) = −20/9; the pressure flux cancels by symmetry.
  const GasModel model = GasModel::normalized(2.0, 0.0, 3);
  const RadialGrid g(0.5, 2.5, 2);
  const State s(g, 0.0, {1.0, 2.0, 1.0}, {0.0, 0.0, 0.0});
  const Rhs v = viscous_rhs(s, 1.0, 3);
  CHECK(v.drho[1] == doctest::Approx(-20.0 / 9.0).epsilon(1e-14));
  const Rhs full = semidiscrete_rhs(model, 1.0, s, 1.0);
  CHECK(full.drho[1] == doctest::Approx(-20.0 / 9.0).epsilon(1e-14));
  CHECK(std::abs(full.dm[1]) < 1e-15);
}

TEST_CASE("manufactured solution: second-order spatial convergence") {
  for (int n : {2, 3}) {
    const Manufactured mf{0.4, 2.6, 0.3, GasModel::normalized(1.4, 0.02, n)};
    std::vector<std::pair<double, double>> err;
    for (std::size_t N : {32, 64, 128, 256}) err.push_back(manufactured_errors(mf, N));
    for (std::size_t k = 0; k + 1 < err.size(); ++k) {
      const double o1 = std::log2(err[k].first / err[k + 1].first);
      const double o2 = std::log2(err[k].second / err[k + 1].second);
      INFO("n=" << n << " halving " << k << " orders " << o1 << " " << o2);
      CHECK(o1 >= 1.9);
      CHECK(o2 >= 1.9);
    }
  }
}

TEST_CASE("boundary conditions") {
  const RadialGrid g0(0.2, 2.0, 10);
  State s(g0, 0.0, std::vector<double>(11, 1.0), std::vector<double>(11, 0.5));
  apply_boundary_conditions(s, 0.7);
  CHECK(s.m[0] == 0.0);
  CHECK(s.m[10] == 0.0);
  CHECK(s.rho[10] == 0.7);

  // Smooth data with rho_r(a) = 0: the mirrored boundary value converges at second order.
  std::vector<double> errs;
  for (std::size_t N : {16, 32, 64, 128}) {
    const RadialGrid g(0.2, 2.0, N);
    auto f = [&](double r) { return 1.0 + 0.2 * std::cos(kPi * (r - 0.2) / 1.8) + 0.1 * std::pow(r - 0.2, 3); };
    std::vector<double> rho(g.nodes());
    for (std::size_t i = 0; i < g.nodes(); ++i) rho[i] = f(g.r(i));
    State st(g, 0.0, rho, std::vector<double>(g.nodes(), 0.0));
    apply_boundary_conditions(st, f(2.0));
    errs.push_back(std::abs(st.rho[0] - f(0.2)));
  }
  for (std::size_t k = 0; k + 1 < errs.size(); ++k) CHECK(std::log2(errs[k] / errs[k + 1]) >= 1.9);
}

TEST_CASE("solver config validation lists every problem") {
  SolverConfig c;
  c.N = 4;
  c.cfl = 1.5;
  c.newton_tol = 0.0;
  try {
    validate(c);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.messages().size() == 3);
  }
}

TEST_CASE("non-positive density is a positivity error") {
  const RadialGrid g(0.5, 2.0, 16);
  std::vector<double> rho(17, 1.0);
  rho[5] = 0.0;
  CHECK_THROWS_AS(State(g, 0.0, rho, std::vector<double>(17, 0.0)), PositivityError);
}

TEST_CASE("equilibrium is unchanged by a step") {
  const GasModel model = GasModel::normalized(2.0, 0.03, 3);
  const RadialGrid g(0.4, 2.5, 128);
  State s = uniform_state(g, 0.3);
  SolverConfig c;
  c.N = 128;
  const double dt = stable_dt(model, s, c);
  advance_step(model, 0.3, s, 0.2, dt, c);
  for (std::size_t i = 0; i < g.nodes(); ++i) {
    CHECK(std::abs(s.rho[i] - 0.3) < 1e-12);
    CHECK(std::abs(s.m[i]) < 1e-12);
  }
}

TEST_CASE("quadratic schedule") {
  const std::vector<double> t = quadratic_schedule(2.0, 4);
  REQUIRE(t.size() == 5);
  CHECK(t[0] == 0.0);
  CHECK(t[2] == doctest::Approx(0.5));
  CHECK(t[4] == 2.0);
}

TEST_CASE("time-step halving: differences shrink at least linearly") {
  const double eps = 0.125, a = std::sqrt(eps), b = 1.0 / std::sqrt(eps);
  const double rho_bar = std::pow(b, -1.5);
  const GasModel model = GasModel::normalized(2.0, eps * std::pow(b, -3.0), 3);
  const State s0 = pulse_state(model, eps, a, b, rho_bar, 128);
  SolverConfig c;
  c.N = 128;
  const double T = 0.05;
  auto run = [&](int steps) {
    State s = s0;
    for (int k = 0; k < steps; ++k) advance_step(model, rho_bar, s, eps, T / steps, c);
    return s;
  };
  const State s1 = run(20), s2 = run(40), s4 = run(80);
  double d12 = 0.0, d24 = 0.0;
  for (std::size_t i = 0; i < s1.size(); ++i) {
    d12 = std::max(d12, std::abs(s1.rho[i] - s2.rho[i]) + std::abs(s1.m[i] - s2.m[i]));
    d24 = std::max(d24, std::abs(s2.rho[i] - s4.rho[i]) + std::abs(s2.m[i] - s4.m[i]));
  }
  INFO("d12 " << d12 << " d24 " << d24);
  CHECK(d12 / d24 >= 1.8);
}

TEST_CASE("pulse run: positivity, energy decay and mass balance") {
  const double eps = 0.125, a = std::sqrt(eps), b = 1.0 / std::sqrt(eps);
  const double rho_bar = std::pow(b, -1.5);
  const GasModel model = GasModel::normalized(2.0, eps * std::pow(b, -3.0), 3);
  const std::size_t N = 256;
  const State s0 = pulse_state(model, eps, a, b, rho_bar, N);
  SolverConfig c;
  c.N = N;
  c.t_final = 0.5;
  c.max_dt = 1.0;
  const Trajectory tr = run_simulation(model, s0, eps, rho_bar, c, quadratic_schedule(0.5, 16));
  REQUIRE(tr.snapshots.size() == 17);
  const std::vector<double> w = radial_weights(tr.snapshots[0].grid, 2.0);
  double prev = 1e300;
  for (const auto& s : tr.snapshots) {
    CHECK(*std::min_element(s.rho.begin(), s.rho.end()) > 0.0);
    double E = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) E += w[i] * relative_energy_density(model, rho_bar, s.rho[i], s.m[i]);
    CHECK(E <= prev * (1.0 + 1e-12));
    prev = E;
  }
  const double mass0 = integrate_nodal(w, tr.snapshots.front().rho);
  const double mass1 = integrate_nodal(w, tr.snapshots.back().rho);
  const double flux = tr.records.back().boundary_mass_flux;
  INFO("mass change " << mass1 - mass0 << " boundary flux " << flux);
  CHECK(std::abs((mass1 - mass0) - flux) <= 2e-3 * mass0);
}

TEST_CASE("run_simulation rejects a schedule that does not start at the initial time") {
  const GasModel model = GasModel::normalized(2.0, 0.01, 3);
  const RadialGrid g(0.5, 2.0, 32);
  SolverConfig c;
  c.N = 32;
  CHECK_THROWS_AS(run_simulation(model, uniform_state(g, 0.5), 0.1, 0.5, c, {0.1, 0.5, 1.0}), ConfigError);
}
