#include <cmath>
#include <random>

#include "doctest.h"
#include "radeuler/errors.hpp"
#include "radeuler/model.hpp"

using namespace radeuler;

namespace {

// R(rho) = int_0^rho sqrt(p'(s))/s ds by composite Simpson after s = rho y^k; with k >= 4 the
// transformed integrand is smooth and vanishes at y = 0.
double riemann_R_oracle(double gamma, double kappa, double delta, double rho) {
  const double k = 2.0 * std::ceil(2.0 / (gamma - 1.0)) + 2.0;
  const int n = 20000;
  auto f = [&](double y) {
    if (y == 0.0) return 0.0;
    const double s = rho * std::pow(y, k);
    const double dp = kappa * gamma * std::pow(s, gamma - 1.0) + 2.0 * delta * s;
    return std::sqrt(dp) / s * rho * k * std::pow(y, k - 1.0);
  };
  double acc = f(0.0) + f(1.0);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(static_cast<double>(i) / n);
  return acc / (3.0 * n);
}

}  // namespace

TEST_CASE("pressure and its derivative") {
  const GasModel m(1.4, 0.7, 0.01, 3);
  for (double rho : {0.05, 0.7, 3.0}) {
    const PressureValue v = pressure_delta(m, rho);
    CHECK(v.p == doctest::Approx(0.7 * std::pow(rho, 1.4) + 0.01 * rho * rho).epsilon(1e-14));
    CHECK(v.dp == doctest::Approx(0.7 * 1.4 * std::pow(rho, 0.4) + 0.02 * rho).epsilon(1e-14));
    CHECK(m.pressure_euler(rho) == doctest::Approx(0.7 * std::pow(rho, 1.4)).epsilon(1e-14));
  }
}

TEST_CASE("normalized kappa and derived exponents") {
  const GasModel m = GasModel::normalized(2.0, 0.0, 2);
  CHECK(m.kappa() == doctest::Approx(0.125));
  CHECK(m.theta() == doctest::Approx(0.5));
  CHECK(m.lambda() == doctest::Approx(0.5));
  CHECK(GasModel::normalized(1.4, 0.0, 3).lambda() == doctest::Approx(2.0));
}

TEST_CASE("invalid models are rejected") {
  CHECK_THROWS_AS(GasModel(1.0, 1.0, 0.0, 3), ConfigError);
  CHECK_THROWS_AS(GasModel(2.0, -1.0, 0.0, 3), ConfigError);
  CHECK_THROWS_AS(GasModel(2.0, 1.0, -0.1, 3), ConfigError);
  CHECK_THROWS_AS(GasModel(2.0, 1.0, 0.0, 1), ConfigError);
}

TEST_CASE("R(rho) = rho^theta for the normalized euler pressure") {
  for (double g : {1.4, 2.0, 3.0}) {
    const GasModel m = GasModel::normalized(g, 0.0, 3);
    for (double rho : {0.01, 0.5, 1.0, 7.0}) {
      CHECK(m.riemann_R(rho) == doctest::Approx(std::pow(rho, m.theta())).epsilon(1e-12));
    }
  }
}

TEST_CASE("R(rho) with the quadratic correction matches an independent quadrature") {
  for (double g : {1.4, 2.0, 3.0}) {
    const GasModel m = GasModel::normalized(g, 0.05, 3);
    for (double rho : {0.1, 1.0, 4.0}) {
      const double oracle = riemann_R_oracle(g, m.kappa(), 0.05, rho);
      CHECK(m.riemann_R(rho) == doctest::Approx(oracle).epsilon(1e-8));
    }
  }
}

TEST_CASE("riemann invariants") {
  const GasModel m = GasModel::normalized(2.0, 0.0, 3);
  const RiemannInvariants ri = riemann_invariants(m, 4.0, -2.0);
  CHECK(ri.w == doctest::Approx(-0.5 + 2.0));
  CHECK(ri.z == doctest::Approx(-0.5 - 2.0));
  CHECK(ri.lambda2 - ri.lambda1 == doctest::Approx(2.0 * std::sqrt(2.0 * 0.125 * 4.0)));
}

TEST_CASE("relative energy matches the closed form and is nonnegative") {
  const double gamma = 1.6, kappa = 0.3, delta = 0.02, rho_bar = 0.4;
  const GasModel m(gamma, kappa, delta, 3);
  auto h = [&](double r) { return kappa * std::pow(r, gamma) / (gamma - 1.0) + delta * r * r; };
  auto dh = [&](double r) { return kappa * gamma * std::pow(r, gamma - 1.0) / (gamma - 1.0) + 2.0 * delta * r; };
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> R(0.01, 5.0), M(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double rho = R(rng), mm = M(rng);
    const double exact = 0.5 * mm * mm / rho + h(rho) - h(rho_bar) - dh(rho_bar) * (rho - rho_bar);
    CHECK(relative_energy_density(m, rho_bar, rho, mm) == doctest::Approx(exact).epsilon(1e-11));
    CHECK(relative_energy_density(m, rho_bar, rho, mm) >= 0.0);
  }
  CHECK(relative_energy_density(m, rho_bar, rho_bar, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("energy lower bound constant is a valid lower bound") {
  const GasModel m = GasModel::normalized(2.0, 0.0, 3);
  const double rho_bar = 0.3;
  const double c1 = energy_lower_bound_constant(m, rho_bar, 0.05, 3.0);
  CHECK(c1 > 0.0);
  for (int i = 0; i <= 500; ++i) {
    const double rho = 0.05 * std::pow(60.0, i / 500.0);
    const double rhs = rho * std::pow(std::pow(rho, m.theta()) - std::pow(rho_bar, m.theta()), 2.0);
    CHECK(relative_internal_energy(m, rho_bar, rho) >= c1 * rhs * (1.0 - 1e-9));
  }
}

TEST_CASE("canonical scaling plan spends exactly the budget") {
  for (int n : {2, 3}) {
    for (double g : {1.4, 5.0 / 3.0, 2.0, 3.0}) {
      for (double bc : {1.5, 2.0, 3.0}) {
        const GasModel model = GasModel::normalized(g, 0.0, n);
        const ScalingPlan plan({0.5, 0.25, 0.125, 0.01}, Exponent::canonical(), Exponent::canonical(),
                               PowerRule{1.0, 0.5}, PowerRule{bc, -0.5}, 2.0, model);
        const BudgetReport rep = validate_scaling_plan(plan, model);
        CHECK(rep.all_pass);
        for (const auto& l : rep.levels) CHECK(l.value == 2.0);
      }
    }
  }
}

TEST_CASE("scaling plan: delta and rho_bar follow the exponents") {
  const GasModel model = GasModel::normalized(2.0, 0.0, 3);
  const ScalingPlan plan({0.25}, Exponent::of(4.0), Exponent::of(2.0), PowerRule{1.0, 0.5}, PowerRule{1.0, -0.5},
                         2.0, model);
  const double b = plan.b(0.25);
  CHECK(b == doctest::Approx(2.0));
  CHECK(plan.delta(0.25) == doctest::Approx(0.25 * std::pow(2.0, -4.0)));
  CHECK(plan.rho_bar(0.25) == doctest::Approx(0.25));
  CHECK(plan.budget_value(0.25) == doctest::Approx(std::pow(0.25, 2.0) * 8.0 + std::pow(2.0, -4.0) * 8.0));
}

TEST_CASE("scaling plan rejects exponents below the budget minimum") {
  const GasModel model = GasModel::normalized(2.0, 0.0, 3);
  auto make = [&](Exponent k1, Exponent k2) {
    return ScalingPlan({0.25}, k1, k2, PowerRule{1.0, 0.5}, PowerRule{1.0, -0.5}, 2.0, model);
  };
  CHECK_THROWS_AS(make(Exponent::of(2.0), Exponent::canonical()), ConfigError);
  CHECK_THROWS_AS(make(Exponent::canonical(), Exponent::of(1.0)), ConfigError);
  try {
    make(Exponent::of(2.0), Exponent::canonical());
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("k1") != std::string::npos);
  }
}

TEST_CASE("radial grid") {
  const RadialGrid g(0.5, 2.5, 8);
  CHECK(g.nodes() == 9);
  CHECK(g.h() == doctest::Approx(0.25));
  CHECK(g.r(8) == 2.5);
  CHECK(g.r_half(0) == doctest::Approx(0.625));
  CHECK_THROWS(RadialGrid(1.0, 0.5, 8));
}
