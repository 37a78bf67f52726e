#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "radeuler/entropy.hpp"
#include "radeuler/errors.hpp"

using namespace radeuler;

namespace {

// B(1/2, lambda+1) through Gamma functions.
double c_lambda(double lambda) {
  return std::sqrt(std::numbers::pi) * std::exp(std::lgamma(lambda + 1.0) - std::lgamma(lambda + 1.5));
}

std::vector<StatePoint> random_states(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lr(std::log(0.1), std::log(10.0)), u(-5.0, 5.0);
  std::vector<StatePoint> out;
  for (int i = 0; i < count; ++i) {
    const double rho = std::exp(lr(rng));
    out.push_back({rho, rho * u(rng)});
  }
  return out;
}

}  // namespace

TEST_CASE("kernel moments against gamma-function closed forms") {
  for (double g : {1.4, 2.0, 3.0}) {
    const GasModel model = GasModel::normalized(g, 0.0, 3);
    const double lam = model.lambda();
    const KernelMoments km = KernelMoments::of(lam);
    CHECK(km.c_lambda == doctest::Approx(c_lambda(lam)).epsilon(1e-13));
    CHECK(km.d_lambda == doctest::Approx(c_lambda(lam) / (2.0 * lam + 3.0)).epsilon(1e-13));
  }
}

TEST_CASE("psi = 1 and psi = s give mass and momentum; their fluxes are the Euler fluxes") {
  for (double g : {1.4, 2.0, 3.0}) {
    const GasModel model = GasModel::normalized(g, 0.0, 3);
    const double c = c_lambda(model.lambda());
    const EntropyPair one(GeneratingFunction::one(), model), ess(GeneratingFunction::s(), model);
    for (const auto& st : random_states(3, 50)) {
      const PairValue a = one.value(st.rho, st.m), b = ess.value(st.rho, st.m);
      CHECK(a.eta == doctest::Approx(c * st.rho).epsilon(1e-10));
      CHECK(a.q == doctest::Approx(c * st.m).epsilon(1e-10));
      CHECK(b.eta == doctest::Approx(c * st.m).epsilon(1e-10).scale(st.rho));
      CHECK(b.q == doctest::Approx(c * (st.m * st.m / st.rho + model.pressure_euler(st.rho))).epsilon(1e-10));
    }
  }
}

TEST_CASE("psi = s^2/2 reproduces a multiple of the mechanical energy") {
  for (double g : {1.4, 2.0, 3.0}) {
    const GasModel model = GasModel::normalized(g, 0.0, 3);
    const double c = c_lambda(model.lambda());
    const EntropyPair half(GeneratingFunction::half_s2(), model);
    const MechanicalEnergyPair mech(model);
    for (const auto& st : random_states(5, 30)) {
      const double theta = model.theta(), lam = model.lambda();
      const double eta = c * (0.5 * st.m * st.m / st.rho + 0.5 * std::pow(st.rho, 2.0 * theta + 1.0) / (2.0 * lam + 3.0));
      CHECK(half.value(st.rho, st.m).eta == doctest::Approx(eta).epsilon(1e-10));
      // eta* = m^2/(2 rho) + kappa rho^gamma/(gamma-1)
      const double mech_eta = 0.5 * st.m * st.m / st.rho + model.kappa() * std::pow(st.rho, g) / (g - 1.0);
      CHECK(mech.value(st.rho, st.m).eta == doctest::Approx(mech_eta).epsilon(1e-13));
      CHECK(half.value(st.rho, st.m).eta == doctest::Approx(c * mech_eta).epsilon(1e-10));
    }
  }
}

TEST_CASE("entropy PDE residual is small for admissible pairs") {
  const std::vector<StatePoint> box = state_box(0.1, 10.0, 5.0, 13, 11);
  for (double g : {1.4, 2.0, 3.0}) {
    const GasModel model = GasModel::normalized(g, 0.0, 3);
    CHECK(entropy_pde_residual(MechanicalEnergyPair(model), model, box).max <= 1e-6);
    for (const char* name : {"one", "s", "half_s2", "half_s_abs_s"}) {
      const EntropyPair p(GeneratingFunction::by_name(name), model);
      INFO(name << " gamma " << g);
      CHECK(entropy_pde_residual(p, model, box).max <= 1e-6);
    }
  }
}

TEST_CASE("a pair that is not an entropy pair fails the PDE check") {
  const GasModel model = GasModel::normalized(2.0, 0.0, 3);
  const FunctionPair bad("rho_u3", [](double rho, double m) {
    const double u = m / rho;
    return PairValue{rho * u * u * u, rho * u * u * u * u};
  });
  CHECK(entropy_pde_residual(bad, model, state_box(0.5, 2.0, 1.0, 5, 5)).max > 1e-2);
}

TEST_CASE("quadrature self-convergence under order doubling") {
  for (double g : {1.4, 2.0, 3.0}) {
    const GasModel model = GasModel::normalized(g, 0.0, 3);
    for (const char* name : {"half_s_abs_s", "sqrt_1_s2", "bump"}) {
      const EntropyPair lo(GeneratingFunction::by_name(name), model, 24), hi(GeneratingFunction::by_name(name), model, 48);
      double worst = 0.0;
      for (const auto& st : random_states(9, 40)) {
        const double a = lo.value(st.rho, st.m).eta, b = hi.value(st.rho, st.m).eta;
        worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
      }
      INFO(name << " gamma " << g);
      CHECK(worst < 1e-10);
    }
  }
}

TEST_CASE("weak entropy vanishes at vacuum along fixed velocity") {
  const GasModel model = GasModel::normalized(2.0, 0.0, 3);
  const EntropyPair p(GeneratingFunction::half_s_abs_s(), model);
  for (double rho : {1e-2, 1e-4, 1e-6}) CHECK(std::abs(p.value(rho, rho * 1.5).eta) < 10.0 * rho);
}

TEST_CASE("convex psi gives a convex entropy") {
  const GasModel model = GasModel::normalized(1.4, 0.0, 3);
  const EntropyPair p(GeneratingFunction::half_s2(), model);
  for (const auto& st : random_states(17, 20)) {
    const auto H = eta_hessian(p, st.rho, st.m);
    CHECK(H[0] > 0.0);
    CHECK(H[0] * H[2] - H[1] * H[1] >= -1e-6 * std::abs(H[0] * H[2]));
  }
}

TEST_CASE("mechanical energy gradient and hessian") {
  const GasModel model = GasModel::normalized(2.0, 0.0, 3);
  const MechanicalEnergyPair mech(model);
  const double rho = 1.3, m = 0.4;
  const PairGradient gr = mech.gradient(rho, m);
  const double u = m / rho;
  CHECK(gr.eta_m == doctest::Approx(u));
  CHECK(gr.eta_rho == doctest::Approx(-0.5 * u * u + model.kappa() * 2.0 / 1.0 * rho));
  const auto H = mechanical_energy_hessian(model, rho, m);
  const auto Hfd = eta_hessian(mech, rho, m);
  for (int i = 0; i < 3; ++i) CHECK(H[i] == doctest::Approx(Hfd[i]).epsilon(1e-5));
}

TEST_CASE("shifted pair vanishes with its gradient at the equilibrium") {
  const GasModel model = GasModel::normalized(2.0, 0.0, 3);
  const double rho_bar = 0.2;
  const ShiftedEntropyPair p(model, rho_bar);
  CHECK(std::abs(p.value(rho_bar, 0.0).eta) < 1e-12);
  const PairGradient g = p.gradient(rho_bar, 0.0);
  CHECK(std::abs(g.eta_rho) < 1e-8);
  CHECK(std::abs(g.eta_m) < 1e-8);
  CHECK(entropy_pde_residual(p, model, state_box(0.1, 10.0, 5.0, 7, 7)).max <= 1e-6);
}

TEST_CASE("generating function catalog") {
  for (const auto& name : GeneratingFunction::catalog()) CHECK(GeneratingFunction::by_name(name).name == name);
  CHECK_THROWS_AS(GeneratingFunction::by_name("cubic"), ConfigError);
  CHECK(GeneratingFunction::half_s2().convex);
  CHECK_FALSE(GeneratingFunction::half_s_abs_s().convex);
}
