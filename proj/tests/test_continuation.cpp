#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "radeuler/continuation.hpp"
#include "radeuler/errors.hpp"

using namespace radeuler;

namespace {

SweepConfig pulse_sweep(std::vector<double> ladder, double T) {
  const GasModel model = GasModel::normalized(2.0, 0.0, 3);
  ScalingPlan plan(std::move(ladder), Exponent::canonical(), Exponent::canonical(), PowerRule{1.0, 0.5},
                   PowerRule{1.0, -0.5}, 2.0, model);
  ProfileSpec p;
  p.kind = ProfileKind::gaussian_pulse;
  p.center = 1.2;
  p.width = 0.3;
  SolverConfig s;
  s.t_final = T;
  s.max_dt = 1.0;
  return SweepConfig{plan, p, model, s, ResolutionRule{16.0, 64, 4096}, 16, Window{0.8, 1.6}, 0};
}

SampledField field(const std::vector<double>& t, const std::vector<double>& r, auto rho, auto m) {
  SampledField f{t, r, {}, {}};
  for (double tk : t) {
    for (double rj : r) {
      f.rho.push_back(rho(tk, rj));
      f.m.push_back(m(tk, rj));
    }
  }
  return f;
}

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> x;
  for (int i = 0; i <= n; ++i) x.push_back(lo + (hi - lo) * i / n);
  return x;
}

}  // namespace

TEST_CASE("resolution rule") {
  const ResolutionRule rule{32.0, 64, 10000};
  CHECK(rule.cells(0.5, 2.0, 0.25) == static_cast<std::size_t>(std::ceil(32.0 * 1.5 / 0.5)));
  CHECK(rule.cells(0.5, 0.6, 0.25) == 64);
  CHECK(ResolutionRule{32.0, 64, 100}.cells(0.1, 10.0, 0.01) == 100);
}

TEST_CASE("exponent validation follows the admissible range") {
  const GasModel model = GasModel::normalized(2.0, 0.0, 3);
  CHECK_NOTHROW(validate_exponents(1.0, 1.0, model));
  CHECK_NOTHROW(validate_exponents(2.9, 1.7, model));
  try {
    validate_exponents(1.0, 3.0 * 3.0 / 5.0, model);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.messages().size() == 1);
    CHECK(std::string(e.what()).find("convergence theorem") != std::string::npos);
  }
  CHECK_THROWS_AS(validate_exponents(3.0, 1.0, model), ConfigError);
  CHECK_THROWS_AS(validate_exponents(0.5, 1.0, model), ConfigError);
}

TEST_CASE("richardson extrapolation removes a term linear in eps") {
  const std::vector<double> t{0.0, 1.0}, r{1.0, 2.0, 3.0};
  auto limit = [](double tt, double rr) { return std::sin(rr) + tt; };
  const SampledField fine = field(t, r, [&](double a, double b) { return limit(a, b) + 0.125 * 3.0; },
                                  [&](double a, double b) { return limit(a, b) - 0.125; });
  const SampledField coarse = field(t, r, [&](double a, double b) { return limit(a, b) + 0.25 * 3.0; },
                                    [&](double a, double b) { return limit(a, b) - 0.25; });
  const SampledField L = richardson_extrapolate(fine, 0.125, coarse, 0.25);
  for (std::size_t k = 0; k < t.size(); ++k) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      CHECK(L.rho_at(k, j) == doctest::Approx(limit(t[k], r[j])).epsilon(1e-14));
      CHECK(L.m_at(k, j) == doctest::Approx(limit(t[k], r[j])).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(richardson_extrapolate(coarse, 0.25, fine, 0.125), DomainError);
}

TEST_CASE("weak continuity residual vanishes on an exact solution") {
  // r^2 m = -sin r and rho = 1 + t cos(r) / r^2 solve rho_t + r^-2 (r^2 m)_r = 0.
  const TestFunction phi = TestFunction::initial_cutoff(0.3, 0.8, 0.9, 1.7) + TestFunction::bump(0.1, 0.9, 1.0, 1.5);
  const std::vector<double> t = grid(0.0, 1.0, 20);
  std::vector<double> prev;
  for (int n : {100, 200, 400}) {
    const std::vector<double> r = grid(0.9, 1.7, n);
    const SampledField f = field(t, r, [](double tt, double rr) { return 1.0 + tt * std::cos(rr) / (rr * rr); },
                                 [](double, double rr) { return -std::sin(rr) / (rr * rr); });
    const SampledField init{{0.0}, r, std::vector<double>(f.rho.begin(), f.rho.begin() + r.size()), {}};
    prev.push_back(std::abs(weak_continuity(f, init, phi, 3)));
  }
  CHECK(prev[2] < 1e-5);
  CHECK(prev[0] / prev[2] > 10.0);

  // A field that is not a solution leaves an O(1) residual.
  const std::vector<double> r = grid(0.9, 1.7, 200);
  const SampledField bad = field(t, r, [](double, double) { return 1.0; }, [](double, double) { return 0.3; });
  const SampledField init{{0.0}, r, std::vector<double>(r.size(), 1.0), {}};
  CHECK(std::abs(weak_continuity(bad, init, TestFunction::bump(0.1, 0.9, 1.0, 1.5), 3)) > 1e-3);
}

TEST_CASE("weak momentum residual vanishes on a resting uniform gas") {
  const GasModel model = GasModel::normalized(2.0, 0.0, 3);
  const std::vector<double> t = grid(0.0, 1.0, 10), r = grid(0.9, 1.7, 400);
  const SampledField f = field(t, r, [](double, double) { return 0.7; }, [](double, double) { return 0.0; });
  const SampledField init{{0.0}, r, std::vector<double>(r.size(), 0.7), std::vector<double>(r.size(), 0.0)};
  const TestFunction phi = TestFunction::bump(0.1, 0.9, 1.0, 1.6);
  CHECK(std::abs(weak_momentum(f, init, phi, model)) < 1e-6);
}

TEST_CASE("sampling extends by zero outside the annulus") {
  const GasModel model = GasModel::normalized(2.0, 0.0, 3);
  const RadialGrid g(0.5, 2.0, 16);
  const State s(g, 0.0, std::vector<double>(17, 1.0), std::vector<double>(17, 0.25));
  const Trajectory tr{0.25, 1.0, model, {s}, {SampleRecord{}}};
  const SampledField f = sample_trajectory(tr, {0.2, 1.0, 2.5});
  CHECK(f.rho_at(0, 0) == 0.0);
  CHECK(f.rho_at(0, 1) == doctest::Approx(1.0));
  CHECK(f.m_at(0, 2) == 0.0);
}

TEST_CASE("sweep: levels, budget and window check") {
  const SweepConfig cfg = pulse_sweep({0.25, 0.125, 0.0625}, 0.3);
  const SweepResult res = run_sweep(cfg);
  REQUIRE(res.levels.size() == 3);
  CHECK(res.budget.all_pass);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(res.levels[k].index == k);
    CHECK(res.levels[k].compatibility.pass);
    CHECK(res.levels[k].trajectory.snapshots.size() == 17);
    CHECK(res.levels[k].cells == cfg.resolution.cells(res.levels[k].level.a, res.levels[k].level.b, res.levels[k].level.eps));
  }
  const CauchyTable ct = cauchy_lp_differences(res, 1.0, 1.0);
  CHECK(ct.rows.size() == 2);
  CHECK(ct.rho_decreasing);

  SweepConfig bad = cfg;
  bad.K = Window{0.3, 1.6};  // a(1/4) = 0.5
  CHECK_THROWS_AS(run_sweep(bad), ConfigError);
}

TEST_CASE("sweep results do not depend on the thread count") {
  const SweepConfig cfg = pulse_sweep({0.25, 0.125}, 0.1);
  setenv("RADIAL_EULER_THREADS", "1", 1);
  CHECK(sweep_thread_count(8) == 1);
  const SweepResult one = run_sweep(cfg);
  setenv("RADIAL_EULER_THREADS", "4", 1);
  CHECK(sweep_thread_count(2) == 2);
  const SweepResult four = run_sweep(cfg);
  unsetenv("RADIAL_EULER_THREADS");
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(one.levels[k].trajectory.snapshots.back().rho == four.levels[k].trajectory.snapshots.back().rho);
    CHECK(one.levels[k].trajectory.snapshots.back().m == four.levels[k].trajectory.snapshots.back().m);
  }
}

TEST_CASE("entropy inequality check and its input validation") {
  const SweepConfig cfg = pulse_sweep({0.25, 0.125}, 0.4);
  const SweepResult res = run_sweep(cfg);
  const std::vector<TestFunction> tests = default_test_catalog(0.4, cfg.K);
  const EntropyCheckReport rep = entropy_inequality_check(res, {"half_s2"}, tests);
  CHECK(rep.rows.size() == 5);
  CHECK(rep.energy.size() == 2);
  CHECK(rep.pass);
  for (const auto& e : rep.energy) CHECK(e.final <= e.initial);
  CHECK_THROWS_AS(entropy_inequality_check(res, {"half_s_abs_s"}, tests), ConfigError);
  CHECK_THROWS_AS(entropy_inequality_check(res, {"half_s2"}, {TestFunction::initial_cutoff(0.1, 0.2, 0.9, 1.5)}),
                  ConfigError);
  CHECK_THROWS_AS(entropy_inequality_check(res, {"half_s2"}, {TestFunction::bump(0.1, 0.3, 0.9, 1.5) * -1.0}),
                  ConfigError);
}

TEST_CASE("weak residual table has one row per level and test plus the extrapolation") {
  const SweepConfig cfg = pulse_sweep({0.25, 0.125}, 0.3);
  const SweepResult res = run_sweep(cfg);
  const std::vector<TestFunction> tests = default_test_catalog(0.3, cfg.K);
  const WeakResidualTable t = weak_euler_residual(res, tests, tests);
  CHECK(t.rows.size() == 5 * 3);
  CHECK_THROWS_AS(weak_euler_residual(res, {TestFunction::bump(0.1, 0.5, 0.9, 1.5)},
                                      {TestFunction::initial_cutoff(0.1, 0.2, 0.0, 1.5)}),
                  ConfigError);
}
