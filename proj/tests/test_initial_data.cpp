#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "radeuler/errors.hpp"
#include "radeuler/initial_data.hpp"

using namespace radeuler;

namespace {

const GasModel kModel = GasModel::normalized(2.0, 0.01, 3);
const LevelParameters kLevel{0.125, std::sqrt(0.125), 1.0 / std::sqrt(0.125), 0.2};

ProfileSpec pulse() {
  ProfileSpec p;
  p.kind = ProfileKind::gaussian_pulse;
  p.amplitude = 1.0;
  p.center = 1.2;
  p.width = 0.3;
  p.velocity_amplitude = 0.5;
  p.velocity_center = 1.3;
  return p;
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("equilibrium profile is the far-field state exactly") {
  ProfileSpec p;
  const RadialGrid g(kLevel.a, kLevel.b, 100);
  const State s = build_initial_data(p, kModel, kLevel, g);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s.rho[i] == kLevel.rho_bar);
    CHECK(s.m[i] == 0.0);
  }
  CHECK(verify_compatibility(s, kModel, kLevel.eps, kLevel.rho_bar).pass);
}

TEST_CASE("pulse data satisfy the boundary conditions and compatibility") {
  for (std::size_t N : {64, 256, 1024}) {
    const RadialGrid g(kLevel.a, kLevel.b, N);
    const State s = build_initial_data(pulse(), kModel, kLevel, g);
    CHECK(s.m.front() == 0.0);
    CHECK(s.m.back() == 0.0);
    CHECK(s.rho.back() == kLevel.rho_bar);
    for (std::size_t i = 0; i <= kBlendMarginCells - 2; ++i) {
      CHECK(s.rho[i] == s.rho[0]);
      CHECK(s.m[i] == 0.0);
      CHECK(s.rho[N - i] == kLevel.rho_bar);
      CHECK(s.m[N - i] == 0.0);
    }
    const CompatibilityReport rep = verify_compatibility(s, kModel, kLevel.eps, kLevel.rho_bar);
    for (const auto& r : rep.residuals) INFO(r.name << " " << r.relative);
    CHECK(rep.pass);
    CHECK(rep.residuals.size() >= 6);
  }
}

TEST_CASE("interior values follow the profile above the floor") {
  const RadialGrid g(kLevel.a, kLevel.b, 2000);
  const State s = build_initial_data(pulse(), kModel, kLevel, g);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double r = g.r(i);
    CHECK(s.rho[i] >= kLevel.rho_bar * (1.0 - 1e-12));
    if (std::abs(r - 1.2) < 0.05) CHECK(s.rho[i] == doctest::Approx(kLevel.rho_bar + std::exp(-std::pow((r - 1.2) / 0.3, 2))).epsilon(1e-3));
  }
}

TEST_CASE("a user floor above rho_bar lifts the data") {
  ProfileSpec p = pulse();
  p.floor = 0.5;
  const RadialGrid g(kLevel.a, kLevel.b, 200);
  const State s = build_initial_data(p, kModel, kLevel, g);
  CHECK(s.rho[100] > 0.5);
  CHECK(s.rho.back() == kLevel.rho_bar);
}

TEST_CASE("broken data fail the compatibility check") {
  const RadialGrid g(kLevel.a, kLevel.b, 128);
  State s = build_initial_data(pulse(), kModel, kLevel, g);
  s.m[0] = 0.1;
  const CompatibilityReport rep = verify_compatibility(s, kModel, kLevel.eps, kLevel.rho_bar);
  CHECK_FALSE(rep.pass);
  s = build_initial_data(pulse(), kModel, kLevel, g);
  s.rho[127] *= 1.01;
  CHECK_FALSE(verify_compatibility(s, kModel, kLevel.eps, kLevel.rho_bar).pass);
}

TEST_CASE("too coarse a grid for blending is rejected") {
  CHECK_THROWS_AS(build_initial_data(pulse(), kModel, kLevel, RadialGrid(kLevel.a, kLevel.b, 8)), ConfigError);
}

TEST_CASE("profile kinds by name") {
  CHECK(profile_kind_from_string("smoothed_jump") == ProfileKind::smoothed_jump);
  CHECK(to_string(ProfileKind::gaussian_pulse) == "gaussian_pulse");
  CHECK_THROWS_AS(profile_kind_from_string("shock"), ConfigError);
}

TEST_CASE("table profiles") {
  ProfileSpec p;
  p.kind = ProfileKind::table;
  p.table_path = temp_file("radeuler_table_ok.txt", "# r, rho\n0.5, 1.0\n1.0, 2.0\n2.0 0.0\n");
  load_profile_table(p);
  REQUIRE(p.table.size() == 3);
  CHECK(p.density(0.75) == doctest::Approx(1.5));
  CHECK(p.density(0.1) == 1.0);
  CHECK(p.density(3.0) == 0.0);
  const State s = build_initial_data(p, kModel, kLevel, RadialGrid(kLevel.a, kLevel.b, 256));
  CHECK(verify_compatibility(s, kModel, kLevel.eps, kLevel.rho_bar).pass);

  ProfileSpec bad;
  bad.kind = ProfileKind::table;
  bad.table_path = temp_file("radeuler_table_bad.txt", "1.0 1.0\n0.5 2.0\n");
  CHECK_THROWS_AS(load_profile_table(bad), ConfigError);
  bad.table_path = temp_file("radeuler_table_neg.txt", "0.5 1.0\n1.0 -2.0\n");
  CHECK_THROWS_AS(load_profile_table(bad), ConfigError);
  bad.table_path = "/nonexistent/table.txt";
  CHECK_THROWS_AS(load_profile_table(bad), IoError);
}
