#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "radeuler/config.hpp"
#include "radeuler/errors.hpp"
#include "radeuler/output.hpp"

using namespace radeuler;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"({
  "model": {"gamma": 2.0, "n": 3},
  "plan": {"ladder": [0.25, 0.125]},
  "profile": {"kind": "equilibrium"},
  "diagnostics": {"window": [0.8, 1.6]}
})";

std::vector<std::string> errors_of(const std::string& text) {
  try {
    (void)parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.messages();
  }
  return {};
}

bool any_contains(const std::vector<std::string>& msgs, const std::string& needle) {
  for (const auto& m : msgs) {
    if (m.find(needle) != std::string::npos) return true;
  }
  return false;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("radeuler_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("minimal config gets defaults") {
  const RunConfig c = parse_config_text(kMinimal);
  CHECK(c.model.gamma == 2.0);
  CHECK_FALSE(c.model.kappa.has_value());
  CHECK_FALSE(c.plan.k1.has_value());
  CHECK(c.plan.budget == 2.0);
  CHECK(c.solver.cells_per_viscous_length == 64.0);
  CHECK(c.output.has("json"));
  CHECK(c.gas_model().kappa() == doctest::Approx(0.125));
  CHECK(c.tests().size() == 5);
  const BudgetReport rep = validate_scaling_plan(c.scaling_plan(), c.gas_model());
  CHECK(rep.all_pass);
  for (const auto& l : rep.levels) CHECK(l.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("cross-field violations") {
  std::string text = kMinimal;
  text.replace(text.find("\"ladder\""), 0, "\"k1\": 2.0, ");
  auto msgs = errors_of(text);
  REQUIRE(msgs.size() == 1);
  CHECK(msgs[0].find("k1 >= n") != std::string::npos);

  text = kMinimal;
  text.replace(text.find("\"window\""), 0, "\"cauchy_q\": 1.8, ");
  msgs = errors_of(text);
  REQUIRE(msgs.size() == 1);
  CHECK(msgs[0].find("momentum exponent") != std::string::npos);

  text = kMinimal;
  text.replace(text.find("[0.25, 0.125]"), 13, "[0.125, 0.25]");
  CHECK_FALSE(errors_of(text).empty());
}

TEST_CASE("structural errors are all collected") {
  const std::string text = R"({
    "model": {"gamma": 2.0, "n": 3},
    "plan": {"ladder": [0.25], "k1": 2},
    "profile": {"kind": "gaussian_pulse", "widht": 0.3},
    "solver": {"cfl": "fast"},
    "diagnostics": {"window": [0.8, 1.6]},
    "extra": 1
  })";
  const auto msgs = errors_of(text);
  CHECK(msgs.size() >= 4);
  CHECK(any_contains(msgs, "widht"));
  CHECK(any_contains(msgs, "solver.cfl"));
  CHECK(any_contains(msgs, "extra"));
  CHECK(any_contains(msgs, "k1"));

  CHECK(any_contains(errors_of(R"({"plan": {"ladder": [0.5]}})"), "model"));
  CHECK(any_contains(errors_of("{not json"), "not valid JSON"));
  CHECK_THROWS_AS(parse_config_file("/nonexistent/radeuler.json"), ConfigError);
}

TEST_CASE("emit and parse round trip") {
  const RunConfig c = parse_config_text(kMinimal);
  const std::string once = emit_config(c);
  const std::string twice = emit_config(parse_config_text(once));
  CHECK(once == twice);
  CHECK(once.find("\"k1\": \"canonical\"") != std::string::npos);
}

TEST_CASE("table paths resolve against the config directory") {
  const fs::path dir = scratch("table");
  std::ofstream(dir / "profile.csv") << "# r, rho\n0.5, 1.0\n1.0, 2.0\n3.0, 0.0\n";
  std::string text = kMinimal;
  text.replace(text.find("{\"kind\": \"equilibrium\"}"), 23, R"({"kind": "table", "table_path": "profile.csv"})");
  const RunConfig c = parse_config_text(text, dir.string());
  CHECK(c.profile.table.size() == 3);
  CHECK(c.profile.density(0.75) == doctest::Approx(1.5));
  CHECK(any_contains(errors_of(text), "profile.csv"));
  fs::remove_all(dir);
}

TEST_CASE("sha256 known digests") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("atomic write creates directories and leaves no temporary") {
  const fs::path dir = scratch("atomic");
  const fs::path target = dir / "a" / "b" / "file.txt";
  atomic_write(target.string(), "first");
  atomic_write(target.string(), "second");
  CHECK(read_file(target.string()) == "second");
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(target.parent_path())) {
    (void)e;
    ++n;
  }
  CHECK(n == 1);
  CHECK_THROWS_AS(read_file((dir / "missing").string()), IoError);
  fs::remove_all(dir);
}

TEST_CASE("snapshot round trip is exact") {
  const GasModel model = GasModel::normalized(1.4, 1e-3, 2);
  const RadialGrid g(0.3, 3.0, 8);
  std::vector<double> rho(9), m(9);
  for (std::size_t i = 0; i <= 8; ++i) {
    rho[i] = 1.0 / 3.0 + 0.1 * std::sqrt(static_cast<double>(i));
    m[i] = -std::exp(-static_cast<double>(i)) / 7.0;
  }
  const State s(g, 0.123456789, rho, m);
  const ParsedSnapshot p = parse_snapshot(format_snapshot(s, 0.09, model, 0.2));
  CHECK(p.header.t == s.t);
  CHECK(p.header.N == 8);
  CHECK(p.header.gamma == 1.4);
  CHECK(p.header.delta == 1e-3);
  CHECK(p.header.rho_bar == 0.2);
  CHECK(p.rho == rho);
  CHECK(p.m == m);
  CHECK(p.r.size() == 9);
  CHECK_THROWS(parse_snapshot("garbage"));
}

TEST_CASE("manifest lists files sorted with hashes") {
  const fs::path d1 = scratch("manifest1"), d2 = scratch("manifest2");
  std::string m1, m2;
  {
    OutputSet out(d1.string());
    out.write("z.csv", "1\n");
    out.write("a/b.json", "{}\n");
    m1 = out.write_manifest(R"({"command": "test"})");
  }
  {
    OutputSet out(d2.string());
    out.write("a/b.json", "{}\n");
    out.write("z.csv", "1\n");
    m2 = out.write_manifest(R"({"command": "test"})");
  }
  CHECK(m1 == m2);
  CHECK(m1.find("a/b.json") < m1.find("z.csv"));
  CHECK(m1.find(sha256_hex("1\n")) != std::string::npos);
  CHECK(read_file((d1 / "manifest.json").string()) == m1);
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST_CASE("csv and number formatting") {
  CHECK(csv({"x", "y"}, {{1.0, 0.1}}) == "x,y\n1,0.10000000000000001\n");
  CHECK(std::stod(fmt17(1.0 / 3.0)) == 1.0 / 3.0);
}
