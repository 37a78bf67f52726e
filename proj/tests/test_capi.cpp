// Exercises the library through the C header only.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "radeuler/radeuler.h"

namespace fs = std::filesystem;

namespace {

fs::path write_config(const std::string& name, const std::string& body) {
  const fs::path dir = fs::temp_directory_path() / ("radeuler_capi_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "config.json") << body;
  return dir;
}

const char* kEquilibrium = R"({
  "model": {"gamma": 2.0, "n": 3},
  "plan": {"ladder": [0.25, 0.125]},
  "profile": {"kind": "equilibrium"},
  "solver": {"t_final": 0.1, "samples": 4},
  "diagnostics": {"window": [0.8, 1.6]}
})";

}  // namespace

TEST_CASE("model functions") {
  re_model* model = nullptr;
  REQUIRE(re_model_create(2.0, 0.0, 0.0, 3, &model) == RE_OK);
  double p = 0.0, dp = 0.0;
  REQUIRE(re_model_pressure(model, 2.0, &p, &dp) == RE_OK);
  CHECK(p == doctest::Approx(0.125 * 4.0));
  CHECK(dp == doctest::Approx(0.125 * 4.0));

  double w = 0.0, z = 0.0;
  REQUIRE(re_model_riemann(model, 4.0, 2.0, &w, &z) == RE_OK);
  // theta = 1/2 at gamma = 2, so rho^theta = 2 and u = 0.5.
  CHECK(w == doctest::Approx(2.5));
  CHECK(z == doctest::Approx(-1.5));

  double e = 0.0;
  REQUIRE(re_model_relative_energy(model, 1.0, 3.0, 1.5, &e) == RE_OK);
  const double oracle = 0.5 * 1.5 * 1.5 / 3.0 + 0.125 * (9.0 - 1.0 - 2.0 * 2.0);
  CHECK(e == doctest::Approx(oracle));

  CHECK(re_model_pressure(model, -1.0, &p, &dp) != RE_OK);
  CHECK(std::string(re_last_error()).size() > 0);
  re_model_destroy(model);
}

TEST_CASE("argument and model errors") {
  re_model* model = nullptr;
  CHECK(re_model_create(2.0, 0.0, 0.0, 3, nullptr) == RE_ERR_ARGUMENT);
  CHECK(re_model_create(0.5, 0.0, 0.0, 3, &model) != RE_OK);
  CHECK(model == nullptr);
  CHECK(re_model_pressure(nullptr, 1.0, nullptr, nullptr) == RE_ERR_ARGUMENT);
  CHECK(re_config_load(nullptr, nullptr) == RE_ERR_ARGUMENT);
  CHECK(re_result_passed(nullptr) == 0);
  re_model_destroy(nullptr);
  re_config_destroy(nullptr);
  re_result_destroy(nullptr);
}

TEST_CASE("config errors carry the message") {
  const fs::path dir = write_config("bad", R"({"model": {"gamma": 2.0, "n": 3}, "plan": {"ladder": [0.5], "k1": 1}})");
  re_config* cfg = nullptr;
  CHECK(re_config_load((dir / "config.json").c_str(), &cfg) == RE_ERR_CONFIG);
  CHECK(cfg == nullptr);
  CHECK(std::string(re_last_error()).find("profile") != std::string::npos);
  CHECK(re_config_load((dir / "missing.json").c_str(), &cfg) == RE_ERR_CONFIG);
  fs::remove_all(dir);
}

TEST_CASE("run command through the C interface") {
  const fs::path dir = write_config("run", kEquilibrium);
  re_config* cfg = nullptr;
  REQUIRE(re_config_load((dir / "config.json").c_str(), &cfg) == RE_OK);
  CHECK(re_config_set_levels(cfg, 0) == RE_ERR_CONFIG);
  REQUIRE(re_config_set_output(cfg, (dir / "out").c_str()) == RE_OK);
  re_result* res = nullptr;
  REQUIRE(re_command_run(cfg, &res) == RE_OK);
  CHECK(re_result_passed(res) == 1);
  const std::string manifest = re_result_manifest(res);
  CHECK(manifest.find("\"files\"") != std::string::npos);
  CHECK(std::string(re_result_summary(res)).size() > 0);
  CHECK(fs::exists(dir / "out" / "manifest.json"));
  re_result_destroy(res);

  REQUIRE(re_config_set_levels(cfg, 2) == RE_OK);
  REQUIRE(re_config_set_output(cfg, (dir / "sweep").c_str()) == RE_OK);
  res = nullptr;
  const re_status st = re_command_sweep(cfg, &res);
  CHECK((st == RE_OK || st == RE_ERR_VERDICT));
  REQUIRE(res != nullptr);
  CHECK(fs::exists(dir / "sweep" / "manifest.json"));
  re_result_destroy(res);
  re_config_destroy(cfg);
  fs::remove_all(dir);
}
