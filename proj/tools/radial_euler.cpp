// radial-euler: command-line driver over the C API.
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "radeuler/radeuler.h"

namespace {

int exit_code(re_status s) {
  switch (s) {
    case RE_OK:
      return 0;
    case RE_ERR_CONFIG:
    case RE_ERR_ARGUMENT:
      return 2;
    case RE_ERR_NUMERICAL:
    case RE_ERR_DOMAIN:
      return 3;
    case RE_ERR_VERDICT:
      return 4;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vanishing-viscosity simulator and verification harness for radially symmetric Euler flow"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::size_t levels = 0;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--out", out_dir, "output directory (overrides output.directory)");
  };
  CLI::App* run = app.add_subcommand("run", "simulate one eps level and write diagnostics");
  CLI::App* sweep = app.add_subcommand("sweep", "run the eps ladder plus convergence checks");
  CLI::App* check = app.add_subcommand("check-entropy", "entropy kernel and entropy PDE property suite");
  CLI::App* report = app.add_subcommand("report", "recompute diagnostics from stored snapshots");
  for (CLI::App* sub : {run, sweep, check, report}) add_common(sub);
  sweep->add_option("--levels", levels, "use only the first k ladder levels")->check(CLI::PositiveNumber);
  check->add_option("--seed", seed, "seed for the randomized state samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  re_config* config = nullptr;
  re_status s = re_config_load(config_path.c_str(), &config);
  if (s != RE_OK) {
    std::fprintf(stderr, "error: %s\n", re_last_error());
    return exit_code(s);
  }
  if (!out_dir.empty()) re_config_set_output(config, out_dir.c_str());
  if (levels > 0) re_config_set_levels(config, levels);
  re_config_set_seed(config, seed);

  re_result* result = nullptr;
  if (*run) s = re_command_run(config, &result);
  else if (*sweep) s = re_command_sweep(config, &result);
  else if (*check) s = re_command_check_entropy(config, &result);
  else s = re_command_report(config, &result);

  if (result) std::fputs(re_result_summary(result), stdout);
  if (s != RE_OK) std::fprintf(stderr, "error: %s\n", re_last_error());
  re_result_destroy(result);
  re_config_destroy(config);
  return exit_code(s);
}
