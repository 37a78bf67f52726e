#ifndef RADEULER_COMMANDS_HPP
#define RADEULER_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "radeuler/config.hpp"

namespace radeuler {

struct CommandOptions {
  std::optional<std::string> out_dir;  // overrides output.directory
  std::optional<std::size_t> levels;   // truncates the ladder
  std::uint64_t seed = 0;              // randomized property samples only
};

struct CommandResult {
  bool passed = true;
  std::string summary;                // one line per verdict
  std::vector<std::string> failures;  // names of failed verdicts
  std::string manifest;               // manifest.json text
};

/// One eps level (run.eps, default the first ladder entry): snapshots, diagnostics, verdicts.
CommandResult command_run(const RunConfig& config, const CommandOptions& options);

/// Every ladder level plus the convergence, weak-form and entropy checks.
CommandResult command_sweep(const RunConfig& config, const CommandOptions& options);

/// Kernel and entropy-PDE property suite; no simulation.
CommandResult command_check_entropy(const RunConfig& config, const CommandOptions& options);

/// Recomputes diagnostics from the snapshots and records a previous `run` wrote.
CommandResult command_report(const RunConfig& config, const CommandOptions& options);

}  // namespace radeuler

#endif  // RADEULER_COMMANDS_HPP
