#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace phasectl {

/// Malformed or schema-invalid scenario input (maps to exit code 1).
struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::string out_dir = ".";
  bool svg = false;
  std::optional<std::uint64_t> seed;  // overrides any seed in the scenario
};

/// Executes one scenario file: validates it strictly (unknown fields
/// rejected), runs the mapped solver, and writes report.json plus
/// trajectory.csv / control.csv (and SVG plots when requested) into
/// opts.out_dir. Returns the process exit code: 0 success, 2 infeasible
/// problem, 1 input error. Error messages go to stderr.
int run_scenario(const std::string& command, const std::string& scenario_path,
                 const RunOptions& opts);

/// Commands understood by run_scenario.
bool is_known_command(const std::string& command);

}  // namespace phasectl
