#pragma once

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bmlab::harness {

enum class Command { GroundState, Evolve, Sweep, Fit, Validate };

/// Throws ConfigError for an unknown command name.
Command parse_command(const std::string& name);
std::string to_string(Command c);

struct RunSpec {
  Command command = Command::Validate;
  std::filesystem::path config;  // optional for validate
  std::filesystem::path out;
  std::vector<long> N_list;      // overrides N from the config
  std::uint64_t seed = 0;
  std::vector<std::string> overrides;  // "key=value"
  std::filesystem::path data;          // trajectory CSV for fit
  std::string model;                   // fit model; empty uses fit_model
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitConvergence = 3;
inline constexpr int kExitBreakdown = 4;

/// Exit status for an exception escaping a pipeline.
int exit_code_for(const std::exception& e);

/// Runs one command, writing artifacts and manifest.json into spec.out.
/// Errors are reported on `log` and mapped to exit codes.
int run(const RunSpec& spec, std::ostream& log);

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

/// Fast invariant suite behind the validate command.
std::vector<Check> validation_suite();

}  // namespace bmlab::harness
