#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <json.hpp>

namespace packsurgeon::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInvariantViolation = 2;

/// Parameters shared by the experiment subcommands.
struct ExperimentConfig {
  enum class Kind { kRatio, kBlowup, kCounterexample };
  Kind kind = Kind::kRatio;
  int n = 16;
  int m = 16;
  double p = 0.2;
  double x_min = 4.0;
  double x_max = 32.0;
  double q = 0.1;
  double delta = 0.05;
  double tau = 0.3;
  double c = 1e-10;
  int trials = 1;
  std::uint64_t seed = 0;
  std::string output;
};

/// Throws io::InputError on missing seed, trials < 1, or unknown kind.
[[nodiscard]] ExperimentConfig parse_experiment_config(const nlohmann::json& j);

/// Runs one subcommand; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace packsurgeon::cli
