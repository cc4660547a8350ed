#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "vwstat/dataset.hpp"
#include "vwstat/errors.hpp"
#include "vwstat/frechet.hpp"

namespace vwstat {

enum class Variant { Real, Complex };
enum class BootstrapMode { Nonpivotal, Pivotal };

struct RunConfig {
  std::string input;
  std::string output;
  std::string replicates;  // CSV replicate table for `bootstrap`
  Variant variant = Variant::Complex;
  BootstrapMode mode = BootstrapMode::Nonpivotal;
  ExtremeKind kind = ExtremeKind::Antimean;
  std::size_t resamples = 500;
  std::uint64_t seed = 42;
  double level = 0.95;
  double gap_tol = 1e-9;
  unsigned threads = 1;
  // simulate
  int k = 11;
  int n = 100;
  double concentration = 20.0;

  /// Throws InvalidArgument on out-of-range parameters.
  void validate() const;
};

/// Result of one CLI command: the JSON document, an optional CSV payload (the
/// replicate table for `bootstrap`, the dataset for `simulate`) and the exit code.
struct CommandResult {
  int exit_code = 0;
  nlohmann::ordered_json document;
  std::optional<std::string> csv;

  std::string json_text() const;
};

CommandResult cmd_analyze(const RunConfig& rc);
CommandResult cmd_analyze(const RunConfig& rc, const Dataset& data);
CommandResult cmd_bootstrap(const RunConfig& rc);
CommandResult cmd_bootstrap(const RunConfig& rc, const Dataset& data);
CommandResult cmd_simulate(const RunConfig& rc);

/// {"error": {"type", "message", "values"}} with the matching exit code.
CommandResult error_result(const std::string& command, const Error& e);

}  // namespace vwstat
