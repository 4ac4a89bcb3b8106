#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "sf5/reports.hpp"

namespace sf5::cli {

enum ExitCode : int { kSuccess = 0, kFailure = 1, kUsage = 2 };

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::uint64_t seed = 1;
  i64 restarts = 8;
  i64 max_iters = 3000;
  i64 order_cap = 2000;
  std::string output_format = "table";  // table | json | csv
  std::optional<std::string> output_path;

  /// Throws UsageError unless every numeric field is positive and the format
  /// is one of the three literals.
  void validate() const;
  /// Applies "key=value" lines ('#' starts a comment).
  void apply_file(const std::string& path);
  void apply(const std::string& key, const std::string& value);
};

json to_json(const RunConfig& c);
RunConfig config_from_json(const json& j);

struct Report {
  std::string command;
  std::string timestamp;
  RunConfig config;
  json args;     // command parameters, enough to replay
  json payload;  // deterministic given (command, args, config)
  json summary;  // {"passed": bool, "failures": [...]}
  json timing;   // wall-clock data, excluded from replay comparison
  int exit_code = kSuccess;
};

json to_json(const Report& r);
Report report_from_json(const json& j);

/// Runs one command: groups.check, groups.enumerate, groups.harness,
/// extent.bound, extent.optimize, extent.scan, torus.analyze, rep.verify,
/// rep.invariance, verify-all. Throws UsageError for bad parameters.
Report run_command(const std::string& command, const json& args, const RunConfig& config);

struct ReplayResult {
  Report replayed;
  bool identical = false;
};

/// Re-runs the command embedded in a saved report and compares payloads
/// byte for byte.
ReplayResult replay(const json& saved_report);

/// Human table, JSON document, or CSV rows (scan tables use n,bound,verdict,margin).
std::string render(const Report& r, const std::string& format);

}  // namespace sf5::cli
