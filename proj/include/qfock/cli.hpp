// Verification suites and exports behind the qfock command line tool.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace qfock {

struct RunConfig {
  int d = 2;
  std::optional<std::string> q;         // "p/q", integer or decimal
  std::optional<std::string> q_matrix;  // path to {d, entries}
  int level = 6;
  int series_m = 2;
  std::string mode = "exact";  // exact | symbolic | float
  std::uint64_t seed = 42;
  std::string format = "json";  // json | csv
  std::string out;              // empty: stdout
  std::string family = "B";
  int n = 6;
};

/// Invalid configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CheckResult {
  std::string id;
  bool pass = false;
  nlohmann::json params;
  nlohmann::json value;
  nlohmann::json bound;
  std::string counterexample;  // first failing word or partition, if any
  std::string note;
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitConfig = 2;

const std::vector<std::string>& suite_names();
const std::vector<std::string>& export_names();

/// Runs the named suite; throws ConfigError for invalid configurations.
std::vector<CheckResult> run_suite(const RunConfig& config, const std::string& suite);

/// Full verify command: report written to config.out or `out`. Returns the
/// exit code.
int run_verify(const RunConfig& config, const std::string& suite, std::ostream& out, std::ostream& err);

/// Export command; returns the exit code.
int run_export(const RunConfig& config, const std::string& what, std::ostream& out, std::ostream& err);

/// The report document for a list of checks.
nlohmann::json report_json(const RunConfig& config, const std::string& suite, std::vector<CheckResult> checks);
std::string report_csv(std::vector<CheckResult> checks);

}  // namespace qfock
