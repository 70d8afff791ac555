#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "suitegen/fitness.hpp"
#include "suitegen/genotype.hpp"
#include "suitegen/metadata.hpp"

namespace suitegen {

/// Renders `suite` as a pytest module: one `test_<i>()` per test case, a
/// constructor line followed by one line per action, and no assertions.
std::string render_suite(const TestSuite& suite, const UutMetadata& meta);

struct RunnerConfig {
  std::string runner = "pytest";
  std::vector<std::string> extra_args;
  /// Directory that relative metadata locations are resolved against.
  std::filesystem::path base_dir = ".";
};

class ExternalRunnerError : public std::runtime_error {
 public:
  enum class Kind { RunnerNotFound, UutMissing, RunnerFailed, ReportMissing, ReportUnparseable };

  ExternalRunnerError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Absolute directory holding the UUT source for `meta`.
std::filesystem::path resolve_uut_dir(const UutMetadata& meta, const std::filesystem::path& base);

/// Runs the rendered suite under the external runner in a private temp
/// directory and returns the UUT file's line coverage (no branch goals).
CoverageReport run_external_coverage(const TestSuite& suite, const UutMetadata& meta,
                                     const RunnerConfig& config);

/// Statement coverage percentage of the UUT file as reported by the runner.
double measure_external_coverage(const TestSuite& suite, const UutMetadata& meta,
                                 const RunnerConfig& config);

/// Extracts line coverage for `<module>.py` from a coverage JSON report.
CoverageReport parse_coverage_json(const std::string& json_text, const std::string& module);

}  // namespace suitegen
