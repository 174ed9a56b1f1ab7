#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "velavg/bounds/report.hpp"
#include "velavg/cli/config.hpp"

namespace velavg {

struct SuiteResult {
  std::vector<BoundReport> reports;
  /// Contents of report.json: config echo, provenance, reports, estimates.
  nlohmann::json document;
  std::vector<std::string> files;  // paths written, report.json first

  bool all_pass() const;
  std::vector<std::string> violations() const;
};

/// Runs the configured experiments and, when write_outputs is set, writes
/// report.json, summary.csv, the SVG plots and run-meta.txt into
/// config.output_dir (created if missing). report.json depends only on the
/// config; timing and thread counts go to run-meta.txt.
SuiteResult run_suite(const RunConfig& config, bool write_outputs = true);

/// Serialized report.json text (2-space indent, trailing newline).
std::string report_text(const SuiteResult& result);

/// 0 if every BoundReport passes, 1 otherwise.
int suite_exit_code(const SuiteResult& result);

}  // namespace velavg
