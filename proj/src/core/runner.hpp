// Config-driven experiment dispatch. Every subcommand consumes an
// ExperimentConfig and produces a "hlab-report/1" JSON document, optional CSV,
// and an exit code: 0 = success, 2 = negative mathematical verdict.
// Execution errors are thrown (the CLI maps them to exit 1).
#pragma once

#include <json.hpp>
#include <string>

#include "core/config.hpp"

namespace hlab {

struct RunReport {
  nlohmann::ordered_json json;
  std::string csv;  // empty when the command has no tabular view
  int exit_code = 0;
};

// Runs cfg's command. Writes the files named by the `output`, `csv`, and
// `dump_matrix` keys as a side effect (the report is returned regardless).
RunReport run_config(const ExperimentConfig& cfg);

// The canonical serialized form: two-space-indented JSON plus trailing newline.
std::string report_to_string(const RunReport& report);

// Structural check used by round-trip tests: schema tag, command echo,
// config echo, results object, and a sane exit code.
bool validate_report(const nlohmann::ordered_json& j, std::string* why = nullptr);

}  // namespace hlab
