#pragma once

#include <string>
#include <vector>

#include "runconfig.hpp"

namespace dmtcli {

/// Renders the full report for a config (CSV or JSON per config.format)
/// without touching the filesystem. Appends run notices when given.
std::string render_report(const RunConfig& config, std::vector<std::string>* notices = nullptr);

/// Renders and writes to config.output_path. Throws ConfigError when no
/// output path is set, std::runtime_error on I/O failure.
void run(const RunConfig& config, std::vector<std::string>* notices = nullptr);

/// Recovers the embedded config text from a rendered report (the
/// config-begin/config-end comment block in CSV, the "config" field in
/// JSON). The result re-parses into the RunConfig that produced the report.
std::string extract_embedded_config(const std::string& report);

}  // namespace dmtcli
