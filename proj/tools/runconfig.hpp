#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dmt/channel.hpp"
#include "dmt/curves.hpp"
#include "dmt/montecarlo.hpp"
#include "dmt/protocols.hpp"

namespace dmtcli {

enum class RunMode { Analytic, Simulate, Optimize, Region };
enum class OutputFormat { Csv, Json };

/// Parse or validation failure; the message names the offending line/key.
class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One batch job, resolved from a sectioned key-value document.
struct RunConfig {
  RunMode mode = RunMode::Analytic;
  dmt::AntennaConfig antennas{1, 1, 1};
  dmt::Protocol protocol = dmt::Protocol::CF;
  std::optional<double> fixed_t;        // DCF baseline listening fraction
  dmt::MultiplexingPair multiplexing{0.0, 0.0};
  std::vector<double> r_grid;           // analytic / optimize sweeps
  std::vector<double> snr_grid_db;      // simulate sweep
  dmt::TrialPlan plan;
  std::optional<double> region_d;       // region mode; optional in analytic
  double optimize_step = 0.01;
  bool optimize_refine = true;
  std::string output_path;
  OutputFormat format = OutputFormat::Csv;
  bool timestamp = true;

  bool operator==(const RunConfig&) const = default;
};

struct ParsedConfig {
  RunConfig config;
  std::vector<std::string> notices;  // e.g. defaulted seed
};

/// Parses the documented config schema. `forced_mode` is the subcommand's
/// mode; a conflicting `mode` key in the document is an error.
ParsedConfig parse_config(const std::string& text,
                          std::optional<RunMode> forced_mode = std::nullopt);

/// Canonical text form; parse_config(serialize_config(c)) reproduces c
/// exactly (doubles are emitted in shortest round-trip form).
std::string serialize_config(const RunConfig& config);

std::string to_string(RunMode mode);
std::string to_string(dmt::Protocol protocol);
std::string to_string(OutputFormat format);

}  // namespace dmtcli

namespace dmt {

inline bool operator==(const AntennaConfig& a, const AntennaConfig& b) {
  return a.m1 == b.m1 && a.mr == b.mr && a.m2 == b.m2;
}
inline bool operator==(const MultiplexingPair& a, const MultiplexingPair& b) {
  return a.r1 == b.r1 && a.r2 == b.r2;
}
inline bool operator==(const TrialPlan& a, const TrialPlan& b) {
  return a.trials_per_point == b.trials_per_point && a.seed == b.seed && a.workers == b.workers;
}

}  // namespace dmt
