#include "runconfig.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

namespace dmtcli {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ConfigError("line " + std::to_string(line) + ": " + what);
}

struct RawEntry {
  std::string value;
  int line;
};

// section -> key -> entry; parse_config consumes entries and rejects
// whatever is left over, naming the key.
using RawDoc = std::map<std::string, std::map<std::string, RawEntry>>;

RawDoc tokenize(const std::string& text) {
  RawDoc doc;
  std::istringstream in(text);
  std::string raw;
  std::string section;  // "" = top level
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header '" + line + "'");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) fail(line_no, "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "missing key before '='");
    if (doc[section].count(key)) fail(line_no, "duplicate key '" + key + "'");
    doc[section][key] = {value, line_no};
  }
  return doc;
}

class DocReader {
 public:
  explicit DocReader(RawDoc doc) : doc_(std::move(doc)) {}

  std::optional<RawEntry> take(const std::string& section, const std::string& key) {
    auto sec = doc_.find(section);
    if (sec == doc_.end()) return std::nullopt;
    auto it = sec->second.find(key);
    if (it == sec->second.end()) return std::nullopt;
    RawEntry entry = it->second;
    sec->second.erase(it);
    return entry;
  }

  // Anything not consumed is unknown.
  void reject_leftovers() const {
    for (const auto& [section, keys] : doc_) {
      for (const auto& [key, entry] : keys) {
        const std::string where =
            section.empty() ? "'" + key + "'" : "'" + key + "' in section [" + section + "]";
        fail(entry.line, "unknown key " + where);
      }
    }
  }

 private:
  RawDoc doc_;
};

double parse_double(const RawEntry& entry, const std::string& key) {
  double v = 0.0;
  const char* first = entry.value.data();
  const char* last = first + entry.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    fail(entry.line, "key '" + key + "': expected a number, got '" + entry.value + "'");
  }
  return v;
}

template <typename Int>
Int parse_int(const RawEntry& entry, const std::string& key) {
  Int v = 0;
  const char* first = entry.value.data();
  const char* last = first + entry.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    fail(entry.line, "key '" + key + "': expected an integer, got '" + entry.value + "'");
  }
  return v;
}

bool parse_bool(const RawEntry& entry, const std::string& key) {
  if (entry.value == "true") return true;
  if (entry.value == "false") return false;
  fail(entry.line, "key '" + key + "': expected true or false, got '" + entry.value + "'");
}

// Grids come as either an explicit comma list "25,30,35" or a range
// "start:stop:step".
std::vector<double> parse_grid(const RawEntry& entry, const std::string& key) {
  std::vector<double> values;
  const std::string& text = entry.value;
  if (text.find(':') != std::string::npos) {
    double start = 0.0, stop = 0.0, step = 0.0;
    std::array<double*, 3> slots{&start, &stop, &step};
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
      const auto next = text.find(':', pos);
      const bool last = i == 2;
      if (last != (next == std::string::npos)) {
        fail(entry.line, "key '" + key + "': range must be start:stop:step");
      }
      const std::string part = trim(text.substr(pos, next - pos));
      *slots[static_cast<std::size_t>(i)] =
          parse_double({part, entry.line}, key);
      pos = next + 1;
    }
    if (!(step > 0.0) || stop < start) {
      fail(entry.line, "key '" + key + "': range needs stop >= start and step > 0");
    }
    const int count = static_cast<int>(std::floor((stop - start) / step + 1e-9));
    for (int i = 0; i <= count; ++i) values.push_back(start + i * step);
  } else {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto comma = text.find(',', pos);
      const std::string part =
          trim(text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
      if (part.empty()) fail(entry.line, "key '" + key + "': empty grid element");
      values.push_back(parse_double({part, entry.line}, key));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  if (values.empty()) fail(entry.line, "key '" + key + "': empty grid");
  return values;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string format_grid(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    out += format_double(values[i]);
  }
  return out;
}

RunMode parse_mode(const RawEntry& entry) {
  if (entry.value == "analytic") return RunMode::Analytic;
  if (entry.value == "simulate") return RunMode::Simulate;
  if (entry.value == "optimize") return RunMode::Optimize;
  if (entry.value == "region") return RunMode::Region;
  fail(entry.line, "unknown mode '" + entry.value + "'");
}

dmt::Protocol parse_protocol(const RawEntry& entry) {
  if (entry.value == "CF") return dmt::Protocol::CF;
  if (entry.value == "DF") return dmt::Protocol::DF;
  if (entry.value == "DCF") return dmt::Protocol::DCF;
  fail(entry.line, "unknown protocol '" + entry.value + "' (expected CF, DF or DCF)");
}

}  // namespace

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::Analytic: return "analytic";
    case RunMode::Simulate: return "simulate";
    case RunMode::Optimize: return "optimize";
    case RunMode::Region: return "region";
  }
  return "?";
}

std::string to_string(dmt::Protocol protocol) {
  switch (protocol) {
    case dmt::Protocol::CF: return "CF";
    case dmt::Protocol::DF: return "DF";
    case dmt::Protocol::DCF: return "DCF";
  }
  return "?";
}

std::string to_string(OutputFormat format) {
  return format == OutputFormat::Csv ? "csv" : "json";
}

ParsedConfig parse_config(const std::string& text, std::optional<RunMode> forced_mode) {
  DocReader doc(tokenize(text));
  ParsedConfig parsed;
  RunConfig& config = parsed.config;

  const auto mode_entry = doc.take("", "mode");
  if (mode_entry) {
    config.mode = parse_mode(*mode_entry);
    if (forced_mode && *forced_mode != config.mode) {
      fail(mode_entry->line, "config mode '" + to_string(config.mode) +
                                 "' conflicts with the '" + to_string(*forced_mode) +
                                 "' subcommand");
    }
  } else if (forced_mode) {
    config.mode = *forced_mode;
  } else {
    throw ConfigError("missing required key: mode");
  }

  // [antennas] is required in every mode.
  int m1 = 0, mr = 0, m2 = 0;
  for (auto [name, out] : {std::pair{"m1", &m1}, {"mr", &mr}, {"m2", &m2}}) {
    const auto entry = doc.take("antennas", name);
    if (!entry) throw ConfigError(std::string("missing required key: [antennas] ") + name);
    *out = parse_int<int>(*entry, name);
    if (*out < 1) fail(entry->line, std::string("key '") + name + "': antenna count must be >= 1");
  }
  config.antennas = dmt::AntennaConfig(m1, mr, m2);

  if (const auto entry = doc.take("protocol", "name")) config.protocol = parse_protocol(*entry);
  if (const auto entry = doc.take("protocol", "fixed_t")) {
    const double t = parse_double(*entry, "fixed_t");
    if (!(t > 0.0 && t < 1.0)) fail(entry->line, "key 'fixed_t': must lie strictly in (0, 1)");
    if (config.protocol != dmt::Protocol::DCF) {
      fail(entry->line, "key 'fixed_t': only valid for the DCF protocol");
    }
    config.fixed_t = t;
  }

  if (const auto entry = doc.take("multiplexing", "r1")) {
    config.multiplexing.r1 = parse_double(*entry, "r1");
    if (config.multiplexing.r1 < 0.0) fail(entry->line, "key 'r1': must be nonnegative");
  }
  if (const auto entry = doc.take("multiplexing", "r2")) {
    config.multiplexing.r2 = parse_double(*entry, "r2");
    if (config.multiplexing.r2 < 0.0) fail(entry->line, "key 'r2': must be nonnegative");
    if (config.protocol == dmt::Protocol::DCF && config.multiplexing.r2 != 0.0) {
      fail(entry->line, "key 'r2': DCF is one-way; r2 must be 0");
    }
  }
  if (const auto entry = doc.take("multiplexing", "r_grid")) {
    config.r_grid = parse_grid(*entry, "r_grid");
    for (double r : config.r_grid) {
      if (r < 0.0) fail(entry->line, "key 'r_grid': entries must be nonnegative");
    }
  }

  if (const auto entry = doc.take("snr", "grid_db")) {
    config.snr_grid_db = parse_grid(*entry, "grid_db");
    for (double db : config.snr_grid_db) {
      // rates scale with log2(snr), so the sweep must sit above 0 dB
      if (db <= 0.0) fail(entry->line, "key 'grid_db': points must be > 0 dB");
    }
  }

  if (const auto entry = doc.take("plan", "trials")) {
    config.plan.trials_per_point = parse_int<std::int64_t>(*entry, "trials");
    if (config.plan.trials_per_point < 1) fail(entry->line, "key 'trials': must be >= 1");
  }
  if (const auto entry = doc.take("plan", "seed")) {
    config.plan.seed = parse_int<std::uint64_t>(*entry, "seed");
  } else if (config.mode == RunMode::Simulate) {
    parsed.notices.push_back("plan.seed not set; defaulting to seed 0");
  }
  if (const auto entry = doc.take("plan", "workers")) {
    config.plan.workers = parse_int<int>(*entry, "workers");
    if (config.plan.workers < 0) fail(entry->line, "key 'workers': must be >= 0 (0 = all cores)");
  }

  if (const auto entry = doc.take("region", "d")) {
    const double d = parse_double(*entry, "d");
    const double d_max = static_cast<double>(config.antennas.m_star()) * config.antennas.mr;
    if (d < 0.0 || d > d_max) {
      fail(entry->line, "key 'd': must lie in [0, " + format_double(d_max) + "]");
    }
    config.region_d = d;
  }

  if (const auto entry = doc.take("optimize", "step")) {
    config.optimize_step = parse_double(*entry, "step");
    if (!(config.optimize_step > 0.0 && config.optimize_step <= 1.0)) {
      fail(entry->line, "key 'step': must lie in (0, 1]");
    }
  }
  if (const auto entry = doc.take("optimize", "refine")) {
    config.optimize_refine = parse_bool(*entry, "refine");
  }

  if (const auto entry = doc.take("output", "path")) config.output_path = entry->value;
  if (const auto entry = doc.take("output", "format")) {
    if (entry->value == "csv") {
      config.format = OutputFormat::Csv;
    } else if (entry->value == "json") {
      config.format = OutputFormat::Json;
    } else {
      fail(entry->line, "key 'format': expected csv or json");
    }
  }
  if (const auto entry = doc.take("output", "timestamp")) {
    config.timestamp = parse_bool(*entry, "timestamp");
  }

  doc.reject_leftovers();

  // Mode-specific requirements.
  switch (config.mode) {
    case RunMode::Simulate:
      if (config.snr_grid_db.empty()) throw ConfigError("simulate mode requires [snr] grid_db");
      (void)dmt::SnrGrid(config.snr_grid_db);  // validates shape
      break;
    case RunMode::Analytic:
    case RunMode::Optimize:
      if (config.r_grid.empty()) {
        throw ConfigError(to_string(config.mode) + " mode requires [multiplexing] r_grid");
      }
      break;
    case RunMode::Region:
      if (!config.region_d) throw ConfigError("region mode requires [region] d");
      break;
  }
  if (config.fixed_t && config.mode == RunMode::Simulate &&
      config.protocol != dmt::Protocol::DCF) {
    throw ConfigError("fixed_t requires the DCF protocol");
  }
  return parsed;
}

std::string serialize_config(const RunConfig& config) {
  std::ostringstream out;
  out << "mode = " << to_string(config.mode) << "\n\n";
  out << "[antennas]\n";
  out << "m1 = " << config.antennas.m1 << "\n";
  out << "mr = " << config.antennas.mr << "\n";
  out << "m2 = " << config.antennas.m2 << "\n\n";
  out << "[protocol]\n";
  out << "name = " << to_string(config.protocol) << "\n";
  if (config.fixed_t) out << "fixed_t = " << format_double(*config.fixed_t) << "\n";
  out << "\n[multiplexing]\n";
  out << "r1 = " << format_double(config.multiplexing.r1) << "\n";
  out << "r2 = " << format_double(config.multiplexing.r2) << "\n";
  if (!config.r_grid.empty()) out << "r_grid = " << format_grid(config.r_grid) << "\n";
  if (!config.snr_grid_db.empty()) {
    out << "\n[snr]\n";
    out << "grid_db = " << format_grid(config.snr_grid_db) << "\n";
  }
  out << "\n[plan]\n";
  out << "trials = " << config.plan.trials_per_point << "\n";
  out << "seed = " << config.plan.seed << "\n";
  out << "workers = " << config.plan.workers << "\n";
  if (config.region_d) {
    out << "\n[region]\n";
    out << "d = " << format_double(*config.region_d) << "\n";
  }
  out << "\n[optimize]\n";
  out << "step = " << format_double(config.optimize_step) << "\n";
  out << "refine = " << (config.optimize_refine ? "true" : "false") << "\n";
  out << "\n[output]\n";
  if (!config.output_path.empty()) out << "path = " << config.output_path << "\n";
  out << "format = " << to_string(config.format) << "\n";
  out << "timestamp = " << (config.timestamp ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace dmtcli
