#include "runner.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dmt/exponent_opt.hpp"

namespace dmtcli {
namespace {

using json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Polygon corners of {r1 <= box, r2 <= box, r1 + r2 <= sum} in the
// nonnegative quadrant, counterclockwise from the origin.
std::vector<std::pair<double, double>> region_vertices(double box, double sum) {
  std::vector<std::pair<double, double>> v;
  v.emplace_back(0.0, 0.0);
  const double axis = std::min(box, sum);
  v.emplace_back(axis, 0.0);
  if (sum > box && sum < 2.0 * box) {
    v.emplace_back(box, sum - box);
    v.emplace_back(sum - box, box);
  } else if (sum >= 2.0 * box) {
    v.emplace_back(box, box);
  }
  v.emplace_back(0.0, axis);
  std::vector<std::pair<double, double>> unique;
  for (const auto& p : v) {
    if (unique.empty() || unique.back() != p) unique.push_back(p);
  }
  if (unique.size() > 1 && unique.front() == unique.back()) unique.pop_back();
  return unique;
}

struct AnalyticReport {
  std::vector<std::array<double, 4>> curve;  // r, d_cf, d_outer_1, d_outer_2
  double df_thresh = 0.0;
  double region_d = 0.0;
  dmt::RateRegion region;
  std::vector<std::pair<double, double>> vertices;
};

AnalyticReport compute_analytic(const RunConfig& config) {
  AnalyticReport report;
  for (double r : config.r_grid) {
    const dmt::DiversityPair outer = dmt::outer_bound(config.antennas, {r, r});
    report.curve.push_back({r, dmt::cf_dmt(config.antennas, r), outer.d1, outer.d2});
  }
  report.df_thresh = dmt::df_threshold(config.antennas);
  report.region_d = config.region_d.value_or(report.df_thresh);
  report.region = dmt::df_region(config.antennas, report.region_d);
  report.vertices =
      region_vertices(report.region.constraints[0].c, report.region.constraints[2].c);
  return report;
}

struct RegionReport {
  dmt::RateRegion region;
  std::vector<std::pair<double, double>> vertices;
  std::vector<std::pair<double, double>> boundary;  // r1, max r2
};

RegionReport compute_region(const RunConfig& config) {
  RegionReport report;
  report.region = dmt::df_region(config.antennas, *config.region_d);
  const double box = report.region.constraints[0].c;
  const double sum = report.region.constraints[2].c;
  report.vertices = region_vertices(box, sum);
  const double r1_max = std::min(box, sum);
  const int steps = 20;
  for (int i = 0; i <= steps; ++i) {
    const double r1 = r1_max * i / steps;
    const double r2 = std::max(0.0, std::min(box, sum - r1));
    report.boundary.emplace_back(r1, r2);
  }
  return report;
}

dmt::SearchOptions optimizer_options(const RunConfig& config) {
  dmt::SearchOptions opts;
  opts.step = config.optimize_step;
  opts.method = config.optimize_refine ? dmt::SearchMethod::GridRefine : dmt::SearchMethod::Grid;
  return opts;
}

// Zero-failure points carry no log-probability; report the rule-of-three
// bound instead of silently dropping them.
void note_starved_points(const dmt::SweepResult& sweep, std::vector<std::string>* notices) {
  if (!notices) return;
  for (const dmt::OutageEstimate& est : sweep.estimates) {
    for (int msg = 0; msg < 2; ++msg) {
      if (est.failures[msg] == 0) {
        notices->push_back("snr " + format_double(est.snr.db) + " dB message " +
                           std::to_string(msg + 1) + ": no failures in " +
                           std::to_string(est.trials) + " trials; rule-of-three bound p <= " +
                           format_double(3.0 / static_cast<double>(est.trials)));
      }
    }
  }
}

// ---- CSV rendering ----------------------------------------------------

void csv_header(std::ostream& out, const RunConfig& config) {
  out << "# relaydmt " << to_string(config.mode) << " report\n";
  if (config.timestamp) out << "# generated = " << utc_timestamp() << "\n";
  out << "# config-begin\n";
  std::istringstream lines(serialize_config(config));
  std::string line;
  while (std::getline(lines, line)) out << "# " << line << "\n";
  out << "# config-end\n";
}

void render_csv(std::ostream& out, const RunConfig& config,
                std::vector<std::string>* notices) {
  csv_header(out, config);
  switch (config.mode) {
    case RunMode::Analytic: {
      const AnalyticReport report = compute_analytic(config);
      out << "r,d_cf,d_outer_1,d_outer_2\n";
      for (const auto& row : report.curve) {
        out << format_double(row[0]) << "," << format_double(row[1]) << ","
            << format_double(row[2]) << "," << format_double(row[3]) << "\n";
      }
      out << "name,value\n";
      out << "df_threshold," << format_double(report.df_thresh) << "\n";
      out << "region_d," << format_double(report.region_d) << "\n";
      out << "constraint,a,b,c\n";
      for (const auto& c : report.region.constraints) {
        out << "constraint," << format_double(c.a) << "," << format_double(c.b) << ","
            << format_double(c.c) << "\n";
      }
      out << "vertex,r1,r2\n";
      for (const auto& [r1, r2] : report.vertices) {
        out << "vertex," << format_double(r1) << "," << format_double(r2) << "\n";
      }
      break;
    }
    case RunMode::Simulate: {
      const dmt::SweepResult sweep = dmt::simulate_sweep(
          config.protocol, config.antennas, config.multiplexing,
          dmt::SnrGrid(config.snr_grid_db), config.plan, config.fixed_t);
      note_starved_points(sweep, notices);
      out << "snr_db,message,trials,failures,p_hat,stderr\n";
      for (const dmt::OutageEstimate& est : sweep.estimates) {
        for (int msg = 0; msg < 2; ++msg) {
          out << format_double(est.snr.db) << "," << (msg + 1) << "," << est.trials << ","
              << est.failures[msg] << "," << format_double(est.p_hat[msg]) << ","
              << format_double(est.stderr_p[msg]) << "\n";
        }
      }
      out << "message,d_hat,stderr,points_used\n";
      for (int msg = 0; msg < 2; ++msg) {
        const auto& fit = sweep.fits[msg];
        if (!fit) {
          if (notices) {
            notices->push_back("message " + std::to_string(msg + 1) +
                               ": too few failing points for a slope fit");
          }
          continue;
        }
        out << (msg + 1) << "," << format_double(fit->d_hat) << ","
            << format_double(fit->stderr_d) << "," << fit->points_used << "\n";
      }
      break;
    }
    case RunMode::Optimize: {
      const dmt::SearchOptions opts = optimizer_options(config);
      out << "r,d_dcf\n";
      for (double r : config.r_grid) {
        out << format_double(r) << "," << format_double(dmt::dcf_dmt(config.antennas, r, opts))
            << "\n";
      }
      break;
    }
    case RunMode::Region: {
      const RegionReport report = compute_region(config);
      out << "constraint,a,b,c\n";
      for (const auto& c : report.region.constraints) {
        out << "constraint," << format_double(c.a) << "," << format_double(c.b) << ","
            << format_double(c.c) << "\n";
      }
      out << "vertex,r1,r2\n";
      for (const auto& [r1, r2] : report.vertices) {
        out << "vertex," << format_double(r1) << "," << format_double(r2) << "\n";
      }
      out << "boundary,r1,r2_max\n";
      for (const auto& [r1, r2] : report.boundary) {
        out << "boundary," << format_double(r1) << "," << format_double(r2) << "\n";
      }
      break;
    }
  }
}

// ---- JSON rendering ---------------------------------------------------

json constraints_json(const dmt::RateRegion& region) {
  json arr = json::array();
  for (const auto& c : region.constraints) {
    arr.push_back({{"a", c.a}, {"b", c.b}, {"c", c.c}});
  }
  return arr;
}

json vertices_json(const std::vector<std::pair<double, double>>& vertices) {
  json arr = json::array();
  for (const auto& [r1, r2] : vertices) arr.push_back({{"r1", r1}, {"r2", r2}});
  return arr;
}

void render_json(std::ostream& out, const RunConfig& config,
                 std::vector<std::string>* notices) {
  json root;
  root["tool"] = "relaydmt";
  root["mode"] = to_string(config.mode);
  if (config.timestamp) root["generated"] = utc_timestamp();
  root["config"] = serialize_config(config);
  switch (config.mode) {
    case RunMode::Analytic: {
      const AnalyticReport report = compute_analytic(config);
      json curve = json::array();
      for (const auto& row : report.curve) {
        curve.push_back(
            {{"r", row[0]}, {"d_cf", row[1]}, {"d_outer_1", row[2]}, {"d_outer_2", row[3]}});
      }
      root["curve"] = std::move(curve);
      root["df_threshold"] = report.df_thresh;
      root["df_region"] = {{"d", report.region_d},
                           {"constraints", constraints_json(report.region)},
                           {"vertices", vertices_json(report.vertices)}};
      break;
    }
    case RunMode::Simulate: {
      const dmt::SweepResult sweep = dmt::simulate_sweep(
          config.protocol, config.antennas, config.multiplexing,
          dmt::SnrGrid(config.snr_grid_db), config.plan, config.fixed_t);
      note_starved_points(sweep, notices);
      json estimates = json::array();
      for (const dmt::OutageEstimate& est : sweep.estimates) {
        for (int msg = 0; msg < 2; ++msg) {
          estimates.push_back({{"snr_db", est.snr.db},
                               {"message", msg + 1},
                               {"trials", est.trials},
                               {"failures", est.failures[msg]},
                               {"p_hat", est.p_hat[msg]},
                               {"stderr", est.stderr_p[msg]}});
        }
      }
      root["estimates"] = std::move(estimates);
      json fits = json::array();
      for (int msg = 0; msg < 2; ++msg) {
        const auto& fit = sweep.fits[msg];
        if (!fit) {
          if (notices) {
            notices->push_back("message " + std::to_string(msg + 1) +
                               ": too few failing points for a slope fit");
          }
          continue;
        }
        fits.push_back({{"message", msg + 1},
                        {"d_hat", fit->d_hat},
                        {"stderr", fit->stderr_d},
                        {"points_used", fit->points_used}});
      }
      root["fits"] = std::move(fits);
      break;
    }
    case RunMode::Optimize: {
      const dmt::SearchOptions opts = optimizer_options(config);
      json curve = json::array();
      for (double r : config.r_grid) {
        curve.push_back({{"r", r}, {"d_dcf", dmt::dcf_dmt(config.antennas, r, opts)}});
      }
      root["curve"] = std::move(curve);
      break;
    }
    case RunMode::Region: {
      const RegionReport report = compute_region(config);
      root["df_region"] = {{"d", *config.region_d},
                           {"constraints", constraints_json(report.region)},
                           {"vertices", vertices_json(report.vertices)}};
      json boundary = json::array();
      for (const auto& [r1, r2] : report.boundary) {
        boundary.push_back({{"r1", r1}, {"r2_max", r2}});
      }
      root["boundary"] = std::move(boundary);
      break;
    }
  }
  out << root.dump(2) << "\n";
}

}  // namespace

std::string render_report(const RunConfig& config, std::vector<std::string>* notices) {
  std::ostringstream out;
  if (config.format == OutputFormat::Csv) {
    render_csv(out, config, notices);
  } else {
    render_json(out, config, notices);
  }
  return out.str();
}

void run(const RunConfig& config, std::vector<std::string>* notices) {
  if (config.output_path.empty()) {
    throw ConfigError("no output path: set [output] path or pass --out");
  }
  const std::string report = render_report(config, notices);
  std::ofstream out(config.output_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + config.output_path);
  out << report;
  if (!out.good()) throw std::runtime_error("write failed: " + config.output_path);
}

std::string extract_embedded_config(const std::string& report) {
  if (!report.empty() && report.front() == '{') {
    const json root = json::parse(report);
    return root.at("config").get<std::string>();
  }
  std::istringstream in(report);
  std::string line;
  std::string config_text;
  bool inside = false;
  while (std::getline(in, line)) {
    if (line == "# config-begin") {
      inside = true;
      continue;
    }
    if (line == "# config-end") return config_text;
    if (inside) {
      config_text += line.size() > 2 ? line.substr(2) : "";
      config_text += "\n";
    }
  }
  throw std::runtime_error("report carries no embedded config block");
}

}  // namespace dmtcli
