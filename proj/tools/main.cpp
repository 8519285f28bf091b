// relaydmt: batch front-end for DMT curve computation and outage simulation
// of MIMO two-way / multi-hop relay channels.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "runconfig.hpp"
#include "runner.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::string format;
  std::optional<std::uint64_t> seed;
  bool no_timestamp = false;
};

void add_common(CLI::App* sub, CommonArgs& args) {
  sub->add_option("--config", args.config_path, "run configuration file")->required();
  sub->add_option("--out", args.out_path, "output file (overrides [output] path)");
  sub->add_option("--format", args.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--seed", args.seed, "override [plan] seed");
  sub->add_flag("--no-timestamp", args.no_timestamp, "omit the generated-at field");
}

int execute(dmtcli::RunMode mode, const CommonArgs& args) {
  std::ifstream in(args.config_path);
  if (!in) {
    std::cerr << "error: cannot read config file: " << args.config_path << "\n";
    return 1;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();

  dmtcli::ParsedConfig parsed = dmtcli::parse_config(buffer.str(), mode);
  dmtcli::RunConfig& config = parsed.config;
  if (!args.out_path.empty()) config.output_path = args.out_path;
  if (!args.format.empty()) {
    config.format = args.format == "json" ? dmtcli::OutputFormat::Json : dmtcli::OutputFormat::Csv;
  }
  if (args.seed) {
    config.plan.seed = *args.seed;
    std::erase_if(parsed.notices,
                  [](const std::string& n) { return n.find("plan.seed") != std::string::npos; });
  }
  if (args.no_timestamp) config.timestamp = false;

  std::vector<std::string> notices = std::move(parsed.notices);
  dmtcli::run(config, &notices);
  for (const std::string& notice : notices) std::cerr << "notice: " << notice << "\n";
  std::cerr << "wrote " << config.output_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DMT curves and outage simulation for MIMO relay channels"};
  app.require_subcommand(1);

  CommonArgs args;
  const std::pair<const char*, dmtcli::RunMode> modes[] = {
      {"analytic", dmtcli::RunMode::Analytic},
      {"simulate", dmtcli::RunMode::Simulate},
      {"optimize", dmtcli::RunMode::Optimize},
      {"region", dmtcli::RunMode::Region},
  };
  for (const auto& [name, mode] : modes) {
    CLI::App* sub = app.add_subcommand(name, std::string("run a ") + name + " job");
    add_common(sub, args);
    sub->callback([&args, mode = mode]() {
      const int status = execute(mode, args);
      if (status != 0) throw CLI::RuntimeError(status);
    });
  }

  try {
    CLI11_PARSE(app, argc, argv);
  } catch (const dmtcli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
