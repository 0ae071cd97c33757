#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cvteleport/harness.hpp"

namespace {

int dispatch(const std::string& name, const cvt::harness::Config& config, std::ostream& out) {
  if (name == "table1") return cvt::harness::cmd_table1(config, out);
  if (name == "sweep") return cvt::harness::cmd_sweep(config, out);
  if (name == "run") return cvt::harness::cmd_run(config, out);
  return cvt::harness::cmd_calibrate(config, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulator of continuous-variable teleportation links"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_path;
  std::vector<std::string> overrides;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "configuration file, one key=value per line");
  app.add_option("--set", overrides, "override one key=value (repeatable)")
      ->take_all();
  app.add_option("--out", out_path, "write the CSV report here instead of stdout");
  auto* seed_opt = app.add_option("--seed", seed, "override the random seed");

  app.add_subcommand("table1", "reproduce the reference hardware budget table");
  app.add_subcommand("sweep", "free-space fidelity sweep over (y, eta, N, r)");
  app.add_subcommand("run", "one end-to-end microwave teleportation run");
  app.add_subcommand("calibrate", "zero-input noise calibration of the chain");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cvt::harness::kExitError;
  }

  try {
    std::string file_text;
    if (!config_path.empty()) {
      std::ifstream file(config_path);
      if (!file) {
        std::cerr << "error: cannot read config file '" << config_path << "'\n";
        return cvt::harness::kExitError;
      }
      std::ostringstream buffer;
      buffer << file.rdbuf();
      file_text = buffer.str();
    }
    cvt::harness::Config config = cvt::harness::load_config(file_text, overrides);
    if (seed_opt->count() > 0) {
      config.seed = seed;
    }
    const std::string name = app.get_subcommands().front()->get_name();
    if (out_path.empty()) {
      return dispatch(name, config, std::cout);
    }
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot open output file '" << out_path << "'\n";
      return cvt::harness::kExitError;
    }
    return dispatch(name, config, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cvt::harness::kExitError;
  }
}
