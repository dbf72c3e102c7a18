// Command-line front end for the weakcomo shared library. Parses arguments,
// merges CLI overrides into the command configuration and forwards the work
// through the C API.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "weakcomo.h"

namespace {

using nlohmann::json;

struct CliOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<std::string> out_dir;
};

int run(const std::string& command, const CliOptions& options) {
  json cfg = json::object();
  if (!options.config_path.empty()) {
    std::ifstream in(options.config_path, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot open config file: " << options.config_path
                << "\n";
      return 2;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
      cfg = json::parse(buffer.str());
    } catch (const json::exception& e) {
      std::cerr << "error: bad config JSON: " << e.what() << "\n";
      return 2;
    }
    if (!cfg.is_object()) {
      std::cerr << "error: config must be a JSON object\n";
      return 2;
    }
    // relative paths inside the config resolve against its directory
    cfg["base_dir"] =
        std::filesystem::path(options.config_path).parent_path().string();
    if (cfg["base_dir"].get<std::string>().empty()) cfg["base_dir"] = ".";
  }
  if (options.seed) cfg["seed"] = *options.seed;
  if (options.tol) cfg["tol"] = *options.tol;
  if (options.out_dir) cfg["out"] = *options.out_dir;
  if (const char* nodes = std::getenv("WEAKCOMO_QUAD_NODES")) {
    try {
      cfg["quad_nodes"] = std::stoll(nodes);
    } catch (const std::exception&) {
      std::cerr << "error: WEAKCOMO_QUAD_NODES must be an integer\n";
      return 2;
    }
  }

  char* report = nullptr;
  const wcm_status status =
      wcm_run_command(command.c_str(), cfg.dump().c_str(), &report);
  if (report != nullptr) {
    std::cout << report;
    wcm_string_free(report);
  }
  if (status != WCM_OK)
    std::cerr << "error: " << wcm_status_name(status) << "\n";
  return wcm_status_exit_class(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weakcomo: weak-comonotonicity toolkit"};
  app.require_subcommand(1);

  const std::string version = wcm_version();
  app.set_version_flag("--version", version);

  CliOptions options;
  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* config =
        sub->add_option("--config", options.config_path, "JSON config file");
    if (config_required) config->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", options.seed, "random seed (default 0)");
    sub->add_option("--tol", options.tol, "verdict tolerance override");
    sub->add_option("--out", options.out_dir, "output directory");
  };

  CLI::App* wc_check = app.add_subcommand(
      "wc-check", "evaluate weak-comonotonicity integrals over a family");
  add_common(wc_check, true);
  CLI::App* aggregate = app.add_subcommand(
      "aggregate", "worst-case VaR/ES aggregation of two marginals");
  add_common(aggregate, true);
  CLI::App* share = app.add_subcommand(
      "share", "solve the beta-constrained quantile risk-sharing problem");
  add_common(share, true);
  CLI::App* demo = app.add_subcommand(
      "demo", "emit the sin/cos curve data and the worked examples");
  add_common(demo, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (wc_check->parsed()) return run("wc-check", options);
  if (aggregate->parsed()) return run("aggregate", options);
  if (share->parsed()) return run("share", options);
  if (demo->parsed()) return run("demo", options);
  return 2;
}
