// nsb: command-line front end for the scenario catalog.
//
//   nsb run <scenario> [--config <file>] [--out <dir>] [--set key=value ...] [--plotscript]
//   nsb report planck [--json] [--natural | --hbar X --c Y --planck-mass Z]
//   nsb list
//
// Exit codes: 0 success, 2 configuration error, 3 numerical blow-up.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "nsb/nsb.hpp"

namespace {

constexpr int exit_config = 2;
constexpr int exit_blowup = 3;

int run_command(const std::string& scenario, const std::string& config_path, const std::string& out,
                const std::vector<std::string>& sets, bool plotscript) {
  nsb::json file;
  if (!config_path.empty()) file = nsb::read_config_file(config_path);
  auto cfg = nsb::make_config(scenario, file, sets, out);
  cfg.plotscript = plotscript;
  const auto outcome = nsb::run_scenario(cfg);
  for (const auto& f : outcome.files) std::cout << (cfg.output_dir / f.file).string() << '\n';
  std::cout << (cfg.output_dir / "manifest.json").string() << '\n';
  if (!outcome.manifest["summary"].empty()) std::cout << outcome.manifest["summary"].dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pilot-wave equation laboratory: closed forms, ODE/PDE solvers, scenarios"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run a scenario and write CSV files plus manifest.json");
  std::string scenario, config_path, out = "out";
  std::vector<std::string> sets;
  bool plotscript = false;
  run->add_option("scenario", scenario, "scenario name (see `nsb list`)")->required();
  run->add_option("--config", config_path, "JSON config file");
  run->add_option("--out", out, "output directory")->capture_default_str();
  run->add_option("--set", sets, "override a config key, key=value (repeatable)");
  run->add_flag("--plotscript", plotscript, "also write a gnuplot script");

  auto* report = app.add_subcommand("report", "print derived numbers");
  std::string what;
  bool as_json = false, natural = false;
  nsb::PhysicalConstants constants;
  report->add_option("what", what, "report name")->required()->check(CLI::IsMember({"planck"}));
  report->add_flag("--json", as_json, "print JSON instead of text");
  report->add_flag("--natural", natural, "use hbar = c = M_P = 1");
  report->add_option("--hbar", constants.hbar, "reduced Planck constant [J s]");
  report->add_option("--c", constants.c, "speed of light [m/s]");
  report->add_option("--planck-mass", constants.planck_mass, "Planck mass [kg]");

  auto* list = app.add_subcommand("list", "list available scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_config;
  }

  try {
    if (*run) return run_command(scenario, config_path, out, sets, plotscript);
    if (*report) {
      const auto rep = nsb::report_planck_numbers(natural ? nsb::PhysicalConstants::natural() : constants);
      if (as_json) std::cout << nsb::to_json(rep).dump(2) << '\n';
      else std::cout << nsb::to_text(rep);
      return 0;
    }
    if (*list) {
      for (const auto& s : nsb::scenario_catalog()) {
        std::cout << s.name << "\n    " << s.summary << "\n    keys:";
        for (const auto& [k, v] : s.defaults.items()) std::cout << ' ' << k << '=' << v.dump();
        std::cout << "\n";
      }
      return 0;
    }
  } catch (const nsb::BlowUpError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_blowup;
  } catch (const nsb::InputError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
