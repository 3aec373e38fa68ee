#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chargeflow/errors.hpp"
#include "chargeflow/run_config.hpp"
#include "chargeflow/scenarios.hpp"

namespace {

constexpr const char* kDescription =
    "chargeflow: probability charge transported past fixed points when a\n"
    "localized wave packet rides on a quantum plane wave.\n"
    "\n"
    "Scenarios and their CSV columns:\n"
    "  gauss-map    closed-form charge map over probe pairs\n"
    "               columns: x1,x2,delta_qd\n"
    "  gauss-scan   charge vs packet center and carrier momentum\n"
    "               columns: x_g,p0,delta_qd\n"
    "  laser-sweep  pulse-excited carrier, charge vs field strength\n"
    "               columns: f0,a0,delta_qd,norm_drift,status\n"
    "  verify       cross-check spectral charge against analytic values and\n"
    "               time-evolution references; emits a JSON report\n"
    "\n"
    "Exit codes: 0 success, 1 verification failure, 2 configuration error,\n"
    "3 numerical convergence failure.";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{kDescription};
  app.name("chargeflow");

  std::string scenario;
  std::string config_path;
  std::string out_path;
  std::string case_flag;
  std::vector<std::string> overrides;

  app.add_option("scenario", scenario,
                 "one of: gauss-map, gauss-scan, laser-sweep, verify")
      ->required();
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--out", out_path, "output path (default: stdout)");
  app.add_option("--case", case_flag,
                 "packet preset A|B|C|D (center position/momentum)");
  app.add_option("--override", overrides,
                 "dotted config override, e.g. scan.xg_points=11")
      ->take_all();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    chargeflow::cli::RunConfig cfg =
        chargeflow::cli::load_config(scenario, config_path, case_flag,
                                     overrides);
    if (!out_path.empty()) cfg.out = out_path;
    return chargeflow::cli::run_scenario(cfg);
  } catch (const chargeflow::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const chargeflow::DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const chargeflow::ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << "\n";
    return 3;
  } catch (const chargeflow::AccuracyError& e) {
    std::cerr << "accuracy error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
