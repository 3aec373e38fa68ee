#ifndef CHARGEFLOW_RUN_CONFIG_HPP
#define CHARGEFLOW_RUN_CONFIG_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

namespace chargeflow::cli {

/// Gaussian packet parameters; the spatial width is hbar/(2 sigma_p).
struct PacketConfig {
  double x_g = 0.25;
  double p_g = 5.0;
  double sigma_p = 0.7071067811865476;
};

/// Probe range for the (x1, x2) charge map.
struct MapConfig {
  double lo = -10.0;
  double hi = 10.0;
  std::size_t points = 81;
};

/// Fixed-probe scan over packet center x_g and carrier momentum p0.
/// p0_lo/p0_hi default to p_g -/+ 6 sigma_p when left null in the config.
struct ScanConfig {
  double x1 = -2.57843;
  double x2 = 7.82843;
  double xg_lo = -1.25;
  double xg_hi = 1.75;
  std::size_t xg_points = 101;
  double p0_lo = 0.0;
  double p0_hi = 0.0;
  std::size_t p0_points = 25;
};

/// Laser-pulse sweep over peak field strengths.
struct LaserConfig {
  double wavelength_nm = 800.0;
  double region_nm = 800.0;
  double cycles = 4.0;
  double p0 = 1.0;
  double x_center = 0.0;
  /// Explicit field-strength list; when empty, a log-spaced grid of `points`
  /// values over [f0_lo, f0_hi] is used.
  std::vector<double> f0_values;
  double f0_lo = 3e-4;
  double f0_hi = 3e-3;
  std::size_t points = 10;
  std::size_t grid_n = 65536;
  double length_factor = 8.0;
  double dt = 0.25;
  double convergence = 5e-4;
};

/// Verification-suite knobs.  `coefficient` scales the density term of the
/// charge formula and exists so a deliberately wrong weight can be shown to
/// break the oracle agreement; the physical value is 1.
struct VerifyConfig {
  std::vector<std::string> checks{"analytic", "triangle"};
  double x1 = -2.57843;
  double x2 = 7.82843;
  double coefficient = 1.0;
  double tolerance_analytic = 1e-8;
  double tolerance_triangle = 5e-3;
  std::size_t fine_n = 1u << 21;
  double fine_length = 60.0;
  std::size_t oracle_n = 1u << 13;
  double oracle_length = 256.0;
  double t_max = 12.0;
  double t_final = 10.0;
  /// Depletion-check cap on |rho - 1| outside the probes at t_final; slow
  /// packets that have not fully cleared the window need a looser cap.
  double residual_threshold = 1e-3;
};

struct RunConfig {
  std::string scenario;
  char case_label = 'A';
  PacketConfig packet;
  double p0 = 5.0;
  std::string out;  ///< output path; empty writes to stdout
  unsigned threads = 0;  ///< 0 = hardware concurrency
  MapConfig map;
  ScanConfig scan;
  LaserConfig laser;
  VerifyConfig verify;
  /// Fully resolved configuration, embedded in output metadata.
  nlohmann::json resolved;
};

/// Parses and validates a resolved configuration document.  Unknown keys,
/// wrong types, and out-of-range values raise ConfigError.
RunConfig parse_config(const nlohmann::json& doc);

/// Case presets A-D: packet center/momentum pairs sharing sigma_p = 1/sqrt(2).
nlohmann::json case_preset(char label);

/// Loads the configuration for a run.  Precedence, lowest to highest:
/// built-in defaults, the file's "case" preset, explicit file fields, the
/// --case flag, then --override key.path=value flags.  `path` may be empty
/// (defaults only), `case_flag` empty for none.  Throws ConfigError on any
/// schema or file problem.
RunConfig load_config(const std::string& scenario, const std::string& path,
                      const std::string& case_flag,
                      const std::vector<std::string>& overrides);

}  // namespace chargeflow::cli

#endif
