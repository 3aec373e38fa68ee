#ifndef CHARGEFLOW_SCENARIOS_HPP
#define CHARGEFLOW_SCENARIOS_HPP

#include <iosfwd>

#include "chargeflow/run_config.hpp"

namespace chargeflow::cli {

/// (x1, x2, delta_qd) CSV grid over the configured probe range.
int cmd_gauss_map(const RunConfig& cfg, std::ostream& out);

/// (x_g, p0, delta_qd) CSV grid at fixed probes.
int cmd_gauss_scan(const RunConfig& cfg, std::ostream& out);

/// Per-field-strength CSV rows for the laser-pulse pipeline.  A solver
/// convergence failure aborts only that row, recorded in the status column.
int cmd_laser_sweep(const RunConfig& cfg, std::ostream& out);

/// JSON verification report; returns 1 if any check fails.
int cmd_verify(const RunConfig& cfg, std::ostream& out);

/// Dispatches on cfg.scenario and writes to cfg.out (stdout when empty).
/// Returns the process exit code.
int run_scenario(const RunConfig& cfg);

}  // namespace chargeflow::cli

#endif
