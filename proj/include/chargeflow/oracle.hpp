#ifndef CHARGEFLOW_ORACLE_HPP
#define CHARGEFLOW_ORACLE_HPP

#include <cstddef>
#include <vector>

#include "chargeflow/state.hpp"
#include "chargeflow/units.hpp"

namespace chargeflow::oracle {

/// Probability current at one grid node, split into the carrier part j0, the
/// packet part j1, and the interference part jc.
struct CurrentSample {
  double x = 0.0;
  double t = 0.0;
  double j_total = 0.0;  ///< current of the superposed state, computed directly
  double j0 = 0.0;       ///< p0 / m
  double j1 = 0.0;       ///< (hbar/m) Im(psi1* d_x psi1)
  double jc = 0.0;       ///< (hbar/m) Im(psi0* d_x psi1 + psi1* d_x psi0)
};

/// Splits the probability current at x into its components.  psi1 holds the
/// excitation at time t; t only fixes the carrier phase.  j_total is computed
/// independently from the superposed state with a spectral derivative, so
/// j_total = j0 + j1 + jc is a checkable identity, not a tautology.  The
/// carrier momentum must lie on the grid's momentum lattice.
CurrentSample current_components(const WaveFunction& psi1, const PlaneWave& pw,
                                 double x, double t = 0.0,
                                 const UnitSystem& units = {});

struct IntegratedChargeOptions {
  /// Abel damping rates, strictly decreasing.  The damped cross-current
  /// integrals are extrapolated to rate zero.
  std::vector<double> eps_schedule{0.08, 0.04, 0.02, 0.01};
  /// Largest acceptable extrapolation spread before ConvergenceError.
  double spread_tolerance = 2e-3;
  /// Step-halving target for the time quadrature.
  double quad_tolerance = 1e-6;
  /// Maximum number of step halvings past the initial comparison pair.
  std::size_t max_refinements = 3;
  /// Relative spectral amplitude below which modes are dropped from the sum.
  double band_cutoff = 1e-9;
  /// Initial time step; 0 selects 0.25 over the largest angular frequency
  /// present (packet band, plus the carrier when the cross term is included).
  double dt_initial = 0.0;
  /// When false only the packet current j1 is integrated (no damping needed:
  /// that integral converges absolutely).
  bool include_cross = true;
};

struct IntegratedCharge {
  double value = 0.0;        ///< packet term + extrapolated cross term
  double spread = 0.0;       ///< cross-term extrapolation spread
  double packet_term = 0.0;  ///< undamped integral of j1 over [0, t_max]
  double cross_term = 0.0;   ///< rate-zero extrapolation of the damped jc integral
  /// packet term + damped cross integral, one entry per damping rate.
  std::vector<double> regularized;
  /// max |j1| over the trailing tenth of the window; small once the packet
  /// has cleared the probe.
  double tail_level = 0.0;
  double x = 0.0;   ///< snapped probe position
  double dt = 0.0;  ///< accepted time step
  std::size_t steps = 0;
};

/// Brute-force transported charge past x_probe: the time integral of
/// (j - j0) from 0 to t_max.  The packet current is integrated directly
/// (it converges absolutely); the conditionally convergent cross current is
/// Abel-damped by e^(-eps t) for each rate in the schedule and extrapolated
/// to zero rate.  Time quadrature is composite Simpson with step halving
/// until successive refinements agree to quad_tolerance.  psi1_0 is the
/// excitation at t = 0; its evolution is evaluated spectrally at the probe,
/// so t_max is limited only by wrap-around of the spreading packet on the
/// periodic grid.
IntegratedCharge integrated_charge(const WaveFunction& psi1_0,
                                   const PlaneWave& pw, double x_probe,
                                   double t_max, const UnitSystem& units = {},
                                   const IntegratedChargeOptions& opts = {});

struct DepletionOptions {
  /// Largest acceptable max |rho(x, t_final) - 1| on the probe interval.
  double residual_threshold = 1e-3;
};

/// Continuity-equation estimate of the transported charge: the integral of
/// rho(x, 0) - rho(x, t_final) over [x1, x2], where rho is the density of
/// the superposed state.  Converges to the transported charge as t_final
/// grows and the packet disperses.  Throws AccuracyError if the residual
/// density at t_final exceeds the threshold; t_final = 0 returns exactly 0.
/// Antisymmetric under swapping x1 and x2.
double depletion_charge(const WaveFunction& psi1_0, const PlaneWave& pw,
                        double x1, double x2, double t_final,
                        const UnitSystem& units = {},
                        const DepletionOptions& opts = {});

}  // namespace chargeflow::oracle

#endif
