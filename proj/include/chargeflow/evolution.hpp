#ifndef CHARGEFLOW_EVOLUTION_HPP
#define CHARGEFLOW_EVOLUTION_HPP

#include <functional>

#include "chargeflow/state.hpp"

namespace chargeflow {

/// Localized laser pulse in velocity gauge:
///   A(x,t) = A0 cos^2(pi (x - x_center)/width) sin^2(pi t/tau) cos(omega0 t)
/// inside [x_center - width/2, x_center + width/2] x [-tau, 0], zero outside.
struct PulseParams {
  double a0 = 0.0;      ///< peak vector potential
  double f0 = 0.0;      ///< peak electric field max|E| (kept consistent with a0)
  double omega0 = 0.0;  ///< carrier angular frequency
  double tau = 0.0;     ///< pulse duration; active on [-tau, 0]
  double x_center = 0.0;
  double width = 0.0;   ///< interaction-region length l

  double x_left() const { return x_center - 0.5 * width; }
  double x_right() const { return x_center + 0.5 * width; }

  void validate() const {
    if (!(omega0 > 0.0) || !(tau > 0.0) || !(width > 0.0))
      throw DomainError("PulseParams: omega0, tau and width must be positive");
  }

  /// Builds a pulse from the peak vector potential.  tau <= 0 selects the
  /// default duration of four optical cycles, 8 pi / omega0.
  static PulseParams from_a0(double a0, double omega0, double x_center,
                             double width, double tau = 0.0);

  /// Builds a pulse from the peak electric field; the vector-potential
  /// amplitude is solved numerically by bracketing on max|E|.
  static PulseParams from_f0(double f0, double omega0, double x_center,
                             double width, double tau = 0.0);
};

double vector_potential(const PulseParams& pp, double x, double t);

/// E = -dA/dt, differentiated in closed form.
double electric_field(const PulseParams& pp, double x, double t);

/// max over (x,t) of |electric_field|; defines the F0 <-> A0 calibration.
double peak_electric_field(const PulseParams& pp);

enum class Scheme { crank_nicolson };

struct SolverConfig {
  double dt = 0.05;
  Scheme scheme = Scheme::crank_nicolson;
  double convergence = 1e-8;  ///< allowed sup-norm change under dt halving
};

/// Exact spectral free evolution by the phase e^{-i omega(p) t}.
WaveFunction free_propagate(const WaveFunction& psi, double t,
                            const UnitSystem& units = {});
SpectralFunction free_propagate(const SpectralFunction& spec, double t,
                                const UnitSystem& units = {});

/// Propagates the plane wave pw from t = -tau to t = 0 under the
/// minimal-coupling Hamiltonian (p - eA)^2 / 2m with the pulse pp, using a
/// norm-preserving Crank-Nicolson step in the frame comoving with the
/// carrier.  The phase is anchored so that with A0 = 0 the result is exactly
/// e^{i p0 x/hbar}.  Runs at cfg.dt and cfg.dt/2 and throws ConvergenceError
/// if the two disagree beyond cfg.convergence; returns the finer result.
WaveFunction evolve_pulse(const Grid& grid, const PlaneWave& pw,
                          const PulseParams& pp, const SolverConfig& cfg,
                          const UnitSystem& units = {});

/// psi_1(x) = psi(x) - e^{i p0 x / hbar}.  Throws AccuracyError when the
/// excitation has not stayed clear of the grid edges (outermost tenth of the
/// nodes on each side above the threshold).
WaveFunction extract_excitation(const WaveFunction& psi, const PlaneWave& pw,
                                const UnitSystem& units = {},
                                double localization_threshold = 1e-6);

namespace detail {

/// Comoving-frame Crank-Nicolson propagation of u, where
/// psi(x,t) = u(x,t) e^{i(p0 x/hbar - omega(p0) t)}, under an arbitrary
/// vector potential a(x,t).  u starts as all ones at t_start.  Exposed for
/// gauge and scheme tests.
cvec evolve_comoving(const Grid& grid, const PlaneWave& pw,
                     const std::function<double(double, double)>& a,
                     double t_start, double t_end, double dt,
                     const UnitSystem& units);

}  // namespace detail

}  // namespace chargeflow

#endif
