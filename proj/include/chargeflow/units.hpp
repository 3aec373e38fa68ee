#ifndef CHARGEFLOW_UNITS_HPP
#define CHARGEFLOW_UNITS_HPP

#include <numbers>

#include "chargeflow/errors.hpp"

namespace chargeflow {

/// Unit conventions for the physics layer.  All computations run in atomic
/// units (hbar = m_e = e = 1); the conversion constants exist so that
/// laboratory quantities (wavelengths in nm, durations in fs, field
/// strengths in V/m) can be mapped onto the atomic scale at the interface.
struct UnitSystem {
  double hbar = 1.0;    ///< reduced Planck constant
  double mass = 1.0;    ///< particle mass
  double charge = 1.0;  ///< particle charge magnitude

  // CODATA 2018 conversion factors.
  static constexpr double bohr_per_nm = 18.897261246257702;
  static constexpr double autime_per_fs = 41.341374575751;
  static constexpr double aufield_per_volt_per_meter = 1.0 / 5.14220674763e11;
  static constexpr double speed_of_light = 137.035999084;

  /// Angular frequency (atomic units) of light with vacuum wavelength
  /// lambda_nm nanometres.
  static double omega_from_wavelength_nm(double lambda_nm) {
    if (!(lambda_nm > 0.0))
      throw DomainError("omega_from_wavelength_nm: wavelength must be positive");
    return 2.0 * std::numbers::pi * speed_of_light / (lambda_nm * bohr_per_nm);
  }

  void validate() const {
    if (!(hbar > 0.0) || !(mass > 0.0) || !(charge > 0.0))
      throw DomainError("UnitSystem: hbar, mass and charge must be positive");
  }
};

}  // namespace chargeflow

#endif
