#ifndef CHARGEFLOW_GAUSSIAN_HPP
#define CHARGEFLOW_GAUSSIAN_HPP

#include "chargeflow/state.hpp"

namespace chargeflow::gaussian {

/// Minimum-uncertainty Gaussian excitation packet, defined by its spectral
/// form: mean momentum p_G, momentum width sigma_p, center x_G.  The position
/// width is tied to sigma_x = hbar / (2 sigma_p).
struct GaussianPacket {
  double x_g = 0.0;
  double p_g = 0.0;
  double sigma_p = 1.0;

  double sigma_x(const UnitSystem& units = {}) const {
    return units.hbar / (2.0 * sigma_p);
  }

  void validate() const {
    if (!(sigma_p > 0.0))
      throw DomainError("GaussianPacket: sigma_p must be positive");
  }
};

/// Spectral amplitude
///   psi~_1(p) = (sqrt(2 pi) sigma_p)^{-1/2}
///               exp(-(p - p_G)^2 / (4 sigma_p^2) - i p x_G / hbar).
cplx spectral_amplitude(const GaussianPacket& g, double p,
                        const UnitSystem& units = {});

/// Exact inverse transform of spectral_amplitude,
///   psi_1(x) = (sqrt(2 pi) sigma_x)^{-1/2}
///              exp(-(x - x_G)^2 / (4 sigma_x^2) + i p_G (x - x_G) / hbar).
cplx position_amplitude(const GaussianPacket& g, double x,
                        const UnitSystem& units = {});

SpectralFunction sample_spectral(const GaussianPacket& g, const Grid& grid,
                                 const UnitSystem& units = {});
WaveFunction sample_position(const GaussianPacket& g, const Grid& grid,
                             const UnitSystem& units = {});

/// Packet-only transported charge through x,
///   Q_1(x) = 1/2 erf((x - x_G)/(sqrt(2) sigma_x)) + 1/2 erf(p_G/(sqrt(2) sigma_p)).
double q1_analytic(const GaussianPacket& g, double x,
                   const UnitSystem& units = {});

/// Interference (cross) transported charge through x:
///   Q_c(x) = C exp(-delta^2) [ sign(p0) cos(p0 x_G/hbar)
///            + Re{ e^{-i p0 x_G/hbar} (1 + erf((x-x_G)/(2 sigma_x) + i delta)) } ],
/// with delta = (p0 - p_G)/(2 sigma_p) and C = sqrt(2 pi hbar) (sqrt(2 pi) sigma_p)^{-1/2}.
/// For |delta| > 11.9 the cross term is below exp(-141) and is returned as 0.
double qc_analytic(const GaussianPacket& g, const PlaneWave& pw, double x,
                   const UnitSystem& units = {});

/// Closed form for the transported-charge difference between probes,
/// Delta Q_d = [Q_1(x2) - Q_1(x1)] + [Q_c(x2) - Q_c(x1)], evaluated directly
/// from the erf differences.  Antisymmetric under swapping x1 and x2.
double delta_qd_analytic(const GaussianPacket& g, const PlaneWave& pw,
                         double x1, double x2, const UnitSystem& units = {});

}  // namespace chargeflow::gaussian

#endif
