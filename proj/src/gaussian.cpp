#include "chargeflow/gaussian.hpp"

#include <cmath>
#include <numbers>

#include "chargeflow/cerf.hpp"

namespace chargeflow::gaussian {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310002;

// Largest |Im| argument handed to cerf; past it the exp(-delta^2) envelope
// is below 1e-61 and the cross term is treated as zero.
constexpr double kMaxDelta = 11.9;

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

double cross_prefactor(const GaussianPacket& g, const UnitSystem& units) {
  return std::sqrt(2.0 * std::numbers::pi * units.hbar) /
         std::sqrt(kSqrt2Pi * g.sigma_p);
}

}  // namespace

cplx spectral_amplitude(const GaussianPacket& g, double p,
                        const UnitSystem& units) {
  g.validate();
  double d = (p - g.p_g) / (2.0 * g.sigma_p);
  double mod = std::exp(-d * d) / std::sqrt(kSqrt2Pi * g.sigma_p);
  return std::polar(mod, -p * g.x_g / units.hbar);
}

cplx position_amplitude(const GaussianPacket& g, double x,
                        const UnitSystem& units) {
  g.validate();
  double sx = g.sigma_x(units);
  double d = (x - g.x_g) / (2.0 * sx);
  double mod = std::exp(-d * d) / std::sqrt(kSqrt2Pi * sx);
  return std::polar(mod, g.p_g * (x - g.x_g) / units.hbar);
}

SpectralFunction sample_spectral(const GaussianPacket& g, const Grid& grid,
                                 const UnitSystem& units) {
  cvec samples(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k)
    samples[k] = spectral_amplitude(g, grid.p(k), units);
  return SpectralFunction(grid, std::move(samples));
}

WaveFunction sample_position(const GaussianPacket& g, const Grid& grid,
                             const UnitSystem& units) {
  cvec samples(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    samples[i] = position_amplitude(g, grid.x(i), units);
  return WaveFunction(grid, std::move(samples));
}

double q1_analytic(const GaussianPacket& g, double x, const UnitSystem& units) {
  g.validate();
  double b = (x - g.x_g) / (std::numbers::sqrt2 * g.sigma_x(units));
  double c = g.p_g / (std::numbers::sqrt2 * g.sigma_p);
  return 0.5 * std::erf(b) + 0.5 * std::erf(c);
}

double qc_analytic(const GaussianPacket& g, const PlaneWave& pw, double x,
                   const UnitSystem& units) {
  g.validate();
  double delta = (pw.p0() - g.p_g) / (2.0 * g.sigma_p);
  if (std::abs(delta) > kMaxDelta) return 0.0;

  double a = (x - g.x_g) / (2.0 * g.sigma_x(units));
  double theta = pw.p0() * g.x_g / units.hbar;
  cplx edge = std::polar(1.0, -theta) * (1.0 + cerf(cplx(a, delta)));
  double bracket = sign(pw.p0()) * std::cos(theta) + edge.real();
  return cross_prefactor(g, units) * std::exp(-delta * delta) * bracket;
}

double delta_qd_analytic(const GaussianPacket& g, const PlaneWave& pw,
                         double x1, double x2, const UnitSystem& units) {
  g.validate();
  double sx = g.sigma_x(units);
  double b1 = (x1 - g.x_g) / (std::numbers::sqrt2 * sx);
  double b2 = (x2 - g.x_g) / (std::numbers::sqrt2 * sx);
  double packet = 0.5 * (std::erf(b2) - std::erf(b1));

  double delta = (pw.p0() - g.p_g) / (2.0 * g.sigma_p);
  if (std::abs(delta) > kMaxDelta) return packet;

  double a1 = (x1 - g.x_g) / (2.0 * sx);
  double a2 = (x2 - g.x_g) / (2.0 * sx);
  cplx diff = cerf(cplx(a2, delta)) - cerf(cplx(a1, delta));
  cplx phase = std::polar(1.0, -pw.p0() * g.x_g / units.hbar);
  double cross = cross_prefactor(g, units) * std::exp(-delta * delta) *
                 (phase * diff).real();
  return packet + cross;
}

}  // namespace chargeflow::gaussian
