#ifndef CHARGEFLOW_STATE_HPP
#define CHARGEFLOW_STATE_HPP

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "chargeflow/errors.hpp"
#include "chargeflow/grid.hpp"
#include "chargeflow/units.hpp"

namespace chargeflow {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

/// Free-particle dispersion omega(p) = p^2 / (2 m hbar).
inline double dispersion(double p, const UnitSystem& units = {}) {
  return p * p / (2.0 * units.mass * units.hbar);
}

/// Unit-amplitude carrier wave exp(i(p0 x - hbar omega(p0) t)/hbar).
/// The momentum must be nonzero: the transported-charge decomposition
/// divides by the carrier velocity.
class PlaneWave {
 public:
  explicit PlaneWave(double p0) : p0_(p0) {
    if (p0 == 0.0) throw DomainError("PlaneWave: p0 must be nonzero");
  }

  double p0() const { return p0_; }
  double omega(const UnitSystem& units = {}) const {
    return dispersion(p0_, units);
  }

  cplx amplitude(double x, double t, const UnitSystem& units = {}) const {
    return std::polar(1.0, p0_ * x / units.hbar - omega(units) * t);
  }

 private:
  double p0_;
};

/// Complex field sampled on the position grid.
struct WaveFunction {
  Grid grid;
  cvec samples;

  WaveFunction(Grid g, cvec s) : grid(g), samples(std::move(s)) {
    if (samples.size() != grid.size())
      throw DomainError("WaveFunction: sample count does not match the grid");
  }
};

/// Complex amplitudes on the momentum lattice, stored in increasing-momentum
/// order p_k = (k - n/2) dp.
struct SpectralFunction {
  Grid grid;
  cvec samples;

  SpectralFunction(Grid g, cvec s) : grid(g), samples(std::move(s)) {
    if (samples.size() != grid.size())
      throw DomainError("SpectralFunction: sample count does not match the grid");
  }
};

/// |psi|^2 on the position grid.
std::vector<double> density(const WaveFunction& psi);

/// |psi~|^2 on the momentum lattice.
std::vector<double> spectral_density(const SpectralFunction& spec);

/// Discrete L2 norm sqrt(sum |psi_i|^2 dx).
double norm(const WaveFunction& psi);

/// Discrete L2 norm sqrt(sum |psi~_k|^2 dp).
double norm(const SpectralFunction& spec);

}  // namespace chargeflow

#endif
