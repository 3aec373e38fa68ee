#include "chargeflow/charge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "chargeflow/errors.hpp"
#include "chargeflow/kernels.hpp"

namespace chargeflow {

namespace {

void check_boundary_decay(const WaveFunction& psi1, double threshold) {
  const auto& s = psi1.samples;
  const std::size_t n = s.size();
  double edge = std::max({std::abs(s[0]), std::abs(s[1]), std::abs(s[n - 2]),
                          std::abs(s[n - 1])});
  if (edge >= threshold)
    throw AccuracyError(
        "delta_charge: excitation does not decay at the grid boundary "
        "(edge amplitude " + std::to_string(edge) + ")");
}

}  // namespace

ChargeIntegrator::ChargeIntegrator(const WaveFunction& psi1,
                                   const PlaneWave& pw,
                                   const UnitSystem& units,
                                   const ChargeOptions& opts)
    : grid_(psi1.grid) {
  check_boundary_decay(psi1, opts.boundary_threshold);

  const std::size_t n = grid_.size();
  std::vector<double> rho(n);
  kernels::abs2(rho.data(), psi1.samples.data(), n);

  // Interference integrand 2 Re(psi_1 e^{-i p0 x / hbar}).
  std::vector<double> cross(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx carrier = std::polar(1.0, -pw.p0() * grid_.x(i) / units.hbar);
    cross[i] = 2.0 * (psi1.samples[i] * carrier).real();
  }

  density_prefix_.resize(n);
  cross_prefix_.resize(n);
  density_prefix_[0] = 0.0;
  cross_prefix_[0] = 0.0;
  const double half_dx = 0.5 * grid_.dx();
  for (std::size_t i = 1; i < n; ++i) {
    density_prefix_[i] = density_prefix_[i - 1] + half_dx * (rho[i - 1] + rho[i]);
    cross_prefix_[i] = cross_prefix_[i - 1] + half_dx * (cross[i - 1] + cross[i]);
  }
}

double ChargeIntegrator::density_prefix(double x) const {
  return density_prefix_[grid_.index_near(x)];
}

double ChargeIntegrator::cross_prefix(double x) const {
  return cross_prefix_[grid_.index_near(x)];
}

ChargeBreakdown ChargeIntegrator::breakdown(double x1, double x2) const {
  std::size_t i1 = grid_.index_near(x1);
  std::size_t i2 = grid_.index_near(x2);
  ChargeBreakdown result;
  result.x1 = grid_.x(i1);
  result.x2 = grid_.x(i2);
  result.delta_q1 = density_prefix_[i2] - density_prefix_[i1];
  result.delta_qc = cross_prefix_[i2] - cross_prefix_[i1];
  result.delta_qd = result.delta_q1 + result.delta_qc;
  return result;
}

ChargeBreakdown delta_charge(const WaveFunction& psi1, const PlaneWave& pw,
                             double x1, double x2, const UnitSystem& units,
                             const ChargeOptions& opts) {
  return ChargeIntegrator(psi1, pw, units, opts).breakdown(x1, x2);
}

std::vector<double> charge_profile(const WaveFunction& psi1,
                                   const PlaneWave& pw, double x_ref,
                                   const std::vector<double>& probes,
                                   const UnitSystem& units,
                                   const ChargeOptions& opts) {
  if (!std::is_sorted(probes.begin(), probes.end()))
    throw DomainError("charge_profile: probes must be ascending");
  ChargeIntegrator integ(psi1, pw, units, opts);
  std::vector<double> out;
  out.reserve(probes.size());
  for (double x : probes) out.push_back(integ.breakdown(x_ref, x).delta_qd);
  return out;
}

double sign_charge(const SpectralFunction& spec1) {
  const Grid& g = spec1.grid;
  const std::size_t n = g.size();
  std::vector<double> rho(n);
  kernels::abs2(rho.data(), spec1.samples.data(), n);
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double p = g.p(k);
    if (p > 0.0)
      acc += rho[k];
    else if (p < 0.0)
      acc -= rho[k];
  }
  return 0.5 * acc * g.dp();
}

double qc_boundary_term(const SpectralFunction& spec1, const PlaneWave& pw) {
  const Grid& g = spec1.grid;
  std::size_t k = g.momentum_index(pw.p0());
  double amplitude = spec1.samples[k].real();
  double s = pw.p0() > 0.0 ? 1.0 : -1.0;
  return std::sqrt(2.0 * std::numbers::pi * g.hbar()) * s * amplitude;
}

namespace detail {

ChargeBreakdown delta_charge_weighted(const WaveFunction& psi1,
                                      const PlaneWave& pw, double x1, double x2,
                                      double density_weight,
                                      const UnitSystem& units,
                                      const ChargeOptions& opts) {
  ChargeBreakdown b = delta_charge(psi1, pw, x1, x2, units, opts);
  b.delta_q1 *= density_weight;
  b.delta_qd = b.delta_q1 + b.delta_qc;
  return b;
}

}  // namespace detail

}  // namespace chargeflow
