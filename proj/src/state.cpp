#include "chargeflow/state.hpp"

#include <cmath>

#include "chargeflow/kernels.hpp"

namespace chargeflow {

std::vector<double> density(const WaveFunction& psi) {
  std::vector<double> rho(psi.samples.size());
  kernels::abs2(rho.data(), psi.samples.data(), psi.samples.size());
  return rho;
}

std::vector<double> spectral_density(const SpectralFunction& spec) {
  std::vector<double> rho(spec.samples.size());
  kernels::abs2(rho.data(), spec.samples.data(), spec.samples.size());
  return rho;
}

double norm(const WaveFunction& psi) {
  return std::sqrt(kernels::sum_abs2(psi.samples.data(), psi.samples.size()) *
                   psi.grid.dx());
}

double norm(const SpectralFunction& spec) {
  return std::sqrt(kernels::sum_abs2(spec.samples.data(), spec.samples.size()) *
                   spec.grid.dp());
}

}  // namespace chargeflow
