#ifndef CHARGEFLOW_TRANSFORMS_HPP
#define CHARGEFLOW_TRANSFORMS_HPP

#include "chargeflow/state.hpp"

namespace chargeflow {

/// Discrete form of psi~(p) = (2 pi hbar)^{-1/2} integral psi(x) e^{-ipx/hbar} dx
/// on the grid's momentum lattice, increasing-momentum order.
SpectralFunction to_momentum(const WaveFunction& psi);

/// Inverse transform, psi(x) = (2 pi hbar)^{-1/2} sum_k psi~(p_k) e^{ip_k x/hbar} dp.
/// to_position(to_momentum(psi)) reproduces psi up to rounding.
WaveFunction to_position(const SpectralFunction& spec);

/// Spectral derivative d psi / dx, computed as the inverse transform of
/// (i p / hbar) psi~(p).
WaveFunction spatial_derivative(const WaveFunction& psi);

}  // namespace chargeflow

#endif
