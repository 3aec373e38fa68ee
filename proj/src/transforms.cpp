#include "chargeflow/transforms.hpp"

#include <cmath>
#include <numbers>

#include "chargeflow/fft.hpp"
#include "chargeflow/kernels.hpp"

namespace chargeflow {

namespace {

// The FFT indexes momenta as k mod n; storage order wants them increasing,
// which is a rotation by n/2.  The x_min offset of the grid enters as the
// phase exp(-i p_k x_min / hbar) on each bin.

std::size_t fft_bin(std::size_t k, std::size_t n) { return (k + n / 2) % n; }

}  // namespace

SpectralFunction to_momentum(const WaveFunction& psi) {
  const Grid& g = psi.grid;
  const std::size_t n = g.size();
  cvec buf = psi.samples;
  FftPlan::get(n)->forward(buf.data());

  const double scale = g.dx() / std::sqrt(2.0 * std::numbers::pi * g.hbar());
  cvec out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx phase = std::polar(scale, -g.p(k) * g.x_min() / g.hbar());
    out[k] = buf[fft_bin(k, n)] * phase;
  }
  return SpectralFunction(g, std::move(out));
}

WaveFunction to_position(const SpectralFunction& spec) {
  const Grid& g = spec.grid;
  const std::size_t n = g.size();
  cvec buf(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx phase = std::polar(1.0, g.p(k) * g.x_min() / g.hbar());
    buf[fft_bin(k, n)] = spec.samples[k] * phase;
  }
  FftPlan::get(n)->inverse(buf.data());

  const double scale = g.dp() / std::sqrt(2.0 * std::numbers::pi * g.hbar());
  kernels::scale(buf.data(), cplx(scale, 0.0), n);
  return WaveFunction(g, std::move(buf));
}

WaveFunction spatial_derivative(const WaveFunction& psi) {
  SpectralFunction spec = to_momentum(psi);
  const Grid& g = spec.grid;
  for (std::size_t k = 0; k < g.size(); ++k)
    spec.samples[k] *= cplx(0.0, g.p(k) / g.hbar());
  return to_position(spec);
}

}  // namespace chargeflow
