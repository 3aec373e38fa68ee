#include "chargeflow/fft.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

#include "chargeflow/errors.hpp"
#include "chargeflow/kernels.hpp"

namespace chargeflow {

FftPlan::FftPlan(std::size_t n) : n_(n) {
  if (n < 2 || !std::has_single_bit(n))
    throw DomainError("FftPlan: length must be a power of two and at least 2");

  int bits = std::countr_zero(n);
  bitrev_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t r = 0;
    for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
    bitrev_[i] = r;
  }

  twiddles_fwd_.reserve(n - 1);
  twiddles_inv_.reserve(n - 1);
  for (std::size_t m = 1; m < n; m *= 2) {
    for (std::size_t j = 0; j < m; ++j) {
      double ang = -std::numbers::pi * static_cast<double>(j) /
                   static_cast<double>(m);
      auto w = std::polar(1.0, ang);
      twiddles_fwd_.push_back(w);
      twiddles_inv_.push_back(std::conj(w));
    }
  }
}

void FftPlan::run(std::complex<double>* data,
                  const std::vector<std::complex<double>>& twiddles) const {
  for (std::size_t i = 0; i < n_; ++i) {
    std::size_t r = bitrev_[i];
    if (i < r) std::swap(data[i], data[r]);
  }
  std::size_t stage_offset = 0;
  for (std::size_t m = 1; m < n_; m *= 2) {
    const std::complex<double>* w = twiddles.data() + stage_offset;
    for (std::size_t base = 0; base < n_; base += 2 * m)
      kernels::butterfly_pass(data + base, data + base + m, w, m);
    stage_offset += m;
  }
}

void FftPlan::forward(std::complex<double>* data) const {
  run(data, twiddles_fwd_);
}

void FftPlan::inverse(std::complex<double>* data) const {
  run(data, twiddles_inv_);
}

std::shared_ptr<const FftPlan> FftPlan::get(std::size_t n) {
  static std::mutex mtx;
  static std::map<std::size_t, std::shared_ptr<const FftPlan>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const FftPlan>(n);
  return slot;
}

}  // namespace chargeflow
