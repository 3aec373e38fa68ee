#ifndef CHARGEFLOW_FFT_HPP
#define CHARGEFLOW_FFT_HPP

#include <complex>
#include <cstdint>
#include <cstddef>
#include <memory>
#include <vector>

namespace chargeflow {

/// Iterative radix-2 complex FFT for power-of-two lengths.  forward() applies
/// sum_j x_j exp(-2 pi i j k / n), inverse() the conjugate kernel; neither is
/// normalized, so inverse(forward(x)) = n * x.  Butterflies run through the
/// kernel dispatch layer.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);

  std::size_t size() const { return n_; }

  void forward(std::complex<double>* data) const;
  void inverse(std::complex<double>* data) const;

  /// Shared, cached plan for length n.  Thread safe.
  static std::shared_ptr<const FftPlan> get(std::size_t n);

 private:
  void run(std::complex<double>* data,
           const std::vector<std::complex<double>>& twiddles) const;

  std::size_t n_;
  std::vector<std::uint32_t> bitrev_;
  // Twiddles for all stages back to back: stage with half-size m contributes
  // the m values exp(-+ i pi j / m), j = 0..m-1.
  std::vector<std::complex<double>> twiddles_fwd_;
  std::vector<std::complex<double>> twiddles_inv_;
};

}  // namespace chargeflow

#endif
