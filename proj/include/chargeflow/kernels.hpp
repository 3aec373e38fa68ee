#ifndef CHARGEFLOW_KERNELS_HPP
#define CHARGEFLOW_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <string>

namespace chargeflow::kernels {

using cplx = std::complex<double>;

/// Instruction-set backend for the array kernels.  The scalar backend is the
/// reference implementation; vector backends must agree with it elementwise
/// to a few ulp (reductions may differ slightly through association order).
enum class Backend { scalar, avx2 };

/// Backend currently installed in the dispatch table.
Backend active_backend();

/// True if the given backend can run on this machine.
bool backend_available(Backend b);

/// Installs a backend, overriding autodetection.  Throws DomainError if the
/// backend is unavailable.  Intended for tests and benchmarks; not safe to
/// call concurrently with running kernels.
void force_backend(Backend b);

/// Re-runs autodetection, honoring the CHARGEFLOW_SIMD environment variable
/// ("scalar" or "avx2") when set.
void reset_backend();

const char* backend_name(Backend b);

/// dst[i] = a[i] * b[i]
void cmul(cplx* dst, const cplx* a, const cplx* b, std::size_t n);

/// a[i] *= b[i]
void cmul_inplace(cplx* a, const cplx* b, std::size_t n);

/// dst[i] = |src[i]|^2
void abs2(double* dst, const cplx* src, std::size_t n);

/// sum_i |src[i]|^2
double sum_abs2(const cplx* src, std::size_t n);

/// sum_i conj(a[i]) * b[i]
cplx dot_conj(const cplx* a, const cplx* b, std::size_t n);

/// y[i] += alpha * x[i]
void axpy(cplx* y, cplx alpha, const cplx* x, std::size_t n);

/// a[i] *= alpha
void scale(cplx* a, cplx alpha, std::size_t n);

/// One radix-2 butterfly block: for j < m,
///   t = w[j] * b[j];  b[j] = a[j] - t;  a[j] = a[j] + t.
void butterfly_pass(cplx* a, cplx* b, const cplx* w, std::size_t m);

namespace detail {

struct KernelTable {
  void (*cmul)(cplx*, const cplx*, const cplx*, std::size_t);
  void (*cmul_inplace)(cplx*, const cplx*, std::size_t);
  void (*abs2)(double*, const cplx*, std::size_t);
  double (*sum_abs2)(const cplx*, std::size_t);
  cplx (*dot_conj)(const cplx*, const cplx*, std::size_t);
  void (*axpy)(cplx*, cplx, const cplx*, std::size_t);
  void (*scale)(cplx*, cplx, std::size_t);
  void (*butterfly_pass)(cplx*, cplx*, const cplx*, std::size_t);
};

const KernelTable& scalar_table();
const KernelTable& avx2_table();  // only valid if backend_available(avx2)
bool avx2_supported();

}  // namespace detail

}  // namespace chargeflow::kernels

#endif
