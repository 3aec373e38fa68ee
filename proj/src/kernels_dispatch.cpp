#include <atomic>
#include <cstdlib>
#include <string>

#include "chargeflow/errors.hpp"
#include "chargeflow/kernels.hpp"

namespace chargeflow::kernels {

namespace detail {

#ifndef CHARGEFLOW_HAVE_AVX2
bool avx2_supported() { return false; }
const KernelTable& avx2_table() { return scalar_table(); }
#else
bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}
#endif

}  // namespace detail

namespace {

std::atomic<const detail::KernelTable*> g_table{nullptr};
std::atomic<Backend> g_backend{Backend::scalar};

void install(Backend b) {
  g_backend.store(b, std::memory_order_relaxed);
  g_table.store(b == Backend::avx2 ? &detail::avx2_table()
                                   : &detail::scalar_table(),
                std::memory_order_release);
}

const detail::KernelTable& table() {
  const detail::KernelTable* t = g_table.load(std::memory_order_acquire);
  if (!t) {
    reset_backend();
    t = g_table.load(std::memory_order_acquire);
  }
  return *t;
}

}  // namespace

Backend active_backend() {
  table();
  return g_backend.load(std::memory_order_relaxed);
}

bool backend_available(Backend b) {
  return b == Backend::scalar || detail::avx2_supported();
}

void force_backend(Backend b) {
  if (!backend_available(b))
    throw DomainError(std::string("kernels: backend unavailable: ") +
                      backend_name(b));
  install(b);
}

void reset_backend() {
  Backend pick =
      detail::avx2_supported() ? Backend::avx2 : Backend::scalar;
  if (const char* env = std::getenv("CHARGEFLOW_SIMD")) {
    std::string want(env);
    if (want == "scalar") {
      pick = Backend::scalar;
    } else if (want == "avx2") {
      if (!detail::avx2_supported())
        throw DomainError("kernels: CHARGEFLOW_SIMD=avx2 but AVX2 is unavailable");
      pick = Backend::avx2;
    } else if (!want.empty()) {
      throw DomainError("kernels: unknown CHARGEFLOW_SIMD value: " + want);
    }
  }
  install(pick);
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
  }
  return "unknown";
}

void cmul(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
  table().cmul(dst, a, b, n);
}

void cmul_inplace(cplx* a, const cplx* b, std::size_t n) {
  table().cmul_inplace(a, b, n);
}

void abs2(double* dst, const cplx* src, std::size_t n) {
  table().abs2(dst, src, n);
}

double sum_abs2(const cplx* src, std::size_t n) {
  return table().sum_abs2(src, n);
}

cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) {
  return table().dot_conj(a, b, n);
}

void axpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
  table().axpy(y, alpha, x, n);
}

void scale(cplx* a, cplx alpha, std::size_t n) {
  table().scale(a, alpha, n);
}

void butterfly_pass(cplx* a, cplx* b, const cplx* w, std::size_t m) {
  table().butterfly_pass(a, b, w, m);
}

}  // namespace chargeflow::kernels
