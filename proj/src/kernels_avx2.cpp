#include <immintrin.h>

#include "chargeflow/kernels.hpp"

// AVX2 kernels.  A __m256d register holds two complex doubles in interleaved
// [re, im, re, im] layout.  Products use the same mul/sub/add sequence as the
// scalar reference (no FMA), so elementwise kernels match it bit for bit;
// reductions accumulate lanewise and only agree to rounding.

namespace chargeflow::kernels::detail {

namespace {

const double* as_d(const cplx* p) { return reinterpret_cast<const double*>(p); }
double* as_d(cplx* p) { return reinterpret_cast<double*>(p); }

// [ar*br - ai*bi, ar*bi + ai*br] for both packed complexes.
inline __m256d cmul2(__m256d a, __m256d b) {
  __m256d ar = _mm256_movedup_pd(a);
  __m256d ai = _mm256_permute_pd(a, 0xF);
  __m256d bsw = _mm256_permute_pd(b, 0x5);
  return _mm256_addsub_pd(_mm256_mul_pd(ar, b), _mm256_mul_pd(ai, bsw));
}

void cmul_avx2(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d va = _mm256_loadu_pd(as_d(a + i));
    __m256d vb = _mm256_loadu_pd(as_d(b + i));
    _mm256_storeu_pd(as_d(dst + i), cmul2(va, vb));
  }
  for (; i < n; ++i) {
    double ar = a[i].real(), ai = a[i].imag();
    double br = b[i].real(), bi = b[i].imag();
    dst[i] = cplx(ar * br - ai * bi, ar * bi + ai * br);
  }
}

void cmul_inplace_avx2(cplx* a, const cplx* b, std::size_t n) {
  cmul_avx2(a, a, b, n);
}

void abs2_avx2(double* dst, const cplx* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v0 = _mm256_loadu_pd(as_d(src + i));
    __m256d v1 = _mm256_loadu_pd(as_d(src + i + 2));
    __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
    // hadd interleaves the two sources as [z0, z2, z1, z3]; restore order.
    _mm256_storeu_pd(dst + i, _mm256_permute4x64_pd(h, 0xD8));
  }
  for (; i < n; ++i) {
    double re = src[i].real(), im = src[i].imag();
    dst[i] = re * re + im * im;
  }
}

double sum_abs2_avx2(const cplx* src, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d v = _mm256_loadu_pd(as_d(src + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) {
    double re = src[i].real(), im = src[i].imag();
    total += re * re + im * im;
  }
  return total;
}

cplx dot_conj_avx2(const cplx* a, const cplx* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d va = _mm256_loadu_pd(as_d(a + i));
    __m256d vb = _mm256_loadu_pd(as_d(b + i));
    __m256d ar = _mm256_movedup_pd(va);
    __m256d ai = _mm256_permute_pd(va, 0xF);
    __m256d bsw = _mm256_permute_pd(vb, 0x5);
    // conj(a)*b needs [ar*br + ai*bi, ar*bi - ai*br]; addsub has the opposite
    // sign pattern, so feed it the negated second product.
    __m256d neg = _mm256_sub_pd(zero, _mm256_mul_pd(ai, bsw));
    acc = _mm256_add_pd(acc, _mm256_addsub_pd(_mm256_mul_pd(ar, vb), neg));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double acc_re = lanes[0] + lanes[2];
  double acc_im = lanes[1] + lanes[3];
  for (; i < n; ++i) {
    double ar = a[i].real(), ai = a[i].imag();
    double br = b[i].real(), bi = b[i].imag();
    acc_re += ar * br + ai * bi;
    acc_im += ar * bi - ai * br;
  }
  return cplx(acc_re, acc_im);
}

void axpy_avx2(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
  __m256d cr = _mm256_set1_pd(alpha.real());
  __m256d ci = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(as_d(x + i));
    __m256d vy = _mm256_loadu_pd(as_d(y + i));
    __m256d xsw = _mm256_permute_pd(vx, 0x5);
    __m256d prod =
        _mm256_addsub_pd(_mm256_mul_pd(cr, vx), _mm256_mul_pd(ci, xsw));
    _mm256_storeu_pd(as_d(y + i), _mm256_add_pd(vy, prod));
  }
  double ar = alpha.real(), ai = alpha.imag();
  for (; i < n; ++i) {
    double xr = x[i].real(), xi = x[i].imag();
    y[i] += cplx(ar * xr - ai * xi, ar * xi + ai * xr);
  }
}

void scale_avx2(cplx* a, cplx alpha, std::size_t n) {
  __m256d cr = _mm256_set1_pd(alpha.real());
  __m256d ci = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d va = _mm256_loadu_pd(as_d(a + i));
    __m256d asw = _mm256_permute_pd(va, 0x5);
    _mm256_storeu_pd(as_d(a + i), _mm256_addsub_pd(_mm256_mul_pd(cr, va),
                                                   _mm256_mul_pd(ci, asw)));
  }
  double cr1 = alpha.real(), ci1 = alpha.imag();
  for (; i < n; ++i) {
    double ar = a[i].real(), ai = a[i].imag();
    a[i] = cplx(cr1 * ar - ci1 * ai, cr1 * ai + ci1 * ar);
  }
}

void butterfly_pass_avx2(cplx* a, cplx* b, const cplx* w, std::size_t m) {
  std::size_t j = 0;
  for (; j + 2 <= m; j += 2) {
    __m256d vw = _mm256_loadu_pd(as_d(w + j));
    __m256d vb = _mm256_loadu_pd(as_d(b + j));
    __m256d va = _mm256_loadu_pd(as_d(a + j));
    __m256d t = cmul2(vw, vb);
    _mm256_storeu_pd(as_d(b + j), _mm256_sub_pd(va, t));
    _mm256_storeu_pd(as_d(a + j), _mm256_add_pd(va, t));
  }
  for (; j < m; ++j) {
    double wr = w[j].real(), wi = w[j].imag();
    double br = b[j].real(), bi = b[j].imag();
    cplx t(wr * br - wi * bi, wr * bi + wi * br);
    b[j] = a[j] - t;
    a[j] += t;
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table = {
      cmul_avx2,      cmul_inplace_avx2, abs2_avx2,
      sum_abs2_avx2,  dot_conj_avx2,     axpy_avx2,
      scale_avx2,     butterfly_pass_avx2,
  };
  return table;
}

}  // namespace chargeflow::kernels::detail
