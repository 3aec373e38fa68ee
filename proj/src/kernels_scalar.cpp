#include "chargeflow/kernels.hpp"

// Reference kernels.  Plain loops over the complex arrays, written with
// explicit real arithmetic so the vector backends can match them operation
// for operation.

namespace chargeflow::kernels::detail {

namespace {

void cmul_scalar(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double ar = a[i].real(), ai = a[i].imag();
    double br = b[i].real(), bi = b[i].imag();
    dst[i] = cplx(ar * br - ai * bi, ar * bi + ai * br);
  }
}

void cmul_inplace_scalar(cplx* a, const cplx* b, std::size_t n) {
  cmul_scalar(a, a, b, n);
}

void abs2_scalar(double* dst, const cplx* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double re = src[i].real(), im = src[i].imag();
    dst[i] = re * re + im * im;
  }
}

double sum_abs2_scalar(const cplx* src, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double re = src[i].real(), im = src[i].imag();
    acc += re * re + im * im;
  }
  return acc;
}

cplx dot_conj_scalar(const cplx* a, const cplx* b, std::size_t n) {
  double acc_re = 0.0, acc_im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double ar = a[i].real(), ai = a[i].imag();
    double br = b[i].real(), bi = b[i].imag();
    acc_re += ar * br + ai * bi;
    acc_im += ar * bi - ai * br;
  }
  return cplx(acc_re, acc_im);
}

void axpy_scalar(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
  double cr = alpha.real(), ci = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    double xr = x[i].real(), xi = x[i].imag();
    y[i] += cplx(cr * xr - ci * xi, cr * xi + ci * xr);
  }
}

void scale_scalar(cplx* a, cplx alpha, std::size_t n) {
  double cr = alpha.real(), ci = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    double ar = a[i].real(), ai = a[i].imag();
    a[i] = cplx(cr * ar - ci * ai, cr * ai + ci * ar);
  }
}

void butterfly_pass_scalar(cplx* a, cplx* b, const cplx* w, std::size_t m) {
  for (std::size_t j = 0; j < m; ++j) {
    double wr = w[j].real(), wi = w[j].imag();
    double br = b[j].real(), bi = b[j].imag();
    cplx t(wr * br - wi * bi, wr * bi + wi * br);
    b[j] = a[j] - t;
    a[j] += t;
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table = {
      cmul_scalar,      cmul_inplace_scalar, abs2_scalar,
      sum_abs2_scalar,  dot_conj_scalar,     axpy_scalar,
      scale_scalar,     butterfly_pass_scalar,
  };
  return table;
}

}  // namespace chargeflow::kernels::detail
