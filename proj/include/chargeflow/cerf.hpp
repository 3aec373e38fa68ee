#ifndef CHARGEFLOW_CERF_HPP
#define CHARGEFLOW_CERF_HPP

#include <complex>

namespace chargeflow {

/// Error function of a complex argument, accurate to about 1e-13 relative
/// (in complex modulus) on the strip |Im z| <= 12.  Arguments outside the
/// strip or non-finite throw DomainError.
std::complex<double> cerf(std::complex<double> z);

/// Imaginary error function erfi(x) = -i erf(ix) for real x.
double erfi(double x);

}  // namespace chargeflow

#endif
