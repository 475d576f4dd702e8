#pragma once

#include <complex>

namespace idelta {

using cplx = std::complex<double>;

/// Overflow is flagged and propagated as an infinite result rather than
/// thrown. Pass a status object to observe the flag.
struct SpecStatus {
    bool overflow = false;
};

/// Scaled complementary error function e^{x^2} erfc(x).
///
/// Never overflows for x >= 0. For x < 0 the value 2 e^{x^2} - erfcx(-x)
/// overflows once x^2 exceeds the double range; the result is then +inf and
/// status.overflow is set.
double erfcx(double x);
double erfcx(double x, SpecStatus& status);

/// Faddeeva function w(z) = e^{-z^2} erfc(-iz).
///
/// Upper half-plane values come from a rational (Weideman) approximation near
/// the origin and the Laplace continued fraction further out. Lower half-plane
/// values use w(z) = 2 e^{-z^2} - w(-z).
cplx faddeeva_w(cplx z);
cplx faddeeva_w(cplx z, SpecStatus& status);

/// erfc(z) = e^{-z^2} w(iz).
cplx erfc_complex(cplx z);
cplx erfc_complex(cplx z, SpecStatus& status);

/// Complex scaled erfc, e^{z^2} erfc(z) = w(iz).
inline cplx erfcx_complex(cplx z) { return faddeeva_w(cplx(-z.imag(), z.real())); }

/// e^{z^2} erfc(z) - 1 / (sqrt(pi) z) for Re z >= 0, accurate where the two
/// terms nearly cancel (large |z|).
cplx erfcx_remainder(cplx z);
double erfcx_remainder(double x);

/// Principal square root with arg in (-pi, pi]: the result has a nonnegative
/// real part and the negative real axis maps to the positive imaginary axis
/// regardless of the sign of the imaginary zero.
cplx sqrt_principal(cplx z);

} // namespace idelta
