// Error functions of real and complex argument, the Faddeeva function and
// Jacobi theta functions at real nome.
//
// Everything here is a pure function of its arguments.

#pragma once

#include <complex>

namespace sqbell {

using cplx = std::complex<double>;

enum class ThetaKind { Theta2, Theta3, Theta4 };

/// erf(x) for finite real x.
double erf_real(double x);

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz), valid in the whole plane.
/// Throws std::overflow_error when the lower half plane value overflows.
cplx faddeeva_w(cplx z);

/// erf(z) for complex z. Throws std::overflow_error when the value is not
/// representable; use erf_scaled in that case.
cplx erf_complex(cplx z);

/// exp(-b^2) * erf(x + i b), evaluated without intermediate overflow.
cplx erf_scaled(double x, double b);

/// exp(-b^2) * erfc(x + i b) for x >= 0. Bounded by 1 in modulus.
cplx erfc_scaled(double x, double b);

/// Jacobi theta function of the given kind at complex argument z and real
/// nome in [0, 1). Throws std::domain_error for nome outside that range.
cplx theta(ThetaKind kind, cplx z, double nome);

/// Real-argument convenience overload.
double theta(ThetaKind kind, double z, double nome);

/// d/dz theta_4(z, nome) for real z.
double theta4_prime(double z, double nome);

/// sum_k exp(-A (k+t)^2 + i B (k+t)) over all integers k, for A > 0.
/// Switches to the Poisson-resummed form when A is small.
cplx gaussian_lattice_sum(double A, double B, double t);

}  // namespace sqbell
