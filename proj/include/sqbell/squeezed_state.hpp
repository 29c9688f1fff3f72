// Two-mode squeezed state: parameters, position-space Gaussian, shape
// parameters gamma_1..gamma_4, symmetries and the Wigner function.

#pragma once

#include "sqbell/special_functions.hpp"

namespace sqbell {

/// Squeezing amplitude r >= 0 and squeezing angle phi (radians, stored as
/// given).
struct SqueezingParams {
  double r = 0.0;
  double phi = 0.0;
};

/// Psi(q1, q2) is proportional to exp(A (q1^2 + q2^2) - B q1 q2).
struct GaussianCoefficients {
  cplx A;
  cplx B;
};

struct GammaSet {
  double gamma1 = 2.0;
  double gamma2 = 2.0;
  double gamma3 = 0.0;
  double gamma4 = 0.0;
};

/// Parameters of a symmetry image together with the signs that map the
/// (zz, xx, yy) correlators of the image back to the original state.
struct DualityRecord {
  SqueezingParams params;
  int sz_sign = 1;
  int sx_sign = 1;
  int sy_sign = 1;
};

/// Throws std::invalid_argument unless r >= 0 and both fields are finite.
void validate(const SqueezingParams& p);

GaussianCoefficients coefficients(const SqueezingParams& p);

/// Shape parameters from the hyperbolic closed forms. Throws
/// std::overflow_error if gamma_1 or gamma_2 is not representable.
GammaSet gamma_set(const SqueezingParams& p);

/// Normalized wavefunction Psi(q1, q2), principal branch of the square root
/// in the normalization.
cplx wavefunction(const SqueezingParams& p, double q1, double q2);

double wigner(const SqueezingParams& p, double q1, double p1, double q2, double p2);

/// Phase-space rotation by alpha of both modes: the squeezing angle shifts
/// by alpha.
SqueezingParams rotate(const SqueezingParams& p, double alpha);

/// phi -> pi/2 - phi, which flips the signs of the zz and yy correlators.
DualityRecord dual(const SqueezingParams& p);

/// Maps phi into [0, pi/4] using the period pi, the reflection phi -> -phi
/// and the duality; the record carries the canonical parameters and the
/// signs that recover the original correlators. The canonical angle is
/// rounded to a multiple of 2^-46.
DualityRecord canonicalize_phi(const SqueezingParams& p);

}  // namespace sqbell
