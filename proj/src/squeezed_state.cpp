#include "sqbell/squeezed_state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sqbell {

namespace {

constexpr double pi = std::numbers::pi;

double log_add_exp(double a, double b) {
  const double m = std::max(a, b);
  if (m == -INFINITY) return m;
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

// 2 / (e^{2r} s + e^{-2r} c) for non-negative weights s, c.
double inverse_weighted(double r, double s, double c) {
  if (r <= 300.0) return 2.0 * std::exp(-2.0 * r) / (s + std::exp(-4.0 * r) * c);
  const double ls = s > 0.0 ? 2.0 * r + std::log(s) : -INFINITY;
  const double lc = c > 0.0 ? -2.0 * r + std::log(c) : -INFINITY;
  const double lg = std::log(2.0) - log_add_exp(ls, lc);
  if (lg > 709.0 || lg < -708.0) throw std::overflow_error("gamma_set: shape parameter is not representable");
  return std::exp(lg);
}

}  // namespace

void validate(const SqueezingParams& p) {
  if (!std::isfinite(p.r) || !std::isfinite(p.phi)) throw std::invalid_argument("squeezing parameters must be finite");
  if (p.r < 0.0) throw std::invalid_argument("squeezing amplitude r must be non-negative");
}

GaussianCoefficients coefficients(const SqueezingParams& p) {
  validate(p);
  const double t = std::tanh(p.r);
  const cplx e2 = std::polar(1.0, -2.0 * p.phi);
  const cplx e4t2 = e2 * e2 * (t * t);
  return {(e4t2 + 1.0) / (2.0 * (e4t2 - 1.0)), 2.0 * e2 * t / (e4t2 - 1.0)};
}

GammaSet gamma_set(const SqueezingParams& p) {
  validate(p);
  const double s = std::sin(p.phi), c = std::cos(p.phi);
  const double s2 = s * s, c2 = c * c;
  GammaSet g;
  // cosh 2r +- cos 2phi sinh 2r = e^{2r} (cos^2 or sin^2) + e^{-2r} (sin^2 or cos^2)
  g.gamma1 = inverse_weighted(p.r, c2, s2);
  g.gamma2 = inverse_weighted(p.r, s2, c2);
  const double sin2 = std::sin(2.0 * p.phi);
  if (sin2 == 0.0 || p.r == 0.0) {
    g.gamma3 = g.gamma4 = 0.0;
    return g;
  }
  const double t = std::tanh(p.r);
  const double omt = 2.0 * std::exp(-2.0 * p.r) / (1.0 + std::exp(-2.0 * p.r));  // 1 - tanh r
  g.gamma3 = -2.0 * t * sin2 / ((1.0 + t) * (1.0 + t) - 4.0 * t * s2);
  g.gamma4 = -2.0 * t * sin2 / (omt * omt + 4.0 * t * s2);
  return g;
}

cplx wavefunction(const SqueezingParams& p, double q1, double q2) {
  const auto [A, B] = coefficients(p);
  const double t = std::tanh(p.r);
  const cplx root = std::sqrt(1.0 - std::polar(t * t, -4.0 * p.phi));
  const cplx norm = 1.0 / (std::cosh(p.r) * std::sqrt(pi) * root);
  return norm * std::exp(A * (q1 * q1 + q2 * q2) - B * q1 * q2);
}

double wigner(const SqueezingParams& p, double q1, double p1, double q2, double p2) {
  validate(p);
  const double ch = std::cosh(2.0 * p.r), sh = std::sinh(2.0 * p.r);
  const double arg = -ch * (q1 * q1 + q2 * q2 + p1 * p1 + p2 * p2) +
                     2.0 * sh * std::sin(2.0 * p.phi) * (q1 * p2 + q2 * p1) +
                     2.0 * sh * std::cos(2.0 * p.phi) * (q1 * q2 - p1 * p2);
  return std::exp(arg) / (pi * pi);
}

SqueezingParams rotate(const SqueezingParams& p, double alpha) { return {p.r, p.phi + alpha}; }

DualityRecord dual(const SqueezingParams& p) { return {{p.r, pi / 2.0 - p.phi}, -1, 1, -1}; }

DualityRecord canonicalize_phi(const SqueezingParams& p) {
  validate(p);
  double phi = p.phi - pi * std::floor(p.phi / pi);  // [0, pi)
  if (phi > pi / 2.0) phi = pi - phi;                 // phi -> -phi leaves all three invariant
  // Snap to a 2^-46 grid so that phi and pi/2 - phi, each rounded to double
  // independently, land on the same canonical angle.
  auto snap = [](double x) { return std::ldexp(std::round(std::ldexp(x, 46)), -46); };
  if (phi > pi / 4.0) return {{p.r, snap(pi / 2.0 - phi)}, -1, 1, -1};
  return {{p.r, snap(phi)}, 1, 1, 1};
}

}  // namespace sqbell
