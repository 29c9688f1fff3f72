#include "sqbell/asymptotic_limits.hpp"

#include <cmath>
#include <numbers>

namespace sqbell {

double szsz_large_ell(const SqueezingParams& p) {
  validate(p);
  // cos2phi sinh2r / sqrt(cosh^2 2r - cos^2 2phi sinh^2 2r), divided through
  // by cosh 2r, with 1 - c t formed without cancellation.
  const double c = std::cos(2.0 * p.phi);
  const double t = std::tanh(2.0 * p.r);
  const double s = std::sin(p.phi), co = std::cos(p.phi);
  const double one_minus_t = 2.0 * std::exp(-4.0 * p.r) / (1.0 + std::exp(-4.0 * p.r));
  const double ac = std::abs(c);
  const double one_minus_act = (c >= 0.0 ? 2.0 * s * s : 2.0 * co * co) + ac * one_minus_t;
  const double den = std::sqrt(one_minus_act * (1.0 + ac * t));
  return 2.0 / std::numbers::pi * std::atan2(c * t, den);
}

double bell_large_ell(const SqueezingParams& p) { return 2.0 * std::abs(szsz_large_ell(p)); }

double szsz_small_ell_leading(const SqueezingParams& p, const LatticeBinning& b) {
  validate(b);
  const GammaSet g = gamma_set(p);
  return 2.0 * std::exp(-std::numbers::pi * std::numbers::pi / (g.gamma2 * b.ell * b.ell));
}

}  // namespace sqbell
