#include "sqbell/approx_correlators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>


namespace sqbell {

namespace {

constexpr double pi = std::numbers::pi;
const double sqrt_pi = std::sqrt(pi);

// Largest (gamma_1 + |gamma_3|) ell^2 at which the approximation is trusted.
// Calibrated against the exact sums for r <= 3, phi in [0, pi/4] and
// log2(ell) in [-2, 4], where the largest error below it is 2.3e-3.
constexpr double kApproxTrustLimit = 0.4;

// The functions u_y = y erf(c y) enter only through second differences, so
// u_y = |y| - w(y) with w(y) = |y| erfc(c |y|); the |y| part contributes the
// explicit constants below.
double w(double y, double c) {
  const double ay = std::abs(y);
  return ay * std::erfc(c * ay);
}

// u_{q+1/2} + u_{q-1/2} - 2 u_q for integer q >= 0.
double d_half(long q, double c) {
  return (q == 0 ? 1.0 : 0.0) - (w(q + 0.5, c) + w(q - 0.5, c) - 2.0 * w(q, c));
}

// u_{q+1} + u_q - 2 u_{q+1/2} for integer q >= 0.
double d_shift(long q, double c) { return -(w(q + 1.0, c) + w(q, c) - 2.0 * w(q + 0.5, c)); }

// Complex analogue with y -> y + i beta, scaled by e^{-b^2}, b = c beta, and
// with the part linear in |y| removed.
cplx v_tilde(double y, double c, double beta, double b) {
  if (y > 0.0) return -cplx(y, beta) * erfc_scaled(c * y, b);
  if (y < 0.0) return cplx(y, beta) * std::conj(erfc_scaled(-c * y, b));
  return cplx(0.0, beta) * erf_scaled(0.0, b);
}

// Re of the second difference of e^{-b^2} (y + i beta) erf(c (y + i beta)).
double d_complex(long q, double c, double beta, double b) {
  const cplx d = v_tilde(q - 0.5, c, beta, b) + v_tilde(q + 0.5, c, beta, b) - 2.0 * v_tilde(q, c, beta, b);
  return d.real() + (q == 0 ? std::exp(-b * b) : 0.0);
}

// f(0) + 2 sum_{q=1}^{n-1} f(q)
template <class F>
double two_sided(F&& f, long n) {
  double s = 0.0;
  for (long q = n - 1; q >= 1; --q) s += f(q);
  return f(0) + 2.0 * s;
}

template <class F>
double one_sided(F&& f, long n) {
  double s = 0.0;
  for (long q = n - 1; q >= 0; --q) s += f(q);
  return s;
}

long q_lim_of(const GammaSet& g, const LatticeBinning& b, const ApproxConfig& cfg) {
  if (cfg.q_lim < 0) throw std::invalid_argument("q_lim must be >= 1 (or 0 for the default)");
  return cfg.q_lim > 0 ? cfg.q_lim : default_q_lim(g, b);
}

double szsz_from(const GammaSet& g, double ell, long qlim) {
  const double c1 = g.gamma1 * ell * ell, c2 = g.gamma2 * ell * ell;
  const double c = ell * std::sqrt(g.gamma2);
  const double k = ell * std::sqrt(g.gamma1 / pi);
  const double th3 = theta(ThetaKind::Theta3, 0.0, std::exp(-c1));
  const double th2 = theta(ThetaKind::Theta2, 0.0, std::exp(-c1));
  const double s1 = one_sided([&](long q) { return d_half(q, c); }, qlim);
  const double s2 = one_sided([&](long q) { return d_shift(q, c); }, qlim);
  return -2.0 / pi * std::sqrt(g.gamma1 / g.gamma2) * theta(ThetaKind::Theta3, 0.0, std::exp(-c1 / 4.0)) *
             theta(ThetaKind::Theta4, 0.0, std::exp(-c2 / 4.0)) -
         k * th3 * std::erf(0.5 * c) + 2.0 * k * th3 * s1 - 2.0 * k * th2 * s2;
}

// Returns the X1 + X3 family and the X2 + X4 family, each multiplied by the
// overall prefactor sqrt(gamma_1 gamma_2) / (2 pi).
std::array<double, 2> x_families(const GammaSet& g, double ell, long qlim) {
  const double c1 = g.gamma1 * ell * ell, c2 = g.gamma2 * ell * ell;
  const double c = ell * std::sqrt(g.gamma2);
  const double beta = g.gamma4 / g.gamma2;
  const double b = c * beta;
  const double base = std::sqrt(g.gamma1 * g.gamma2) / (2.0 * pi) * ell * std::sqrt(pi / g.gamma2);
  const double tail = 4.0 / (c * sqrt_pi);

  const double s1 = 2.0 * two_sided([&](long q) { return d_half(q, c); }, qlim) -
                    tail * theta(ThetaKind::Theta4, 0.0, std::exp(-c2 / 4.0));
  const double t1 = base * std::exp(-c1 / 4.0) * theta(ThetaKind::Theta2, g.gamma3 * ell * ell, std::exp(-c1)) * s1;

  const double s2 = 2.0 * two_sided([&](long q) { return d_complex(q, c, beta, b); }, qlim) -
                    tail * theta(ThetaKind::Theta4, 0.5 * g.gamma4 * ell * ell, std::exp(-c2 / 4.0));
  const double t2 = base * std::exp(-c2 / 4.0) * theta(ThetaKind::Theta2, 0.0, std::exp(-c1)) * s2;
  return {t1, t2};
}

}  // namespace

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Generic: return "generic";
    case Regime::LargeSqueezing: return "large_squeezing";
    case Regime::DualSaddle: return "dual_saddle";
  }
  return "unknown";
}

Regime classify_regime(const SqueezingParams& p) {
  validate(p);
  const double phi = std::abs(std::remainder(p.phi, pi));  // [0, pi/2]
  if (p.r > 3.0 && std::cos(phi) < 0.1 * std::exp(-p.r)) return Regime::DualSaddle;
  if (p.r > 3.0 && phi < 0.2) return Regime::LargeSqueezing;
  return Regime::Generic;
}

long default_q_lim(const GammaSet& g, const LatticeBinning& b) {
  const double n = std::ceil(4.0 / (b.ell * std::sqrt(g.gamma2))) + 8.0;
  return n > 1e8 ? 100000000L : static_cast<long>(n);
}

double szsz_approx(const SqueezingParams& p, const LatticeBinning& b, const ApproxConfig& cfg) {
  validate(b);
  const GammaSet g = gamma_set(p);
  return szsz_from(g, b.ell, q_lim_of(g, b, cfg));
}

double sxsx_approx(const SqueezingParams& p, const LatticeBinning& b, const ApproxConfig& cfg) {
  validate(b);
  const GammaSet g = gamma_set(p);
  const auto f = x_families(g, b.ell, q_lim_of(g, b, cfg));
  return f[0] + f[1];
}

double sysy_approx(const SqueezingParams& p, const LatticeBinning& b, const ApproxConfig& cfg) {
  validate(b);
  const GammaSet g = gamma_set(p);
  const auto f = x_families(g, b.ell, q_lim_of(g, b, cfg));
  return -f[0] + f[1];
}

CorrelatorTriple approx_triple(const SqueezingParams& p, const LatticeBinning& b, const ApproxConfig& cfg) {
  validate(b);
  const GammaSet g = gamma_set(p);
  const long n = q_lim_of(g, b, cfg);
  const auto f = x_families(g, b.ell, n);
  return {szsz_from(g, b.ell, n), f[0] + f[1], -f[0] + f[1]};
}

bool approx_trusted(const SqueezingParams& p, const LatticeBinning& b, const CorrelatorTriple& t) {
  const GammaSet g = gamma_set(p);
  const double bound = 1.0 + 1e-9;
  if (std::abs(t.szsz) > bound || std::abs(t.sxsx) > bound || std::abs(t.sysy) > bound) return false;
  return (g.gamma1 + std::abs(g.gamma3)) * b.ell * b.ell <= kApproxTrustLimit;
}

CorrelatorTriple large_squeezing_triple_x(double x, const LatticeBinning& b) {
  validate(b);
  if (!std::isfinite(x) || x < 0.0) throw std::invalid_argument("e^r phi must be finite and non-negative");
  if (x < 1e-300) return {1.0, 1.0, -1.0};
  const double ell = b.ell;
  const double c = ell * std::sqrt(2.0) / x;  // ell sqrt(gamma_2) with gamma_2 = 2 / x^2
  const double th4 = theta(ThetaKind::Theta4, 0.0, std::exp(-c * c / 4.0));
  const double tail = 2.0 / (c * sqrt_pi);

  // Alternating sum over half-integer steps, run until w has decayed.
  double sz_sum = 0.0;
  for (long j = 0;; ++j) {
    const double y = 0.5 * j;
    const double d = (j == 0 ? 1.0 : 0.0) - (w(y + 0.5, c) + w(y - 0.5, c) - 2.0 * w(y, c));
    sz_sum += (j % 2 ? -d : d);
    if (c * (y - 0.5) > 7.0) break;
  }
  const double sz = -2.0 * tail * th4 - std::erf(0.5 * c) + 2.0 * sz_sum;

  double sx_sum = 0.0;
  for (long q = 1;; ++q) {
    sx_sum += d_half(q, c);
    if (c * (q - 0.5) > 7.0) break;
  }
  sx_sum = d_half(0, c) + 2.0 * sx_sum;
  const double sx = std::exp(-0.5 * x * x * ell * ell) * (sx_sum - tail * th4);
  return {sz, sx, -sx};
}

CorrelatorTriple large_squeezing_triple(const SqueezingParams& p, const LatticeBinning& b) {
  validate(p);
  const double phi = std::abs(std::remainder(p.phi, pi));
  const double x = phi == 0.0 ? 0.0 : std::exp(p.r + std::log(phi));
  return large_squeezing_triple_x(x, b);
}

CorrelatorTriple dual_saddle_triple(const SqueezingParams& p, bool* in_regime) {
  validate(p);
  if (in_regime) *in_regime = classify_regime(p) == Regime::DualSaddle;
  return {-1.0, 1.0, 1.0};
}

}  // namespace sqbell
