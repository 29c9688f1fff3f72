#include "sqbell/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sqbell {

namespace {

constexpr double kTwoOverSqrtPi = 2.0 * std::numbers::inv_sqrtpi;
constexpr double kMaxExp = 708.5;

// Below this modulus erf is summed from its Maclaurin series; the largest
// term is then about exp(|z|^2) so at most one digit is lost.
constexpr double kSeriesRadius = 1.5;

// Nome crossover written as a = -log(nome). For a >= pi the q-series needs
// only a handful of terms and theta_4(0) stays above 0.9, so there is no
// cancellation; below it the modular (Poisson) form is used.
constexpr double kModularSwitch = std::numbers::pi;

cplx erf_series(cplx z) {
  const cplx z2 = z * z;
  cplx term = z;
  cplx sum = z;
  for (int k = 1; k < 200; ++k) {
    term *= -z2 / static_cast<double>(k);
    const cplx add = term / static_cast<double>(2 * k + 1);
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return kTwoOverSqrtPi * sum;
}

// Faddeeva function in the closed upper half plane and its extension by
// w(-z) = 2 exp(-z^2) - w(z). Region split and term counts follow the
// Gautschi/Poppe-Wijers scheme: Maclaurin series near the origin, Laplace
// continued fraction far away, and a Taylor-accelerated continued fraction
// in between.
cplx wofz(double xi, double yi) {
  const double xabs = std::abs(xi);
  const double yabs = std::abs(yi);
  const double x = xabs / 6.3;
  const double y = yabs / 4.4;

  double qrho = x * x + y * y;
  const double xquad = xabs * xabs - yabs * yabs;
  const double yquad = 2.0 * xabs * yabs;
  const bool small = qrho < 0.085264;

  double u = 0.0, v = 0.0, u2 = 0.0, v2 = 0.0;
  if (small) {
    qrho = (1.0 - 0.85 * y) * std::sqrt(qrho);
    const int n = static_cast<int>(std::lround(6.0 + 72.0 * qrho));
    int j = 2 * n + 1;
    double xsum = 1.0 / j;
    double ysum = 0.0;
    for (int i = n; i >= 1; --i) {
      j -= 2;
      const double xaux = (xsum * xquad - ysum * yquad) / i;
      ysum = (xsum * yquad + ysum * xquad) / i;
      xsum = xaux + 1.0 / j;
    }
    const double u1 = -kTwoOverSqrtPi * (xsum * yabs + ysum * xabs) + 1.0;
    const double v1 = kTwoOverSqrtPi * (xsum * xabs - ysum * yabs);
    const double daux = std::exp(-xquad);
    u2 = daux * std::cos(yquad);
    v2 = -daux * std::sin(yquad);
    u = u1 * u2 - v1 * v2;
    v = u1 * v2 + v1 * u2;
  } else {
    double h = 0.0, h2 = 0.0;
    int kapn = 0, nu = 0;
    if (qrho > 1.0) {
      qrho = std::sqrt(qrho);
      nu = static_cast<int>(3.0 + 1442.0 / (26.0 * qrho + 77.0));
    } else {
      qrho = (1.0 - y) * std::sqrt(1.0 - qrho);
      h = 1.88 * qrho;
      h2 = 2.0 * h;
      kapn = static_cast<int>(std::lround(7.0 + 34.0 * qrho));
      nu = static_cast<int>(std::lround(16.0 + 26.0 * qrho));
    }
    const bool accel = h > 0.0;
    double qlambda = accel ? std::pow(h2, kapn) : 0.0;
    double rx = 0.0, ry = 0.0, sx = 0.0, sy = 0.0;
    for (int n = nu; n >= 0; --n) {
      const double np1 = n + 1.0;
      double tx = yabs + h + np1 * rx;
      const double ty = xabs - np1 * ry;
      const double c = 0.5 / (tx * tx + ty * ty);
      rx = c * tx;
      ry = c * ty;
      if (accel && n <= kapn) {
        tx = qlambda + sx;
        sx = rx * tx - ry * sy;
        sy = ry * tx + rx * sy;
        qlambda /= h2;
      }
    }
    if (accel) {
      u = kTwoOverSqrtPi * sx;
      v = kTwoOverSqrtPi * sy;
    } else {
      u = kTwoOverSqrtPi * rx;
      v = kTwoOverSqrtPi * ry;
    }
    if (yabs == 0.0) u = std::exp(-xabs * xabs);
  }

  if (yi < 0.0) {
    if (small) {
      u2 *= 2.0;
      v2 *= 2.0;
    } else {
      if (-xquad > kMaxExp) throw std::overflow_error("faddeeva_w: result overflows");
      const double w1 = 2.0 * std::exp(-xquad);
      u2 = w1 * std::cos(yquad);
      v2 = -w1 * std::sin(yquad);
    }
    u = u2 - u;
    v = v2 - v;
    if (xi > 0.0) v = -v;
  } else if (xi < 0.0) {
    v = -v;
  }
  return {u, v};
}

void check_nome(double nome) {
  if (!(nome >= 0.0 && nome < 1.0)) throw std::domain_error("theta: nome must lie in [0, 1)");
}

cplx theta_series(ThetaKind kind, cplx z, double a) {
  const double reach = std::abs(z.imag()) / a + 2.0;
  if (kind == ThetaKind::Theta2) {
    cplx sum = 0.0;
    for (int p = 0; p < 1000000; ++p) {
      const double e = p + 0.5;
      const cplx term = std::exp(-a * e * e) * std::cos(2.0 * e * z);
      sum += term;
      if (p > reach && std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return 2.0 * sum;
  }
  const double sign = kind == ThetaKind::Theta4 ? -1.0 : 1.0;
  cplx sum = 0.0;
  double s = 1.0;
  for (int p = 1; p < 1000000; ++p) {
    s *= sign;
    const cplx term = s * std::exp(-a * p * p) * std::cos(2.0 * p * z);
    sum += term;
    if (p > reach && std::abs(term) <= 1e-17 * std::abs(1.0 + 2.0 * sum)) break;
  }
  return 1.0 + 2.0 * sum;
}

// theta_3(z, e^-a) = sqrt(pi/a) sum_k exp(-(z - pi k)^2 / a); the other two
// kinds follow from a half-period shift or an alternating sign.
cplx theta_modular(ThetaKind kind, cplx z, double a) {
  constexpr double pi = std::numbers::pi;
  const cplx zs = kind == ThetaKind::Theta4 ? z - pi / 2.0 : z;
  const long centre = std::lround(zs.real() / pi);
  const long span = static_cast<long>(std::sqrt(45.0 * a) / pi) + 2;
  cplx sum = 0.0;
  for (long k = centre - span; k <= centre + span; ++k) {
    const cplx d = zs - pi * static_cast<double>(k);
    cplx term = std::exp(-d * d / a);
    if (kind == ThetaKind::Theta2 && (k & 1)) term = -term;
    sum += term;
  }
  const cplx out = std::sqrt(pi / a) * sum;
  if (!std::isfinite(out.real()) || !std::isfinite(out.imag()))
    throw std::overflow_error("theta: result overflows");
  return out;
}

// sum_k exp(-alpha (k + tau)^2) exp(i beta k), walking outward from the
// largest term with multiplicative updates so that each call needs only two
// exponentials per direction. Term magnitudes decrease monotonically away
// from the centre, which bounds the neglected remainder.
cplx lattice_walk(double alpha, double tau, double beta) {
  const long k0 = std::lround(-tau);
  const double s0 = static_cast<double>(k0) + tau;  // |s0| <= 1/2
  const cplx centre = std::polar(std::exp(-alpha * s0 * s0), beta * static_cast<double>(k0));
  const double damp = std::exp(-2.0 * alpha);
  const cplx step_up = std::polar(1.0, beta), step_down = std::conj(step_up);
  cplx sum = centre;
  // Upward: term(k+1) / term(k) = exp(-alpha (2 s + 1)) exp(i beta).
  cplx term = centre;
  double ratio = std::exp(-alpha * (2.0 * s0 + 1.0));
  for (int i = 0; i < 100000 && ratio > 0.0; ++i) {
    term *= ratio * step_up;
    sum += term;
    if (std::abs(term.real()) + std::abs(term.imag()) <= 1e-18 * std::abs(sum)) break;
    ratio *= damp;
  }
  // Downward: term(k-1) / term(k) = exp(-alpha (1 - 2 s)) exp(-i beta).
  term = centre;
  ratio = std::exp(-alpha * (1.0 - 2.0 * s0));
  for (int i = 0; i < 100000 && ratio > 0.0; ++i) {
    term *= ratio * step_down;
    sum += term;
    if (std::abs(term.real()) + std::abs(term.imag()) <= 1e-18 * std::abs(sum)) break;
    ratio *= damp;
  }
  return sum;
}

}  // namespace

double erf_real(double x) { return std::erf(x); }

cplx faddeeva_w(cplx z) { return wofz(z.real(), z.imag()); }

cplx erf_complex(cplx z) {
  if (z.imag() == 0.0) return {std::erf(z.real()), 0.0};
  if (std::abs(z) < kSeriesRadius) return erf_series(z);
  if (z.real() < 0.0) return -erf_complex(-z);
  // erf z = 1 - exp(-z^2) w(iz); the modulus is bounded by exp(y^2 - x^2)/|z|.
  const double x = z.real(), y = z.imag();
  if (y * y - x * x > kMaxExp) throw std::overflow_error("erf_complex: result overflows");
  const cplx iz{-y, x};
  return 1.0 - std::exp(-z * z) * faddeeva_w(iz);
}

cplx erfc_scaled(double x, double b) {
  // exp(-b^2) erfc(x+ib) = exp(-x^2 - 2ixb) w(-b + ix), with Im(-b+ix) >= 0.
  // |w| <= 1 in the upper half plane, so the result underflows with exp(-x^2).
  if (x * x > 746.0) return 0.0;
  const cplx phase = std::polar(std::exp(-x * x), -2.0 * x * b);
  return phase * faddeeva_w({-b, x});
}

cplx erf_scaled(double x, double b) {
  if (x < 0.0) return -std::conj(erf_scaled(-x, b));
  cplx out;
  if (std::hypot(x, b) < kSeriesRadius) {
    out = std::exp(-b * b) * erf_series({x, b});
  } else {
    out = std::exp(-b * b) - erfc_scaled(x, b);
  }
  if (x == 0.0) out.real(0.0);
  if (b == 0.0) out.imag(0.0);
  return out;
}

cplx theta(ThetaKind kind, cplx z, double nome) {
  check_nome(nome);
  if (nome == 0.0) return kind == ThetaKind::Theta2 ? cplx{0.0} : cplx{1.0};
  const double a = -std::log(nome);
  return a >= kModularSwitch ? theta_series(kind, z, a) : theta_modular(kind, z, a);
}

double theta(ThetaKind kind, double z, double nome) { return theta(kind, cplx{z, 0.0}, nome).real(); }

double theta4_prime(double z, double nome) {
  check_nome(nome);
  if (nome == 0.0) return 0.0;
  const double a = -std::log(nome);
  if (a >= kModularSwitch) {
    double sum = 0.0, s = 1.0;
    for (int p = 1; p < 1000000; ++p) {
      s = -s;
      const double term = s * p * std::exp(-a * p * p) * std::sin(2.0 * p * z);
      sum += term;
      if (p > 2 && std::abs(p * std::exp(-a * p * p)) <= 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return -4.0 * sum;
  }
  constexpr double pi = std::numbers::pi;
  const double zs = z - pi / 2.0;
  const long centre = std::lround(zs / pi);
  const long span = static_cast<long>(std::sqrt(45.0 * a) / pi) + 2;
  double sum = 0.0;
  for (long k = centre - span; k <= centre + span; ++k) {
    const double d = zs - pi * static_cast<double>(k);
    sum += -2.0 * d / a * std::exp(-d * d / a);
  }
  return std::sqrt(pi / a) * sum;
}

cplx gaussian_lattice_sum(double A, double B, double t) {
  constexpr double pi = std::numbers::pi;
  if (!(A > 0.0)) throw std::domain_error("gaussian_lattice_sum: A must be positive");
  if (A >= kModularSwitch) return std::polar(1.0, B * t) * lattice_walk(A, t, B);
  // Poisson: sqrt(pi/A) sum_j exp(-pi^2 (j - B / (2 pi))^2 / A) exp(2 pi i j t).
  const double tf = t - std::floor(t);
  return std::sqrt(pi / A) * lattice_walk(pi * pi / A, -B / (2.0 * pi), 2.0 * pi * tf);
}

}  // namespace sqbell
