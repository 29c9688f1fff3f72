#include "sqbell/exact_correlators.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqbell/errors.hpp"
#include "sqbell/quadrature.hpp"

namespace sqbell {

namespace {

constexpr double pi = std::numbers::pi;
const double sqrt_pi = std::sqrt(pi);

// Quantities shared by all lattice terms at fixed (gammas, ell).
struct Setup {
  double ell, g1, g2, g3, g4;
  double c1, c2;    // gamma_{1,2} ell^2
  double a;         // ell sqrt(gamma_2) / 2, scale of the erf arguments
  double b;         // gamma_4 ell / sqrt(gamma_2), imaginary shift
  double omega3;    // gamma_3 ell^2
  Setup(const GammaSet& g, double l)
      : ell(l), g1(g.gamma1), g2(g.gamma2), g3(g.gamma3), g4(g.gamma4) {
    c1 = g1 * ell * ell;
    c2 = g2 * ell * ell;
    a = 0.5 * ell * std::sqrt(g2);
    b = g4 * ell / std::sqrt(g2);
    omega3 = g3 * ell * ell;
  }
};

// Bound on sum_{k>=0} erfc(x + k h) for x >= 0: first term plus the integral
// of the monotone remainder.
double erfc_tail(double x, double h) {
  const double e = std::erfc(x);
  const double rest = std::max(0.0, std::exp(-x * x) / sqrt_pi - x * e);
  return e + rest / h;
}

// Bound on sum_{k>=0} exp(-(x + k h)^2) for x >= 0.
double gauss_tail(double x, double h) { return std::exp(-x * x) + 0.5 * sqrt_pi * std::erfc(x) / h; }

// Smallest index q >= 1 such that envelope(q) < tol, where envelope bounds the
// contribution of all indices beyond q. Throws once the cap is passed.
template <class Env>
long stop_index(Env&& envelope, double tol, long cap, const char* what) {
  for (long q = 1;; ++q) {
    if (envelope(q) < tol) return q;
    if (q >= cap)
      throw TruncationError(std::string(what) + ": lattice sum not converged at index cap " + std::to_string(cap));
  }
}

QuadOptions quad_options(double tol) {
  QuadOptions o;
  o.abs_tol = tol;
  return o;
}

double edge_width(const Setup& s) { return 0.5 * std::min({1.0, 1.0 / s.a, 2.0 / std::sqrt(s.c1)}); }

long cap_of(const GammaSet& g, const LatticeBinning& b, const TruncationPolicy& t) {
  return t.index_cap > 0 ? t.index_cap : default_index_cap(g, b);
}

// zz: (ell sqrt(g1) / (2 sqrt(pi))) * int_0^1 sum_q (-1)^q G_{q mod 2}(z) E_q(z) dz
// with G_par(z) = sum_{p = par mod 2} exp(-c1 (z + p)^2 / 4) and
// E_q(z) = sum over m of the erf pair at fixed q = n - m.
double szsz_raw(const GammaSet& g, const LatticeBinning& bin, const TruncationPolicy& t) {
  const Setup s(g, bin.ell);
  const double pref = s.ell * std::sqrt(s.g1) / (2.0 * sqrt_pi);
  const double gmax = theta(ThetaKind::Theta3, 0.0, std::exp(-s.c1 / 4.0));
  const long qstop = stop_index([&](long q) { return pref * 2.0 * gmax * 2.0 * erfc_tail(s.a * q, s.a); },
                                t.block_tol, cap_of(g, bin, t), "szsz_exact");
  auto f = [&](double z) {
    const double g0 = gaussian_lattice_sum(s.c1, 0.0, 0.5 * z).real();
    const double g1 = gaussian_lattice_sum(s.c1, 0.0, 0.5 * (z + 1.0)).real();
    double sum = 2.0 * g0 * std::erf(s.a * z);
    for (long q = 1; q <= qstop; ++q) {
      const double e = std::erfc(s.a * (q - z)) - std::erfc(s.a * (q + z));
      sum += (q % 2 ? -2.0 * g1 : 2.0 * g0) * e;
    }
    return Vec<1>{sum};
  };
  const auto br = unit_breakpoints(edge_width(s), 0.0);
  return pref * integrate<1>(f, br, quad_options(t.quad_tol / pref)).value[0];
}

// xx and yy share I1 (the X1 + X3 family) and I2 (the X2 + X4 family):
// xx = pref (I1 + e^{-c2/4} I2), yy = pref (-I1 + e^{-c2/4} I2).
std::array<double, 2> xy_raw(const GammaSet& g, const LatticeBinning& bin, const TruncationPolicy& t) {
  const Setup s(g, bin.ell);
  const double pref = s.ell * std::sqrt(s.g1) / sqrt_pi;
  const double damp = std::exp(-s.c2 / 4.0);
  const double gmax = theta(ThetaKind::Theta3, 0.0, std::exp(-4.0 * s.c1));
  const double env = pref * gmax * 2.0 * (std::exp(-s.c1 / 4.0) + damp);
  const long qstop = stop_index(
      [&](long q) {
        const double x = s.a * (2 * q - 1);
        return env * 2.0 * std::max(erfc_tail(x, 2.0 * s.a), gauss_tail(x, 2.0 * s.a));
      },
      t.block_tol, cap_of(g, bin, t), "sxsx_exact");
  const double h1scale = std::exp(-s.c1 / 4.0);
  // A family is dropped when a bound on its whole contribution is far below
  // the tolerance. For Im z >= 0, |w(z)| <= min(1, 2 / (sqrt(pi) |Re z|)),
  // so |exp(-b^2) erfc(x + ib)| <= wb exp(-x^2) and the q = 0 term of the
  // second family is at most exp(-b^2) + wb.
  const double wb = std::min(1.0, 2.0 / (sqrt_pi * std::abs(s.b)));
  const double bound1 = 2.0 + 4.0 * erfc_tail(s.a, 2.0 * s.a);
  const double bound2 = 2.0 * (std::exp(-s.b * s.b) + wb) + 4.0 * wb * gauss_tail(s.a, 2.0 * s.a);
  const bool use1 = pref * h1scale * gmax * 2.0 * bound1 >= 1e-3 * t.block_tol;
  const bool use2 = pref * damp * gmax * 2.0 * bound2 >= 1e-3 * t.block_tol;
  if (!use1 && !use2) return {0.0, 0.0};
  auto f = [&](double z) {
    double h1[2] = {0.0, 0.0}, g2[2] = {0.0, 0.0};
    for (int par = 0; par < 2; ++par) {
      const double tt = 0.25 * (z + 1.0 + 2.0 * par);
      if (use1) h1[par] = h1scale * gaussian_lattice_sum(4.0 * s.c1, 4.0 * s.omega3, tt).real();
      if (use2) g2[par] = gaussian_lattice_sum(4.0 * s.c1, 0.0, tt).real();
    }
    double i1 = use1 ? 2.0 * h1[0] * std::erf(s.a * z) : 0.0;
    double i2 = use2 ? 2.0 * g2[0] * erf_scaled(s.a * z, s.b).real() : 0.0;
    for (long q = 1; q <= qstop; ++q) {
      const int par = static_cast<int>(q % 2);
      const double x2 = s.a * (2 * q - z), x1 = s.a * (2 * q + z);
      if (use1) i1 += 2.0 * h1[par] * (std::erfc(x2) - std::erfc(x1));
      if (use2) i2 += 2.0 * g2[par] * (erfc_scaled(x2, s.b) - erfc_scaled(x1, s.b)).real();
    }
    return Vec<2>{i1, i2};
  };
  const double omega = std::max(use1 ? std::abs(s.omega3) : 0.0, use2 ? std::abs(s.g4) * s.ell * s.ell : 0.0);
  const auto br = unit_breakpoints(edge_width(s), omega);
  const auto res = integrate<2>(f, br, quad_options(t.quad_tol / (pref * std::max(1.0, damp))));
  const double i1 = res.value[0], i2 = damp * res.value[1];
  return {pref * (i1 + i2), pref * (-i1 + i2)};
}

double integrate_term(const std::function<double(double)>& f, const Setup& s, double omega,
                      const TruncationPolicy& t) {
  const auto br = unit_breakpoints(edge_width(s), omega);
  auto g = [&](double z) { return Vec<1>{f(z)}; };
  return integrate<1>(g, br, quad_options(t.quad_tol)).value[0];
}

}  // namespace

void validate(const LatticeBinning& b) {
  if (!std::isfinite(b.ell) || !(b.ell > 0.0)) throw std::invalid_argument("bin width ell must be finite and positive");
}

void validate(const TruncationPolicy& t) {
  if (t.index_cap < 0) throw std::invalid_argument("index_cap must be >= 1 (or 0 for the default)");
  if (!(t.quad_tol > 0.0) || !(t.block_tol > 0.0)) throw std::invalid_argument("tolerances must be positive");
}

long default_index_cap(const GammaSet& g, const LatticeBinning& b) {
  const double w = b.ell * std::sqrt(std::min(g.gamma1, g.gamma2));
  const double cap = std::ceil(16.0 / w) + 8.0;
  return cap > 1e9 ? 1000000000L : static_cast<long>(cap);
}

double z_term(const GammaSet& g, const LatticeBinning& bin, long n, long m, const TruncationPolicy& t) {
  validate(bin);
  validate(t);
  const Setup s(g, bin.ell);
  const double pref = 0.5 * s.ell * std::sqrt(pi / s.g2);
  auto f = [&](double z) {
    const double p = z + n + m;
    return pref * std::exp(-s.c1 * p * p / 4.0) *
           (std::erf(s.a * (z + n - m)) + std::erf(s.a * (z - n + m)));
  };
  return integrate_term(f, s, 0.0, t);
}

std::array<double, 4> x_terms(const GammaSet& g, const LatticeBinning& bin, double n, double m,
                              const TruncationPolicy& t) {
  validate(bin);
  validate(t);
  const Setup s(g, bin.ell);
  const double pref = s.ell * std::sqrt(pi / s.g2);
  const double h1 = std::exp(-s.c1 / 4.0), h2 = std::exp(-s.c2 / 4.0);
  // exp(-c1/2 - c1 u^2/4 - c1 u/2) = exp(-c1/4) exp(-c1 (u+1)^2 / 4), no overflow.
  auto erfs = [&](double z) { return std::erf(s.a * (z - 2 * n + 2 * m)) + std::erf(s.a * (z + 2 * n - 2 * m)); };
  auto erfc_re = [&](double z) {
    return (erf_scaled(s.a * (z - 2 * n + 2 * m), s.b) + erf_scaled(s.a * (z + 2 * n - 2 * m), s.b)).real();
  };
  const double omega = std::max(std::abs(s.omega3), std::abs(s.g4) * s.ell * s.ell);
  std::array<double, 4> x{};
  x[0] = integrate_term(
      [&](double z) {
        const double y = z + 2 * n + 2 * m + 1.0;
        return pref * h1 * std::exp(-s.c1 * y * y / 4.0) * std::cos(s.omega3 * y) * erfs(z);
      },
      s, omega, t);
  x[1] = integrate_term(
      [&](double z) {
        const double y = z + 2 * n + 2 * m + 1.0;
        return pref * h2 * std::exp(-s.c1 * y * y / 4.0) * erfc_re(z);
      },
      s, omega, t);
  x[2] = integrate_term(
      [&](double z) {
        const double y = z - 2 * n - 2 * m - 3.0;
        return pref * h1 * std::exp(-s.c1 * y * y / 4.0) * std::cos(s.omega3 * y) * erfs(z);
      },
      s, omega, t);
  x[3] = integrate_term(
      [&](double z) {
        const double y = z - 2 * n - 2 * m - 3.0;
        return pref * h2 * std::exp(-s.c1 * y * y / 4.0) * erfc_re(z);
      },
      s, omega, t);
  return x;
}

double szsz_exact(const SqueezingParams& p, const LatticeBinning& b, const TruncationPolicy& t) {
  validate(b);
  validate(t);
  return szsz_raw(gamma_set(p), b, t);
}

double sxsx_exact(const SqueezingParams& p, const LatticeBinning& b, const TruncationPolicy& t) {
  validate(b);
  validate(t);
  return xy_raw(gamma_set(p), b, t)[0];
}

double sysy_exact(const SqueezingParams& p, const LatticeBinning& b, const TruncationPolicy& t) {
  validate(b);
  validate(t);
  return xy_raw(gamma_set(p), b, t)[1];
}

CorrelatorTriple exact_triple(const SqueezingParams& p, const LatticeBinning& b, const TruncationPolicy& t) {
  validate(b);
  validate(t);
  const GammaSet g = gamma_set(p);
  const auto xy = xy_raw(g, b, t);
  return {szsz_raw(g, b, t), xy[0], xy[1]};
}

double sxsz_diagnostic(const SqueezingParams& p, const LatticeBinning& bin, int nodes_per_bin) {
  validate(bin);
  if (nodes_per_bin < 2 || nodes_per_bin > 64) throw std::invalid_argument("nodes_per_bin must be in [2, 64]");
  const GammaSet g = gamma_set(p);
  const auto [A, B] = coefficients(p);
  const double ell = bin.ell;
  // Box [-K ell, K ell] with K even, wide enough for the slowest Gaussian
  // direction of |Psi|^2.
  const double width = 9.0 / std::sqrt(std::min(g.gamma1, g.gamma2)) + 2.0 * ell;
  long k = static_cast<long>(std::ceil(width / ell));
  k += k % 2;
  if (k > 4000) throw TruncationError("sxsz_diagnostic: box too large for the requested bin width");

  // Gauss-Legendre nodes on [0, 1].
  std::vector<double> xs, ws;
  auto rule = [&](auto tag) {
    using R = boost::math::quadrature::gauss<double, decltype(tag)::value>;
    for (std::size_t i = 0; i < R::abscissa().size(); ++i) {
      const double x = R::abscissa()[i], w = R::weights()[i];
      xs.push_back(0.5 + 0.5 * x);
      ws.push_back(0.5 * w);
      if (x != 0.0) {
        xs.push_back(0.5 - 0.5 * x);
        ws.push_back(0.5 * w);
      }
    }
  };
  if (nodes_per_bin <= 8)
    rule(std::integral_constant<int, 8>{});
  else if (nodes_per_bin <= 16)
    rule(std::integral_constant<int, 16>{});
  else
    rule(std::integral_constant<int, 30>{});

  // Psi up to its constant normalization, which is restored at the end.
  auto psi = [&](double q1, double q2) { return std::exp(A * (q1 * q1 + q2 * q2) - B * q1 * q2); };
  const double t = std::tanh(p.r);
  const cplx root = std::sqrt(1.0 - std::polar(t * t, -4.0 * p.phi));
  const double norm2 = std::norm(1.0 / (std::cosh(p.r) * sqrt_pi * root));

  double total = 0.0;
  for (long n = -k / 2; n < k / 2; ++n) {
    for (long m = -k; m < k; ++m) {
      double cell = 0.0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double q1 = (2 * n + xs[i]) * ell;
        for (std::size_t j = 0; j < xs.size(); ++j) {
          const double q2 = (m + xs[j]) * ell;
          cell += ws[i] * ws[j] * (std::conj(psi(q1, q2)) * psi(q1 + ell, q2)).real();
        }
      }
      total += (m % 2 == 0 ? 1.0 : -1.0) * cell;
    }
  }
  return std::abs(2.0 * norm2 * ell * ell * total);
}

}  // namespace sqbell
