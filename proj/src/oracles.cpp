#include "sqbell/oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sqbell/parallel.hpp"

namespace sqbell {

namespace {

constexpr double pi = std::numbers::pi;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

// Uniform in [0, 1) with 53 random bits.
inline double to_unit(std::uint32_t a, std::uint32_t b) {
  return ((a >> 5) * 67108864.0 + (b >> 6)) * (1.0 / 9007199254740992.0);
}

// |Psi|^2 is proportional to exp(-alpha (q1^2 + q2^2) + 2 beta q1 q2).
struct Density {
  double alpha, beta;
  explicit Density(const SqueezingParams& p) {
    const auto [A, B] = coefficients(p);
    alpha = -2.0 * A.real();
    beta = -B.real();
  }
  // Curvatures along (1, 1) and (1, -1), per unit of the diagonal coordinate.
  double k_plus() const { return 2.0 * (alpha - beta); }
  double k_minus() const { return 2.0 * (alpha + beta); }
};

constexpr std::int64_t chunk = 1 << 16;

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> c, std::array<std::uint32_t, 2> k) {
  constexpr std::uint32_t m0 = 0xD2511F53u, m1 = 0xCD9E8D57u;
  constexpr std::uint32_t w0 = 0x9E3779B9u, w1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      k[0] += w0;
      k[1] += w1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(m0, c[0], hi0, lo0);
    mulhilo(m1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
  return c;
}

McEstimate mc_szsz(const SqueezingParams& p, const LatticeBinning& bin, std::int64_t n, std::uint64_t seed,
                   int threads) {
  validate(p);
  validate(bin);
  if (n < 10000) throw std::invalid_argument("mc_szsz needs at least 10^4 samples");
  const Density d(p);
  // u = (Q1 + Q2) / 2 and v = (Q1 - Q2) / 2 are independent Gaussians.
  const double su = std::sqrt(1.0 / (2.0 * d.k_plus()));
  const double sv = std::sqrt(1.0 / (2.0 * d.k_minus()));
  const std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  const double inv_ell = 1.0 / bin.ell;

  const auto chunks = static_cast<std::size_t>((n + chunk - 1) / chunk);
  std::vector<std::int64_t> sums(chunks, 0);
  parallel_for(chunks, threads, [&](std::size_t c) {
    const std::int64_t begin = static_cast<std::int64_t>(c) * chunk;
    const std::int64_t end = std::min(n, begin + chunk);
    std::int64_t s = 0;
    for (std::int64_t i = begin; i < end; ++i) {
      const auto ui = static_cast<std::uint64_t>(i);
      const auto r = philox4x32({static_cast<std::uint32_t>(ui), static_cast<std::uint32_t>(ui >> 32), 0u, 0u}, key);
      const double u1 = 1.0 - to_unit(r[0], r[1]);  // (0, 1]
      const double u2 = to_unit(r[2], r[3]);
      const double rad = std::sqrt(-2.0 * std::log(u1));
      const double u = su * rad * std::cos(2.0 * pi * u2);
      const double v = sv * rad * std::sin(2.0 * pi * u2);
      const auto n1 = static_cast<std::int64_t>(std::floor((u + v) * inv_ell));
      const auto n2 = static_cast<std::int64_t>(std::floor((u - v) * inv_ell));
      s += ((n1 + n2) & 1) ? -1 : 1;
    }
    sums[c] = s;
  });
  std::int64_t total = 0;
  for (auto s : sums) total += s;
  McEstimate e;
  e.n_samples = n;
  e.seed = seed;
  e.mean = static_cast<double>(total) / static_cast<double>(n);
  const double var = std::max(0.0, 1.0 - e.mean * e.mean) * static_cast<double>(n) / static_cast<double>(n - 1);
  e.std_error = std::sqrt(var / static_cast<double>(n));
  return e;
}

double quad_min_box(const SqueezingParams& p) {
  const Density d(p);
  return 6.0 / std::sqrt(std::min(d.k_plus(), d.k_minus()));
}

double quad_sxsx(const SqueezingParams& p, const LatticeBinning& bin, double box, int grid_n, int threads) {
  validate(p);
  validate(bin);
  if (grid_n < 20) throw std::invalid_argument("quad_sxsx needs at least 20 points per bin width");
  if (!(box >= quad_min_box(p))) throw std::invalid_argument("quad_sxsx box is smaller than 6 standard deviations");
  const auto [A, B] = coefficients(p);
  const double t = std::tanh(p.r);
  const cplx root = std::sqrt(1.0 - std::polar(t * t, -4.0 * p.phi));
  const double norm2 = std::norm(1.0 / (std::cosh(p.r) * std::sqrt(pi) * root));
  const double ell = bin.ell;
  const double h = ell / grid_n;

  // Log of Psi up to the normalization.
  auto lpsi = [&](double q1, double q2) { return A * (q1 * q1 + q2 * q2) - B * q1 * q2; };

  // Bins [2n ell, (2n+1) ell] fully inside the box.
  const auto nlo = static_cast<long>(std::ceil(-box / (2.0 * ell)));
  const auto nhi = static_cast<long>(std::floor((box - ell) / (2.0 * ell)));
  if (nhi < nlo) throw std::invalid_argument("quad_sxsx box holds no bins");
  const auto nb = static_cast<std::size_t>(nhi - nlo + 1);

  // Row sums per first-mode bin, combined in index order.
  std::vector<double> rows(nb, 0.0);
  parallel_for(nb, threads, [&](std::size_t ib) {
    const double a1 = 2.0 * (nlo + static_cast<long>(ib)) * ell;
    double acc = 0.0;
    for (int i = 0; i < grid_n; ++i) {
      const double q1 = a1 + (i + 0.5) * h;
      for (long m = nlo; m <= nhi; ++m) {
        const double a2 = 2.0 * m * ell;
        for (int j = 0; j < grid_n; ++j) {
          // S+ on mode 2: Q2 in [2m ell, (2m+1) ell], partner Q2 + ell.
          const double q2 = a2 + (j + 0.5) * h;
          const cplx l0 = std::conj(lpsi(q1, q2));
          acc += std::exp(l0 + lpsi(q1 + ell, q2 + ell)).real();
          // S- on mode 2: Q2 in [(2m+1) ell, (2m+2) ell], partner Q2 - ell.
          const double q2m = q2 + ell;
          acc += std::exp(std::conj(lpsi(q1, q2m)) + lpsi(q1 + ell, q2)).real();
        }
      }
    }
    rows[ib] = acc;
  });
  double total = 0.0;
  for (double r : rows) total += r;
  return 2.0 * norm2 * h * h * total;
}

}  // namespace sqbell
