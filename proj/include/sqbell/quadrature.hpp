// Globally adaptive 21-point Gauss-Kronrod integration with an absolute
// tolerance, vector-valued integrands and user supplied breakpoints.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "sqbell/errors.hpp"

namespace sqbell {

template <std::size_t N>
using Vec = std::array<double, N>;

struct QuadOptions {
  double abs_tol = 1e-12;
  int max_depth = 30;
  int max_intervals = 100000;
};

template <std::size_t N>
struct QuadResult {
  Vec<N> value{};
  double error = 0.0;
  long evaluations = 0;
};

namespace detail {

template <std::size_t N>
struct Panel {
  double a, b;
  int depth;
  Vec<N> value;
  double error;
  double floor;  // roundoff level below which refinement is pointless
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <std::size_t N, class F>
Panel<N> gk21(F& f, double a, double b, int depth) {
  using boost::math::quadrature::gauss;
  using boost::math::quadrature::gauss_kronrod;
  const auto& xk = gauss_kronrod<double, 21>::abscissa();
  const auto& wk = gauss_kronrod<double, 21>::weights();
  const auto& wg = gauss<double, 10>::weights();

  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::array<Vec<N>, 21> fv;
  fv[0] = f(c);
  for (std::size_t i = 1; i < 11; ++i) {
    fv[2 * i - 1] = f(c - h * xk[i]);
    fv[2 * i] = f(c + h * xk[i]);
  }

  Panel<N> p{a, b, depth, {}, 0.0, 0.0};
  for (std::size_t k = 0; k < N; ++k) {
    double rk = wk[0] * fv[0][k];
    double rg = 0.0;
    double rabs = std::abs(rk);
    for (std::size_t i = 1; i < 11; ++i) {
      const double s = fv[2 * i - 1][k] + fv[2 * i][k];
      rk += wk[i] * s;
      rabs += wk[i] * (std::abs(fv[2 * i - 1][k]) + std::abs(fv[2 * i][k]));
      if (i % 2 == 1) rg += wg[(i - 1) / 2] * s;
    }
    const double mean = 0.5 * rk;
    double rasc = wk[0] * std::abs(fv[0][k] - mean);
    for (std::size_t i = 1; i < 11; ++i)
      rasc += wk[i] * (std::abs(fv[2 * i - 1][k] - mean) + std::abs(fv[2 * i][k] - mean));
    double err = std::abs((rk - rg) * h);
    rasc *= std::abs(h);
    if (rasc != 0.0 && err != 0.0) err = rasc * std::min(1.0, std::pow(200.0 * err / rasc, 1.5));
    const double fl = 50.0 * std::numeric_limits<double>::epsilon() * rabs * std::abs(h);
    p.value[k] = rk * h;
    p.error = std::max(p.error, std::max(err, fl));
    p.floor = std::max(p.floor, fl);
  }
  return p;
}

}  // namespace detail

/// Integrates f over [breaks.front(), breaks.back()], starting from the
/// panels delimited by `breaks`. f maps double -> Vec<N>; the error norm is
/// the maximum over components. Throws QuadratureError when a panel at the
/// depth cap still needs refinement.
template <std::size_t N, class F>
QuadResult<N> integrate(F&& f, std::span<const double> breaks, const QuadOptions& opt = {}) {
  std::priority_queue<detail::Panel<N>> heap;
  QuadResult<N> out;
  double total_err = 0.0;
  std::vector<detail::Panel<N>> settled;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    auto p = detail::gk21<N>(f, breaks[i], breaks[i + 1], 0);
    out.evaluations += 21;
    total_err += p.error;
    heap.push(p);
  }
  long panels = static_cast<long>(heap.size());
  while (total_err > opt.abs_tol && !heap.empty()) {
    auto worst = heap.top();
    if (worst.error <= 1.0001 * worst.floor) break;  // only roundoff left
    heap.pop();
    if (worst.depth >= opt.max_depth || panels >= opt.max_intervals) {
      throw QuadratureError("adaptive quadrature did not converge on [" + std::to_string(worst.a) + ", " +
                            std::to_string(worst.b) + "], error " + std::to_string(worst.error));
    }
    const double mid = 0.5 * (worst.a + worst.b);
    auto l = detail::gk21<N>(f, worst.a, mid, worst.depth + 1);
    auto r = detail::gk21<N>(f, mid, worst.b, worst.depth + 1);
    out.evaluations += 42;
    ++panels;
    total_err += l.error + r.error - worst.error;
    heap.push(l);
    heap.push(r);
  }
  // Sum in breakpoint order so the result does not depend on heap layout.
  while (!heap.empty()) {
    settled.push_back(heap.top());
    heap.pop();
  }
  std::sort(settled.begin(), settled.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
  out.error = 0.0;
  for (const auto& p : settled) {
    for (std::size_t k = 0; k < N; ++k) out.value[k] += p.value[k];
    out.error += p.error;
  }
  return out;
}

/// Scalar convenience wrapper over [a, b].
template <class F>
double integrate_scalar(F&& f, double a, double b, const QuadOptions& opt = {}) {
  const std::array<double, 2> br{a, b};
  auto g = [&](double x) { return Vec<1>{f(x)}; };
  return integrate<1>(g, br, opt).value[0];
}

/// Breakpoints for integrands on [0, 1] whose sharp structure sits at the
/// end points (width `edge_width`) and which oscillate with angular
/// frequency `omega`. Returns a sorted list including 0 and 1.
std::vector<double> unit_breakpoints(double edge_width, double omega, int max_panels = 4096);

}  // namespace sqbell
