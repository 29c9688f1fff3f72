// Acceptance run: one PASS/FAIL line per criterion. The process succeeds when
// the failing criteria are exactly those named with --expect-fail, so a
// criterion known to be out of reach stays visible without hiding regressions
// elsewhere, and an unexpected pass is reported too.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "sqbell/asymptotic_limits.hpp"
#include "sqbell/bell.hpp"
#include "sqbell/oracles.hpp"
#include "sqbell/parallel.hpp"
#include "sqbell/scan.hpp"

using namespace sqbell;

namespace {

constexpr double pi = std::numbers::pi;
const double cirelson = 2.0 * std::sqrt(2.0);

// Tolerances, one block per criterion.
constexpr double kPlateauTol = 1e-3;             // 1, 2
constexpr double kPlateauPointSeconds = 30.0;    // 1
constexpr double kSmallEllTol = 0.02;            // 3
constexpr double kSmallEllBellTol = 0.04;        // 3
constexpr double kThreshold = 1.12;              // 4
constexpr double kThresholdTol = 0.02;           // 4
constexpr double kThresholdSeconds = 600.0;      // 4
constexpr double kCrossing = 0.34;               // 5
constexpr double kCrossingTol = 0.02;            // 5
constexpr double kCollapseAgreeTol = 2e-3;       // 5
constexpr double kDualityTol = 1e-7;             // 6
constexpr double kCrossCorrelatorTol = 1e-9;     // 6
constexpr double kCirelsonSlack = 5e-3;          // 7
constexpr double kMcSigmas = 3.0;                // 8
constexpr std::int64_t kMcSamples = 10'000'000;  // 8
constexpr double kQuadTol = 1e-4;                // 8
constexpr double kApproxTol = 5e-3;              // 9
constexpr double kApproxBumpTol = 1e-2;          // 9
constexpr double kMapMinutesOn8Cores = 30.0;     // 11
constexpr double kBoundaryLo = 0.27;             // 11
constexpr double kBoundaryHi = 0.41;             // 11

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Every Bell value produced by criteria 1 to 6, for criterion 7.
std::vector<double> seen_bell;

void see(double b) {
  if (std::isfinite(b)) seen_bell.push_back(b);
}

Outcome plateau_phi0() {
  bool ok = true;
  double worst = 0.0, slowest = 0.0;
  for (double r : {0.5, 1.0, 2.0}) {
    const auto t0 = Clock::now();
    const double b = bell_optimal(exact_triple({r, 0.0}, {std::exp2(6.0)}));
    slowest = std::max(slowest, seconds_since(t0));
    see(b);
    const double ref = 4.0 / pi * std::atan(std::sinh(2.0 * r));
    worst = std::max(worst, std::abs(b - ref));
  }
  ok = worst < kPlateauTol && slowest < kPlateauPointSeconds;
  return {ok, fmt("max |B - (4/pi) atan(sinh 2r)| = %.3e, slowest point %.2f s", worst, slowest)};
}

Outcome plateau_general() {
  double worst = 0.0, at_quarter = 0.0;
  for (double phi : {pi / 6, pi / 4, pi / 3}) {
    const double b = bell_optimal(exact_triple({2.0, phi}, {std::exp2(6.0)}));
    see(b);
    const double c = std::cos(2.0 * phi), sh = std::sinh(4.0), ch = std::cosh(4.0);
    const double ref = 4.0 / pi * std::abs(std::atan(c * sh / std::sqrt(ch * ch - c * c * sh * sh)));
    worst = std::max(worst, std::abs(b - ref));
    if (phi == pi / 4) at_quarter = b;
  }
  return {worst < kPlateauTol, fmt("max deviation %.3e, B at pi/4 = %.3e", worst, at_quarter)};
}

Outcome small_ell() {
  double dx = 0.0, dz = 0.0, dy = 0.0, db = 0.0;
  for (double phi : {0.0, pi / 6}) {
    const auto t = exact_triple({1.0, phi}, {std::exp2(-4.0)});
    const double b = bell_optimal(t);
    see(b);
    dx = std::max(dx, std::abs(t.sxsx - 1.0));
    dz = std::max(dz, std::abs(t.szsz));
    dy = std::max(dy, std::abs(t.sysy));
    db = std::max(db, std::abs(b - 2.0));
  }
  const bool ok = dx < kSmallEllTol && dz < kSmallEllTol && dy < kSmallEllTol && db < kSmallEllBellTol;
  return {ok, fmt("|xx-1| %.4f, |zz| %.4f, |yy| %.4f, |B-2| %.4f", dx, dz, dy, db)};
}

Outcome threshold() {
  const auto t0 = Clock::now();
  const auto r = threshold_r(0.0);
  const double s = seconds_since(t0);
  if (!r) return {false, "no threshold found"};
  see(find_bump_max({*r, 0.0}).bell_raw);
  return {std::abs(*r - kThreshold) <= kThresholdTol && s < kThresholdSeconds,
          fmt("r_threshold = %.4f in %.1f s", *r, s)};
}

Outcome collapse() {
  const auto xs = make_axis(0.05, 2.0, 200, AxisSpacing::Geometric);
  const auto c5 = collapse_curve(xs, 5.0, {}, default_threads());
  const auto c4 = collapse_curve(xs, 4.0, {}, default_threads());
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    see(c5.points[i].bell_raw);
    see(c4.points[i].bell_raw);
    worst = std::max(worst, std::abs(c5.points[i].bell_max - c4.points[i].bell_max));
  }
  const auto x = collapse_crossing(c5);
  if (!x) return {false, "collapse curve never crosses 2"};
  return {std::abs(*x - kCrossing) <= kCrossingTol && worst < kCollapseAgreeTol,
          fmt("crossing at x = %.4f, max |r_ref 4 - r_ref 5| = %.2e", *x, worst)};
}

Outcome duality() {
  double worst = 0.0, cross = 0.0;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      for (int k = 0; k < 4; ++k) {
        const SqueezingParams p{2.0 * i / 5.0, pi / 2 * j / 5.0};
        const SqueezingParams d{p.r, pi / 2 - p.phi};
        const LatticeBinning b{std::exp2(-1.0 + k)};
        const auto t = exact_triple(p, b), u = exact_triple(d, b);
        see(bell_optimal(t));
        see(bell_optimal(u));
        worst = std::max({worst, std::abs(t.szsz + u.szsz), std::abs(t.sxsx - u.sxsx), std::abs(t.sysy + u.sysy)});
        cross = std::max(cross, sxsz_diagnostic(p, b));
      }
    }
  }
  return {worst < kDualityTol && cross < kCrossCorrelatorTol,
          fmt("max duality residual %.2e, max xz diagnostic %.2e", worst, cross)};
}

Outcome cirelson_check() {
  const double m = seen_bell.empty() ? 0.0 : *std::max_element(seen_bell.begin(), seen_bell.end());
  return {!seen_bell.empty() && m <= cirelson + kCirelsonSlack,
          fmt("max B = %.6f over %zu values (bound %.6f)", m, seen_bell.size(), cirelson + kCirelsonSlack)};
}

Outcome oracles() {
  const int threads = default_threads();
  double worst_z = 0.0;
  const SqueezingParams mc_points[] = {{0.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}, {1.5, 0.3}, {2.0, pi / 6}, {2.5, pi / 4}};
  const double mc_ell[] = {4.0, 1.0, 1.0, 0.7, 1.5, 2.0};
  for (int i = 0; i < 6; ++i) {
    const auto e = mc_szsz(mc_points[i], {mc_ell[i]}, kMcSamples, 20240601 + i, threads);
    worst_z = std::max(worst_z, std::abs(e.mean - szsz_exact(mc_points[i], {mc_ell[i]})) / e.std_error);
  }
  double worst_q = 0.0;
  const SqueezingParams q_points[] = {{0.5, 0.0}, {1.0, pi / 6}, {0.8, 0.5}, {1.0, 0.0}};
  const double q_ell[] = {1.0, 1.0, 0.7, 2.0};
  for (int i = 0; i < 4; ++i) {
    const double q = quad_sxsx(q_points[i], {q_ell[i]}, 1.5 * quad_min_box(q_points[i]), 200, threads);
    worst_q = std::max(worst_q, std::abs(q - sxsx_exact(q_points[i], {q_ell[i]})));
  }
  return {worst_z < kMcSigmas && worst_q < kQuadTol,
          fmt("MC max |z| = %.2f at 1e7 samples, quadrature max |diff| = %.2e", worst_z, worst_q)};
}

Outcome approximation() {
  double worst = 0.0;
  double at_r = 0.0, at_phi = 0.0, at_l2 = 0.0;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      for (int k = 0; k < 4; ++k) {
        const SqueezingParams p{0.5 + 0.5 * i, pi / 4 * j / 4.0};
        const double l2 = -1.0 + k;
        if (classify_regime(p) != Regime::Generic) continue;
        const LatticeBinning b{std::exp2(l2)};
        const auto a = approx_triple(p, b), e = exact_triple(p, b);
        const double d = std::max({std::abs(a.szsz - e.szsz), std::abs(a.sxsx - e.sxsx), std::abs(a.sysy - e.sysy)});
        if (d > worst) {
          worst = d;
          at_r = p.r;
          at_phi = p.phi;
          at_l2 = l2;
        }
      }
    }
  }
  BumpOptions ex, ap;
  ex.backend = Backend::Exact;
  ap.backend = Backend::Approx;
  const double be = find_bump_max({2.0, 0.0}, ex).bell_raw, ba = find_bump_max({2.0, 0.0}, ap).bell_raw;
  return {worst < kApproxTol && std::abs(ba - be) < kApproxBumpTol,
          fmt("grid max |approx - exact| = %.3e at (r %.2f, phi %.4f, log2 ell %.0f); bump %.5f vs %.5f", worst, at_r,
              at_phi, at_l2, ba, be)};
}

Outcome angles() {
  const auto s = find_profile_max({3.0, 0.03}, AnglesMode::Standard);
  const auto o = find_profile_max({3.0, 0.03}, AnglesMode::Optimal);
  return {s.bell_raw < 2.0 && o.bell_raw > 2.0,
          fmt("full-profile max: standard %.5f, optimal %.5f", s.bell_raw, o.bell_raw)};
}

Outcome map_smoke() {
  const int cores = std::max(1u, std::thread::hardware_concurrency());
  const double budget = kMapMinutesOn8Cores * 60.0 * std::max(1.0, 8.0 / cores);
  MapOptions opt;
  opt.threads = default_threads();
  const auto t0 = Clock::now();
  const auto m = violation_map(make_axis(0.0, 5.0, 60), make_axis(0.0, pi / 4, 60, AxisSpacing::Geometric), opt);
  const double s = seconds_since(t0);
  bool in_range = true;
  std::size_t failed = 0;
  for (std::size_t k = 0; k < m.values.size(); ++k) {
    if (m.quality[k] == Quality::Failed) ++failed;
    if (!(m.values[k] >= 2.0 && m.values[k] <= cirelson)) in_range = false;
  }
  double lo = INFINITY, hi = -INFINITY;
  int rows = 0;
  for (const auto& b : violation_boundary(m)) {
    if (b.r < 3.5 || b.r > 5.0) continue;
    const double x = b.phi * std::exp(b.r);
    lo = std::min(lo, x);
    hi = std::max(hi, x);
    ++rows;
  }
  const bool ok = s < budget && in_range && failed == 0 && rows > 0 && lo >= kBoundaryLo && hi <= kBoundaryHi;
  return {ok, fmt("%.1f s (budget %.0f s on %d cores), %zu failed cells, values %s, boundary e^r phi in [%.3f, %.3f] "
                  "over %d rows",
                  s, budget, cores, failed, in_range ? "in [2, 2 sqrt 2]" : "OUT OF RANGE", lo, hi, rows)};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected;
  for (int i = 1; i + 1 < argc; i += 2)
    if (std::string(argv[i]) == "--expect-fail") expected.insert(std::atoi(argv[i + 1]));

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"plateau at phi = 0", plateau_phi0},
      {"generalized plateau", plateau_general},
      {"small-ell limits", small_ell},
      {"violation threshold", threshold},
      {"collapse in e^r phi", collapse},
      {"duality relations", duality},
      {"Cirel'son bound", cirelson_check},
      {"oracle equivalence", oracles},
      {"approximation fidelity", approximation},
      {"optimal vs standard angles", angles},
      {"map smoke test", map_smoke},
  };

  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) failed.insert(id);
    std::printf("criterion %2d %s  %s: %s [%.1f s]%s\n", id, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str(), seconds_since(t0), !o.pass && expected.count(id) ? " (expected)" : "");
    std::fflush(stdout);
  }
  for (int id : expected)
    if (!failed.count(id)) std::printf("criterion %2d passed but was expected to fail\n", id);
  std::printf("%zu of %zu criteria passed\n", criteria.size() - failed.size(), criteria.size());
  return failed == expected ? 0 : 1;
}
