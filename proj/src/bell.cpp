#include "sqbell/bell.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sqbell/errors.hpp"
#include "sqbell/parallel.hpp"

namespace sqbell {

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

std::string_view to_string(AnglesMode m) { return m == AnglesMode::Standard ? "standard" : "optimal"; }

AnglesMode parse_angles_mode(std::string_view s) {
  if (s == "standard") return AnglesMode::Standard;
  if (s == "optimal") return AnglesMode::Optimal;
  throw std::invalid_argument("unknown angles mode '" + std::string(s) + "'");
}

double correlation_E(const CorrelatorTriple& t, double a, double b) {
  return std::sin(a) * std::sin(b) * t.sxsx + std::cos(a) * std::cos(b) * t.szsz;
}

AngleConfig standard_angles() { return {0.0, pi / 2.0, pi / 4.0, -pi / 4.0}; }

AngleConfig optimal_angles(const CorrelatorTriple& t, bool* degenerate) {
  const bool deg = t.szsz == 0.0 && t.sxsx == 0.0;
  if (degenerate) *degenerate = deg;
  if (deg) return standard_angles();
  const double tm = std::atan2(t.sxsx, t.szsz);
  return {0.0, pi / 2.0, tm, -tm};
}

double bell_expectation(const CorrelatorTriple& t, const AngleConfig& a) {
  return correlation_E(t, a.theta_n, a.theta_m) + correlation_E(t, a.theta_n, a.theta_m_prime) +
         correlation_E(t, a.theta_n_prime, a.theta_m) - correlation_E(t, a.theta_n_prime, a.theta_m_prime);
}

double bell_optimal(const CorrelatorTriple& t) { return 2.0 * std::hypot(t.szsz, t.sxsx); }

double bell_value(const CorrelatorTriple& t, AnglesMode mode) {
  return mode == AnglesMode::Optimal ? bell_optimal(t) : bell_expectation(t, standard_angles());
}

BellProfile bell_profile(const SqueezingParams& p, double lo, double hi, double step, const ProfileOptions& opt) {
  validate(p);
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi >= lo)) throw std::invalid_argument("empty log2(ell) range");
  if (!(step > 0.0)) throw std::invalid_argument("profile step must be positive");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  if (n > 10000000) throw std::invalid_argument("profile has too many points");
  BellProfile prof;
  prof.points.resize(n);
  parallel_for(n, opt.threads, [&](std::size_t i) {
    ProfilePoint& pt = prof.points[i];
    pt.log2_ell = lo + static_cast<double>(i) * step;
    try {
      const auto res = correlators(p, {std::exp2(pt.log2_ell)}, opt.backend, opt.correlator);
      pt.triple = res.triple;
      pt.backend = res.backend;
      pt.quality = res.quality;
      pt.bell = bell_value(res.triple, opt.angles);
    } catch (const std::exception&) {
      pt.bell = std::numeric_limits<double>::quiet_NaN();
      pt.quality = Quality::Failed;
      pt.backend = opt.backend;
    }
  });
  return prof;
}

}  // namespace sqbell

namespace sqbell {

namespace {

struct Probe {
  const SqueezingParams& p;
  const BumpOptions& opt;
  AnglesMode angles;
  Quality worst = Quality::Ok;
  Backend used = Backend::Exact;

  double operator()(double log2_ell) {
    const auto res = correlators(p, {std::exp2(log2_ell)}, opt.backend, opt.correlator);
    used = res.backend;
    if (res.quality == Quality::Suspect) worst = Quality::Suspect;
    return bell_value(res.triple, angles);
  }
};

// Golden-section maximization of f on [a, b]. Returns (argmax, max), falling
// back to the coarse sample (x0, f0) when it is higher.
std::pair<double, double> golden_max(Probe& f, double a, double b, double tol, double x0, double f0) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  const double xm = 0.5 * (a + b);
  const double fm = f(xm);
  if (f0 >= fm) return {x0, f0};
  return {xm, fm};
}

BumpResult search(const SqueezingParams& p, const BumpOptions& opt, AnglesMode angles, bool bump_only) {
  validate(p);
  if (!(opt.coarse_step > 0.0) || !(opt.log2_hi > opt.log2_lo)) throw std::invalid_argument("invalid bump search grid");
  ProfileOptions po;
  po.backend = opt.backend;
  po.angles = angles;
  po.correlator = opt.correlator;
  const BellProfile prof = bell_profile(p, opt.log2_lo, opt.log2_hi, opt.coarse_step, po);
  std::vector<double> v;
  v.reserve(prof.points.size());
  BumpResult out;
  for (const auto& pt : prof.points) {
    if (pt.quality == Quality::Failed)
      throw TruncationError("bump search: backend failed at log2(ell) = " + std::to_string(pt.log2_ell));
    if (pt.quality == Quality::Suspect) out.quality = Quality::Suspect;
    out.backend = pt.backend;
    v.push_back(pt.bell);
  }
  std::optional<std::size_t> idx;
  if (bump_only) {
    idx = locate_bump(v, opt.coarse_step, opt.shoulder, opt.min_width);
  } else {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i] > v[best]) best = i;
    idx = best;
  }
  if (!idx) {
    // No bump: report the higher of the two plateaus at the ends of the range.
    const std::size_t best = v.back() > v.front() ? v.size() - 1 : 0;
    out.log2_ell_star = prof.points[best].log2_ell;
    out.bell_raw = v[best];
    out.has_bump = false;
  } else {
    const std::size_t i = *idx;
    const double x0 = prof.points[i].log2_ell;
    Probe f{p, opt, angles};
    const double a = std::max(opt.log2_lo, x0 - opt.coarse_step);
    const double b = std::min(opt.log2_hi, x0 + opt.coarse_step);
    const auto [xs, fs] = golden_max(f, a, b, opt.refine_tol, x0, v[i]);
    if (f.worst == Quality::Suspect) out.quality = Quality::Suspect;
    out.log2_ell_star = xs;
    out.bell_raw = fs;
    out.has_bump = bump_only;
  }
  out.bell_max = std::max(2.0, out.bell_raw);
  return out;
}

}  // namespace

std::optional<std::size_t> locate_bump(const std::vector<double>& v, double step, double shoulder,
                                       double min_width) {
  const std::size_t n = v.size();
  std::optional<std::size_t> best;
  std::size_t best_width = 0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(v[i] >= v[i - 1] && v[i] > v[i + 1])) continue;
    const double top = v[i], floor = top - shoulder;
    std::size_t lo = i, hi = i;
    while (lo > 0 && v[lo - 1] <= top && v[lo - 1] >= floor) --lo;
    while (hi + 1 < n && v[hi + 1] <= top && v[hi + 1] >= floor) ++hi;
    const bool drops = lo > 0 && v[lo - 1] < floor && hi + 1 < n && v[hi + 1] < floor;
    const std::size_t width = hi - lo + 1;
    if (!drops || static_cast<double>(width) * step < min_width) continue;
    if (!best || width > best_width || (width == best_width && top > v[*best])) {
      best = i;
      best_width = width;
    }
  }
  return best;
}

BumpResult find_bump_max(const SqueezingParams& p, const BumpOptions& opt) {
  return search(p, opt, AnglesMode::Optimal, true);
}

BumpResult find_profile_max(const SqueezingParams& p, AnglesMode angles, const BumpOptions& opt) {
  BumpResult r = search(p, opt, angles, false);
  r.bell_max = r.bell_raw;
  return r;
}

}  // namespace sqbell
