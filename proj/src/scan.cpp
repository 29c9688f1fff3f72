#include "sqbell/scan.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "sqbell/parallel.hpp"

namespace sqbell {

namespace {

constexpr double quarter_pi = std::numbers::pi / 4.0;

void check_axis(const std::vector<double>& axis, double lo, double hi, const char* name) {
  if (axis.empty()) throw std::invalid_argument(std::string(name) + " axis is empty");
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (!std::isfinite(axis[i]) || axis[i] < lo || axis[i] > hi)
      throw std::invalid_argument(std::string(name) + " axis value " + format_number(axis[i]) + " outside [" +
                                  format_number(lo) + ", " + format_number(hi) + "]");
    if (i > 0 && !(axis[i] > axis[i - 1])) throw std::invalid_argument(std::string(name) + " axis is not increasing");
  }
}

nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

std::string_view to_string(MapMode m) { return m == MapMode::Bump ? "bump" : "full"; }

MapMode parse_map_mode(std::string_view s) {
  if (s == "bump") return MapMode::Bump;
  if (s == "full") return MapMode::Full;
  throw std::invalid_argument("unknown map mode '" + std::string(s) + "'");
}

std::string_view to_string(AxisSpacing s) { return s == AxisSpacing::Linear ? "linear" : "geometric"; }

AxisSpacing parse_axis_spacing(std::string_view s) {
  if (s == "linear") return AxisSpacing::Linear;
  if (s == "geometric") return AxisSpacing::Geometric;
  throw std::invalid_argument("unknown axis spacing '" + std::string(s) + "'");
}

std::vector<double> make_axis(double lo, double hi, int n, AxisSpacing spacing, double floor) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) throw std::invalid_argument("axis range must satisfy lo <= hi");
  if (n < 1) throw std::invalid_argument("axis needs at least one point");
  if (n == 1) return {lo};
  if (hi == lo) throw std::invalid_argument("axis with several points needs lo < hi");
  std::vector<double> out(static_cast<std::size_t>(n));
  if (spacing == AxisSpacing::Linear) {
    for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
    out.back() = hi;
    return out;
  }
  if (!(hi > 0.0) || lo < 0.0) throw std::invalid_argument("geometric axis needs 0 <= lo < hi");
  int first = 0;
  double start = lo;
  if (lo == 0.0) {
    out[0] = 0.0;
    first = 1;
    start = floor > 0.0 ? floor : hi * 1e-4;
    if (!(start < hi)) throw std::invalid_argument("geometric floor must lie below hi");
    if (n == 2) {
      out[1] = hi;
      return out;
    }
  }
  const int m = n - first;
  const double ratio = std::log(hi / start);
  for (int i = 0; i < m; ++i) out[first + i] = start * std::exp(ratio * i / (m - 1));
  out[first] = start;
  out.back() = hi;
  return out;
}

ViolationMap violation_map(const std::vector<double>& r_axis, const std::vector<double>& phi_axis,
                           const MapOptions& opt) {
  check_axis(r_axis, 0.0, 10.0, "r");
  check_axis(phi_axis, 0.0, quarter_pi + 1e-12, "phi");
  ViolationMap map;
  map.r_axis = r_axis;
  map.phi_axis = phi_axis;
  map.mode = opt.mode;
  const std::size_t n = r_axis.size() * phi_axis.size();
  map.values.assign(n, std::numeric_limits<double>::quiet_NaN());
  map.raw.assign(n, std::numeric_limits<double>::quiet_NaN());
  map.regime.assign(n, Regime::Generic);
  map.backend.assign(n, opt.bump.backend);
  map.quality.assign(n, Quality::Ok);

  parallel_for(n, opt.threads, [&](std::size_t k) {
    const SqueezingParams p{r_axis[k / phi_axis.size()], phi_axis[k % phi_axis.size()]};
    map.regime[k] = classify_regime(p);
    try {
      const BumpResult b = opt.mode == MapMode::Bump ? find_bump_max(p, opt.bump)
                                                     : find_profile_max(p, AnglesMode::Optimal, opt.bump);
      map.raw[k] = b.bell_raw;
      map.values[k] = std::max(2.0, b.bell_raw);
      map.backend[k] = b.backend;
      map.quality[k] = b.quality;
    } catch (const std::exception&) {
      map.quality[k] = Quality::Failed;
    }
  });
  return map;
}

std::vector<BoundaryPoint> violation_boundary(const ViolationMap& map, double epsilon) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be non-negative");
  const double level = 2.0 + epsilon;
  const std::size_t np = map.phi_axis.size();
  std::vector<BoundaryPoint> out;
  for (std::size_t ir = 0; ir < map.r_axis.size(); ++ir) {
    std::optional<std::size_t> last;
    for (std::size_t ip = 0; ip < np; ++ip)
      if (map.values[map.index(ir, ip)] > level) last = ip;
    if (!last) continue;
    const std::size_t k = *last;
    double phi = map.phi_axis[k];
    if (k + 1 < np) {
      const double v0 = map.raw[map.index(ir, k)], v1 = map.raw[map.index(ir, k + 1)];
      if (std::isfinite(v1) && v0 > v1) {
        const double f = std::clamp((v0 - level) / (v0 - v1), 0.0, 1.0);
        phi += f * (map.phi_axis[k + 1] - map.phi_axis[k]);
      }
    }
    out.push_back({map.r_axis[ir], phi});
  }
  return out;
}

CollapseCurve collapse_curve(const std::vector<double>& xs, double r_ref, const BumpOptions& opt, int threads) {
  if (!std::isfinite(r_ref) || r_ref < 0.0) throw std::invalid_argument("r_ref must be non-negative");
  CollapseCurve c;
  c.r_ref = r_ref;
  c.regime_warning = r_ref < 4.0;
  c.points.resize(xs.size());
  BumpOptions bo = opt;
  bo.backend = Backend::LargeSqueezing;
  parallel_for(xs.size(), threads, [&](std::size_t i) {
    if (!(xs[i] >= 0.0) || !std::isfinite(xs[i])) throw std::invalid_argument("collapse x values must be >= 0");
    const BumpResult b = find_bump_max({r_ref, xs[i] * std::exp(-r_ref)}, bo);
    c.points[i] = {xs[i], b.bell_max, b.bell_raw};
  });
  return c;
}

std::optional<double> collapse_crossing(const CollapseCurve& c) {
  for (std::size_t i = 1; i < c.points.size(); ++i) {
    const auto& a = c.points[i - 1];
    const auto& b = c.points[i];
    if (a.bell_raw > 2.0 && b.bell_raw <= 2.0) return a.x + (a.bell_raw - 2.0) / (a.bell_raw - b.bell_raw) * (b.x - a.x);
  }
  return std::nullopt;
}

std::optional<double> threshold_r(double phi, const ThresholdOptions& opt) {
  if (!std::isfinite(phi) || phi < 0.0 || phi > quarter_pi + 1e-12)
    throw std::invalid_argument("threshold_r needs phi in [0, pi/4]");
  if (!(opt.coarse_step > 0.0) || !(opt.tol > 0.0) || !(opt.r_max > 0.0))
    throw std::invalid_argument("invalid threshold search options");
  // szsz vanishes identically at the duality fixed point, so Bell = 2 |sxsx| <= 2.
  if (std::abs(phi - quarter_pi) < 1e-12) return std::nullopt;
  auto excess = [&](double r) { return find_bump_max({r, phi}, opt.bump).bell_raw - 2.0; };
  double lo = 0.0;
  std::optional<double> hi;
  for (double r = opt.coarse_step; r <= opt.r_max + 1e-12; r += opt.coarse_step) {
    if (excess(r) > 0.0) {
      hi = r;
      break;
    }
    lo = r;
  }
  if (!hi) return std::nullopt;
  double h = *hi;
  while (h - lo > opt.tol) {
    const double mid = 0.5 * (lo + h);
    (excess(mid) > 0.0 ? h : lo) = mid;
  }
  return 0.5 * (lo + h);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_map_csv(std::ostream& os, const ViolationMap& map) {
  os << "# sqbell violation map, schema_version=" << kSchemaVersion << ", mode=" << to_string(map.mode) << "\n";
  os << "r,phi,bell_max,bell_raw,regime,backend,quality\n";
  for (std::size_t ir = 0; ir < map.r_axis.size(); ++ir) {
    for (std::size_t ip = 0; ip < map.phi_axis.size(); ++ip) {
      const std::size_t k = map.index(ir, ip);
      os << format_number(map.r_axis[ir]) << ',' << format_number(map.phi_axis[ip]) << ','
         << format_number(map.values[k]) << ',' << format_number(map.raw[k]) << ',' << to_string(map.regime[k])
         << ',' << to_string(map.backend[k]) << ',' << to_string(map.quality[k]) << '\n';
    }
  }
}

void write_map_json(std::ostream& os, const ViolationMap& map) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "violation_map";
  j["mode"] = to_string(map.mode);
  j["r_axis"] = map.r_axis;
  j["phi_axis"] = map.phi_axis;
  auto values = nlohmann::json::array(), raw = nlohmann::json::array();
  auto regime = nlohmann::json::array(), backend = nlohmann::json::array(), quality = nlohmann::json::array();
  for (std::size_t k = 0; k < map.values.size(); ++k) {
    values.push_back(number_or_null(map.values[k]));
    raw.push_back(number_or_null(map.raw[k]));
    regime.push_back(to_string(map.regime[k]));
    backend.push_back(to_string(map.backend[k]));
    quality.push_back(to_string(map.quality[k]));
  }
  j["layout"] = "row-major, index = i_r * len(phi_axis) + i_phi";
  j["bell_max"] = std::move(values);
  j["bell_raw"] = std::move(raw);
  j["regime"] = std::move(regime);
  j["backend"] = std::move(backend);
  j["quality"] = std::move(quality);
  os << j.dump(1) << '\n';
}

void write_collapse_csv(std::ostream& os, const CollapseCurve& c) {
  os << "# sqbell collapse curve, schema_version=" << kSchemaVersion << ", r_ref=" << format_number(c.r_ref) << "\n";
  os << "x,bell_max,bell_raw\n";
  for (const auto& p : c.points)
    os << format_number(p.x) << ',' << format_number(p.bell_max) << ',' << format_number(p.bell_raw) << '\n';
}

void write_collapse_json(std::ostream& os, const CollapseCurve& c) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "collapse_curve";
  j["r_ref"] = c.r_ref;
  j["regime_warning"] = c.regime_warning;
  auto pts = nlohmann::json::array();
  for (const auto& p : c.points) pts.push_back({{"x", p.x}, {"bell_max", p.bell_max}, {"bell_raw", p.bell_raw}});
  j["points"] = std::move(pts);
  if (const auto x = collapse_crossing(c)) j["crossing_x"] = *x;
  os << j.dump(1) << '\n';
}

}  // namespace sqbell
