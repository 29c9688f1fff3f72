// Sweeps over the squeezing parameters: the (r, phi) violation map, the
// boundary of the violation domain, the e^r phi collapse curve and the
// threshold in r at fixed phi.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sqbell/bell.hpp"

namespace sqbell {

enum class MapMode { Bump, Full };
enum class AxisSpacing { Linear, Geometric };

std::string_view to_string(MapMode m);
MapMode parse_map_mode(std::string_view s);
std::string_view to_string(AxisSpacing s);
AxisSpacing parse_axis_spacing(std::string_view s);

/// n sorted points from lo to hi inclusive. Geometric spacing needs hi > 0;
/// when lo is 0 the first point is 0 and the remaining n - 1 points are
/// log-spaced from `geometric_floor` (default hi * 1e-4) to hi.
std::vector<double> make_axis(double lo, double hi, int n, AxisSpacing spacing = AxisSpacing::Linear,
                              double geometric_floor = 0.0);

struct MapOptions {
  MapMode mode = MapMode::Bump;
  BumpOptions bump{};
  int threads = 1;
};

/// Row-major matrices indexed [ir * phi_axis.size() + iphi].
struct ViolationMap {
  std::vector<double> r_axis;
  std::vector<double> phi_axis;
  std::vector<double> values;  // max(2, height); NaN for failed cells
  std::vector<double> raw;     // unclamped height used for the value
  std::vector<Regime> regime;
  std::vector<Backend> backend;
  std::vector<Quality> quality;
  MapMode mode = MapMode::Bump;

  std::size_t index(std::size_t ir, std::size_t iphi) const { return ir * phi_axis.size() + iphi; }
};

/// Evaluates every cell with find_bump_max (Bump mode) or the optimal-angle
/// profile maximum (Full mode). Axes must be sorted within r in [0, 10] and
/// phi in [0, pi/4]. Cells are independent and the result does not depend on
/// the thread count. A failing cell is flagged and the sweep continues.
ViolationMap violation_map(const std::vector<double>& r_axis, const std::vector<double>& phi_axis,
                           const MapOptions& opt = {});

struct BoundaryPoint {
  double r = 0.0;
  double phi = 0.0;
};

/// For every r row with a value above 2 + epsilon, the largest phi where the
/// height still exceeds 2 + epsilon. The crossing is placed by linear
/// interpolation of the unclamped heights between the last violating cell and
/// its neighbour; a row violating up to the last cell reports the axis end.
std::vector<BoundaryPoint> violation_boundary(const ViolationMap& map, double epsilon = 1e-3);

struct CollapsePoint {
  double x = 0.0;  // e^r phi
  double bell_max = 2.0;
  double bell_raw = 0.0;
};

struct CollapseCurve {
  double r_ref = 0.0;
  bool regime_warning = false;  // r_ref below 4, outside the deep large-squeezing regime
  std::vector<CollapsePoint> points;
};

/// Bump height from the large-squeezing backend at (r_ref, x e^{-r_ref}).
CollapseCurve collapse_curve(const std::vector<double>& x_values, double r_ref, const BumpOptions& opt = {},
                             int threads = 1);

/// First x at which the unclamped collapse curve falls through 2, by linear
/// interpolation; nullopt when it never does.
std::optional<double> collapse_crossing(const CollapseCurve& c);

struct ThresholdOptions {
  BumpOptions bump{};
  double r_max = 10.0;
  double coarse_step = 0.25;
  double tol = 0.01;
};

/// Smallest r at which the bump height exceeds 2, located by a coarse scan
/// followed by bisection on the unclamped height minus 2. nullopt when no
/// violation is found for r <= r_max.
std::optional<double> threshold_r(double phi, const ThresholdOptions& opt = {});

/// Schema version carried by the CSV headers and JSON documents.
inline constexpr int kSchemaVersion = 1;

/// CSV with a version comment line and columns r, phi, bell_max, bell_raw,
/// regime, backend, quality; numbers at 17 significant digits.
void write_map_csv(std::ostream& os, const ViolationMap& map);
/// JSON document with the axes, the mode and row-major matrices.
void write_map_json(std::ostream& os, const ViolationMap& map);

void write_collapse_csv(std::ostream& os, const CollapseCurve& c);
void write_collapse_json(std::ostream& os, const CollapseCurve& c);

/// %.17g formatting shared by all writers.
std::string format_number(double v);

}  // namespace sqbell
