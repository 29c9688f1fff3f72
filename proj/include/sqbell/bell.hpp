// CHSH expectation from the correlator triple, angle choices, profiles over
// log2(ell) and the search for the main bump.

#pragma once

#include <optional>
#include <vector>

#include "sqbell/correlators.hpp"

namespace sqbell {

/// Polar angles of the two settings per side; azimuthal angles are zero.
struct AngleConfig {
  double theta_n = 0.0;
  double theta_n_prime = 0.0;
  double theta_m = 0.0;
  double theta_m_prime = 0.0;
};

enum class AnglesMode { Standard, Optimal };

std::string_view to_string(AnglesMode m);
AnglesMode parse_angles_mode(std::string_view s);

/// sin(a) sin(b) sxsx + cos(a) cos(b) szsz; the cross correlators vanish.
double correlation_E(const CorrelatorTriple& t, double theta_a, double theta_b);

/// (theta_n, theta_m, theta_n', theta_m') = (0, pi/4, pi/2, -pi/4).
AngleConfig standard_angles();

/// theta_n = 0, theta_n' = pi/2, theta_m = atan2(sxsx, szsz), theta_m' =
/// -theta_m. When szsz = sxsx = 0 every choice gives zero; the standard
/// angles are returned and `degenerate` is set.
AngleConfig optimal_angles(const CorrelatorTriple& t, bool* degenerate = nullptr);

double bell_expectation(const CorrelatorTriple& t, const AngleConfig& a);

/// 2 sqrt(szsz^2 + sxsx^2), the value reached at the optimal angles.
double bell_optimal(const CorrelatorTriple& t);

double bell_value(const CorrelatorTriple& t, AnglesMode mode);

struct ProfileOptions {
  Backend backend = Backend::Auto;
  AnglesMode angles = AnglesMode::Optimal;
  CorrelatorOptions correlator{};
  int threads = 1;
};

struct ProfilePoint {
  double log2_ell = 0.0;
  double bell = 0.0;  // NaN when the backend failed
  CorrelatorTriple triple{};
  Backend backend = Backend::Exact;
  Quality quality = Quality::Ok;
};

struct BellProfile {
  std::vector<ProfilePoint> points;
};

/// Grid lo, lo + step, ... up to hi (inclusive within 1e-9 step). Points
/// whose backend throws are kept with Quality::Failed.
BellProfile bell_profile(const SqueezingParams& p, double log2_lo, double log2_hi, double step,
                         const ProfileOptions& opt = {});

struct BumpResult {
  double log2_ell_star = 0.0;
  double bell_max = 2.0;  // clamped at 2
  double bell_raw = 0.0;  // unclamped height
  bool has_bump = false;  // false when the profile has no interior maximum
  Backend backend = Backend::Exact;
  Quality quality = Quality::Ok;
};

struct BumpOptions {
  Backend backend = Backend::Auto;
  CorrelatorOptions correlator{};
  double log2_lo = -4.0;
  double log2_hi = 8.0;
  double coarse_step = 0.1;
  double refine_tol = 1e-4;
  double shoulder = 0.05;   // depth below a peak that delimits its region
  double min_width = 0.35;  // narrowest region, in log2(ell), that counts as a bump
};

/// Index of the main bump in a profile sampled with spacing `step`, or
/// nullopt when there is none. Every local maximum owns the connected run of
/// samples around it that stay within `shoulder` below its top without
/// rising above it. A maximum qualifies when the profile drops below that
/// band on both sides and the run spans at least `min_width`. The bump is
/// the qualifying maximum with the widest run, ties going to the higher top.
/// Narrow features and ripples on a plateau never qualify.
std::optional<std::size_t> locate_bump(const std::vector<double>& values, double step, double shoulder,
                                       double min_width);

/// Height of the main bump of the optimal-angle profile, refined by golden
/// section and clamped at 2. Without a bump the higher of the two end values
/// of the range is reported with has_bump = false.
BumpResult find_bump_max(const SqueezingParams& p, const BumpOptions& opt = {});

/// Largest optimal- or standard-angle value over the whole profile, features
/// included, refined by golden section around the best sample. Not clamped.
BumpResult find_profile_max(const SqueezingParams& p, AnglesMode angles, const BumpOptions& opt = {});

}  // namespace sqbell
