// Closed-form small-ell and large-ell limits of the correlators and of the
// optimized Bell value.

#pragma once

#include "sqbell/exact_correlators.hpp"

namespace sqbell {

/// Large-ell plateau of the zz correlator.
double szsz_large_ell(const SqueezingParams& p);

/// Large-ell plateau of the optimized Bell value, 2 |szsz_large_ell|.
double bell_large_ell(const SqueezingParams& p);

struct SmallEllLimits {
  CorrelatorTriple triple{0.0, 1.0, 0.0};
  double bell = 2.0;
};

/// The ell -> 0 limits, which do not depend on the state.
constexpr SmallEllLimits small_ell_limits() { return {}; }

/// Leading small-ell behaviour of the zz correlator as obtained by replacing
/// the bin integrals with point samples: 2 exp(-pi^2 / (gamma_2 ell^2)).
/// Averaging over the bins multiplies the true leading term by 4 / pi^2, so
/// the exact sums approach (4 / pi^2) times this value.
double szsz_small_ell_leading(const SqueezingParams& p, const LatticeBinning& b);

}  // namespace sqbell
