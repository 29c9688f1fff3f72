// Independent reference engines: Monte-Carlo sampling of |Psi|^2 for the zz
// correlator and brute-force grid quadrature of the xx double integrals.
// Neither uses the shape parameters or the lattice-sum machinery.

#pragma once

#include <array>
#include <cstdint>

#include "sqbell/exact_correlators.hpp"

namespace sqbell {

/// Philox4x32-10 counter-based generator.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Samples (Q1, Q2) from |Psi|^2 and averages the product of the two bin
/// parities. The result depends only on (params, ell, n_samples, seed), not
/// on the thread count. Requires n_samples >= 10^4.
McEstimate mc_szsz(const SqueezingParams& p, const LatticeBinning& b, std::int64_t n_samples, std::uint64_t seed,
                   int threads = 1);

/// Smallest box half width accepted by quad_sxsx: 6 / sqrt(min curvature).
double quad_min_box(const SqueezingParams& p);

/// Midpoint-rule quadrature of 2 Re[<S+ S+> + <S+ S->] over the bins inside
/// [-box_half_width, box_half_width]^2 with grid_n points per bin width.
/// Throws std::invalid_argument if the box is too small or grid_n < 20.
double quad_sxsx(const SqueezingParams& p, const LatticeBinning& b, double box_half_width, int grid_n,
                 int threads = 1);

}  // namespace sqbell
