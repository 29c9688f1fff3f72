// Theta-function approximation of the lattice sums, its large-squeezing
// reduction and the leading-order saddle point near phi = pi/2.

#pragma once

#include <string_view>

#include "sqbell/exact_correlators.hpp"

namespace sqbell {

/// q_lim == 0 selects default_q_lim.
struct ApproxConfig {
  long q_lim = 0;
};

enum class Regime { Generic, LargeSqueezing, DualSaddle };

std::string_view to_string(Regime r);

/// Thresholds: r > 3 is "large"; DualSaddle when cos(phi) < 0.1 e^{-r},
/// LargeSqueezing when phi < 0.2, with phi folded into [0, pi/2].
Regime classify_regime(const SqueezingParams& p);

/// ceil(4 / (ell sqrt(gamma_2))) + 8.
long default_q_lim(const GammaSet& g, const LatticeBinning& b);

double szsz_approx(const SqueezingParams& p, const LatticeBinning& b, const ApproxConfig& cfg = {});
double sxsx_approx(const SqueezingParams& p, const LatticeBinning& b, const ApproxConfig& cfg = {});
double sysy_approx(const SqueezingParams& p, const LatticeBinning& b, const ApproxConfig& cfg = {});
CorrelatorTriple approx_triple(const SqueezingParams& p, const LatticeBinning& b, const ApproxConfig& cfg = {});

/// True when (gamma_1 + |gamma_3|) ell^2 <= 0.4 and every component of `t`
/// lies in [-1, 1]. Inside that region the approximation stays within a few
/// 1e-3 of the exact sums; outside it can be off by O(1).
bool approx_trusted(const SqueezingParams& p, const LatticeBinning& b, const CorrelatorTriple& t);

/// Large-squeezing reduction, a function of x = e^r |phi| and ell only.
CorrelatorTriple large_squeezing_triple(const SqueezingParams& p, const LatticeBinning& b);

/// Same reduction written directly in terms of x = e^r |phi|.
CorrelatorTriple large_squeezing_triple_x(double x, const LatticeBinning& b);

/// Leading-order saddle point, (-1, 1, 1). When `in_regime` is given it
/// reports whether classify_regime agrees that the saddle applies.
CorrelatorTriple dual_saddle_triple(const SqueezingParams& p, bool* in_regime = nullptr);

}  // namespace sqbell
