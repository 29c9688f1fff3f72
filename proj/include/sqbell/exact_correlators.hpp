// Exact pseudo-spin correlators as lattice sums of one-dimensional
// quadratures over the bin coordinate z in [0, 1].

#pragma once

#include <array>

#include "sqbell/squeezed_state.hpp"

namespace sqbell {

/// Bin width of the pseudo-spin discretization.
struct LatticeBinning {
  double ell = 1.0;
};

/// index_cap == 0 selects the envelope-derived default cap.
struct TruncationPolicy {
  long index_cap = 0;
  double quad_tol = 1e-12;
  double block_tol = 1e-12;
};

struct CorrelatorTriple {
  double szsz = 0.0;
  double sxsx = 0.0;
  double sysy = 0.0;
};

/// Throws std::invalid_argument unless ell is finite and positive.
void validate(const LatticeBinning& b);
void validate(const TruncationPolicy& t);

/// Index cap used when TruncationPolicy::index_cap is zero.
long default_index_cap(const GammaSet& g, const LatticeBinning& b);

/// Single lattice term of the zz sum for the bins (n, m).
double z_term(const GammaSet& g, const LatticeBinning& b, long n, long m, const TruncationPolicy& t = {});

/// The four lattice terms of the xx sum for the bins (n, m). Real indices
/// are accepted so that half-integer shifts can be probed.
std::array<double, 4> x_terms(const GammaSet& g, const LatticeBinning& b, double n, double m,
                              const TruncationPolicy& t = {});

double szsz_exact(const SqueezingParams& p, const LatticeBinning& b, const TruncationPolicy& t = {});
double sxsx_exact(const SqueezingParams& p, const LatticeBinning& b, const TruncationPolicy& t = {});
double sysy_exact(const SqueezingParams& p, const LatticeBinning& b, const TruncationPolicy& t = {});

/// All three sums at once; xx and yy share their quadrature.
CorrelatorTriple exact_triple(const SqueezingParams& p, const LatticeBinning& b, const TruncationPolicy& t = {});

/// The xz correlator vanishes identically by the joint parity of both modes.
constexpr double sxsz_exact() { return 0.0; }

/// Direct cell-by-cell quadrature of the xz correlator from the
/// wavefunction. Returns the absolute residual, which should sit at roundoff.
double sxsz_diagnostic(const SqueezingParams& p, const LatticeBinning& b, int nodes_per_bin = 8);

}  // namespace sqbell
