// Backend selection for the correlator triple. Every backend is evaluated on
// the canonical representative phi in [0, pi/4] and mapped back with the
// duality signs.

#pragma once

#include <string>
#include <string_view>

#include "sqbell/approx_correlators.hpp"
#include "sqbell/exact_correlators.hpp"

namespace sqbell {

enum class Backend { Exact, Approx, LargeSqueezing, DualSaddle, Auto };

std::string_view to_string(Backend b);

/// Accepts exact, approx, large_squeezing (or large-squeezing), dual_saddle
/// (or dual-saddle) and auto. Throws std::invalid_argument otherwise.
Backend parse_backend(std::string_view s);

enum class Quality { Ok, Suspect, Failed };

std::string_view to_string(Quality q);

struct CorrelatorOptions {
  TruncationPolicy trunc{};
  ApproxConfig approx{};
};

struct CorrelatorResult {
  CorrelatorTriple triple{};
  Backend backend = Backend::Exact;  // backend actually used, never Auto
  Regime regime = Regime::Generic;   // regime of the parameters as given
  Quality quality = Quality::Ok;
};

/// Auto uses the large-squeezing reduction when the canonical parameters are
/// in that regime and the exact sums otherwise. Quality is Suspect when an
/// explicitly requested asymptotic backend is used outside its regime, or
/// when the approximation fails approx_trusted.
CorrelatorResult correlators(const SqueezingParams& p, const LatticeBinning& b, Backend hint = Backend::Auto,
                             const CorrelatorOptions& opt = {});

}  // namespace sqbell
