#include "sqbell/correlators.hpp"

#include <stdexcept>
#include <string>

namespace sqbell {

std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::Exact: return "exact";
    case Backend::Approx: return "approx";
    case Backend::LargeSqueezing: return "large_squeezing";
    case Backend::DualSaddle: return "dual_saddle";
    case Backend::Auto: return "auto";
  }
  return "unknown";
}

Backend parse_backend(std::string_view s) {
  if (s == "exact") return Backend::Exact;
  if (s == "approx") return Backend::Approx;
  if (s == "large_squeezing" || s == "large-squeezing") return Backend::LargeSqueezing;
  if (s == "dual_saddle" || s == "dual-saddle") return Backend::DualSaddle;
  if (s == "auto") return Backend::Auto;
  throw std::invalid_argument("unknown backend '" + std::string(s) + "'");
}

std::string_view to_string(Quality q) {
  switch (q) {
    case Quality::Ok: return "ok";
    case Quality::Suspect: return "suspect";
    case Quality::Failed: return "failed";
  }
  return "unknown";
}

CorrelatorResult correlators(const SqueezingParams& p, const LatticeBinning& b, Backend hint,
                             const CorrelatorOptions& opt) {
  validate(b);
  validate(opt.trunc);
  const DualityRecord canon = canonicalize_phi(p);
  const SqueezingParams& cp = canon.params;

  CorrelatorResult out;
  out.regime = classify_regime(p);
  const Regime canon_regime = classify_regime(cp);

  Backend use = hint;
  if (use == Backend::Auto) use = canon_regime == Regime::LargeSqueezing ? Backend::LargeSqueezing : Backend::Exact;
  out.backend = use;

  CorrelatorTriple t;
  switch (use) {
    case Backend::Exact:
      t = exact_triple(cp, b, opt.trunc);
      break;
    case Backend::Approx:
      t = approx_triple(cp, b, opt.approx);
      if (!approx_trusted(cp, b, t)) out.quality = Quality::Suspect;
      break;
    case Backend::LargeSqueezing:
      t = large_squeezing_triple(cp, b);
      if (canon_regime != Regime::LargeSqueezing) out.quality = Quality::Suspect;
      break;
    case Backend::DualSaddle: {
      // The saddle constants describe the original parameters directly.
      bool in_regime = false;
      out.triple = dual_saddle_triple(p, &in_regime);
      if (!in_regime) out.quality = Quality::Suspect;
      return out;
    }
    case Backend::Auto:
      break;
  }
  out.triple = {canon.sz_sign * t.szsz, canon.sx_sign * t.sxsx, canon.sy_sign * t.sysy};
  return out;
}

}  // namespace sqbell
