#pragma once

#include <cstdint>
#include <vector>

#include "oct/dbm.hpp"
#include "oct/rng.hpp"

namespace oct {

struct GenConfig {
  std::size_t n_vars = 2;
  std::size_t n_constraints = 4;
  std::int64_t magnitude = 10;  // D > 0: bound magnitudes are drawn within [-D, D]
  double unary_frac = 0.5;      // probability of a unary constraint shape
};

template <class M>
struct GeneratedProblem {
  // Every system bound is drawn from [0, D], so the origin satisfies each
  // constraint and the system is satisfiable by construction.
  std::vector<OctConstraint<M>> system;
  // The extra constraint's bound is drawn from [-D, D] and may cut the
  // octagon to empty.
  OctConstraint<M> extra;
};

// Deterministic in (cfg, seed, trial): one SplitMix64 stream, fixed draw order
// (shape, signs, variables, bound per constraint; system first, extra last).
template <class M>
GeneratedProblem<M> gen_random(const GenConfig& cfg, std::uint64_t seed, std::uint64_t trial) {
  SplitMix64 rng(trial_seed(seed, trial));

  auto draw = [&](bool origin_containing) -> OctConstraint<M> {
    bool unary = cfg.n_vars == 1 || rng.unit() < cfg.unary_frac;
    std::int64_t lo = origin_containing ? 0 : -cfg.magnitude;
    if (unary) {
      int sign = rng.coin() ? +1 : -1;
      std::size_t i = rng.below(cfg.n_vars);
      std::int64_t d = rng.range(lo, cfg.magnitude);
      return OctConstraint<M>::unary(sign, i, M::from_int(d));
    }
    int sign_i = rng.coin() ? +1 : -1;
    int sign_j = rng.coin() ? +1 : -1;
    std::size_t i = rng.below(cfg.n_vars);
    std::size_t j = rng.below(cfg.n_vars - 1);
    if (j >= i) ++j;
    std::int64_t d = rng.range(lo, cfg.magnitude);
    return OctConstraint<M>::make_binary(sign_i, i, sign_j, j, M::from_int(d));
  };

  GeneratedProblem<M> p;
  p.system.reserve(cfg.n_constraints);
  for (std::size_t k = 0; k < cfg.n_constraints; ++k) p.system.push_back(draw(true));
  p.extra = draw(false);
  return p;
}

}  // namespace oct
