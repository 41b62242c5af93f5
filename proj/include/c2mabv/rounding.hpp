#pragma once

#include "c2mabv/core.hpp"
#include "c2mabv/rng.hpp"

namespace c2mabv::rounding {

// Convex decomposition of z into indicators of sets of size <= N:
// sum_l weights[l] * I(sets[l]) == z, weights sum to 1, at most K terms.
struct Decomposition {
  std::vector<double> weights;
  std::vector<ActionSet> sets;
};

// Cumulative-interval construction: breakpoints at the fractional parts of
// the prefix sums of z partition the unit circle into arcs; each arc selects
// one set (the coordinates whose cumulative interval straddles an integer at
// that phase). Deterministic; throws std::invalid_argument when z lies
// outside {0 <= z <= 1, sum z <= N} beyond 1e-9.
Decomposition decompose(const FractionalSelection& z, int max_active);

// Pairwise merge of the decomposition (equal-size padding, exchange swaps,
// per-element padding removal). Marginals: P(k in result) == z_k; result
// size <= N always.
ActionSet swap_round(const FractionalSelection& z, int max_active, rng::Stream& stream);

// Pairwise dependent rounding; preserves per-coordinate marginals and the
// coordinate sum, so |result| == N whenever sum z == N.
ActionSet dependent_round(const FractionalSelection& z, rng::Stream& stream);

}  // namespace c2mabv::rounding
