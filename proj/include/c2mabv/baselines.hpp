#pragma once

#include <span>

#include "c2mabv/core.hpp"
#include "c2mabv/learner.hpp"
#include "c2mabv/relax.hpp"
#include "c2mabv/rng.hpp"

namespace c2mabv::baselines {

// Relax at the given means/costs, then discretize with the model's rounder.
// This is the one selection pipeline every mean-vector policy routes through.
struct PipelineResult {
  ActionSet action;
  relax::SolveReport report;
};
PipelineResult select_via_relax_round(std::span<const double> means,
                                      std::span<const double> costs,
                                      const ProblemInstance& inst, int awc_steps,
                                      rng::Stream& rounding_stream);

// Breaks optimism ties among never-observed arms (whose UCB is exactly 1)
// uniformly at random by subtracting an order-1e-10 jitter; observed arms are
// left untouched.
void jitter_unobserved(std::vector<double>& mu_bar, std::span<const std::int64_t> counts,
                       rng::Stream& policy_stream);

// Reward-only optimism: top-N arms by UCB, no budget constraint anywhere.
ActionSet cucb_select(const learner::EstimatorState& state, const ProblemInstance& inst);

double epsilon_schedule(int num_arms, std::int64_t t);  // min(1, 2 sqrt(K) / sqrt(t))

// With probability epsilon_t a uniformly random size-N set; otherwise the
// relax+round pipeline at the plain empirical means (no confidence widths).
ActionSet epsilon_greedy_select(const learner::EstimatorState& state,
                                const ProblemInstance& inst, std::int64_t t, int awc_steps,
                                rng::Stream& policy_stream, rng::Stream& rounding_stream);

struct ThompsonState {
  std::vector<double> success;  // fractional tallies: s += X
  std::vector<double> failure;  //                     f += 1 - X

  static ThompsonState init(int num_arms);
};
void thompson_observe(ThompsonState& ts, const env::RoundOutcome& outcome);

// Beta(1+s, 1+f) posterior samples drive the pipeline; costs enter at their
// empirical means with no pessimism.
ActionSet thompson_select(const ThompsonState& ts, const learner::EstimatorState& state,
                          const ProblemInstance& inst, int awc_steps,
                          rng::Stream& policy_stream, rng::Stream& rounding_stream);

// Identity policy over a configured set; validates feasibility once.
ActionSet fixed_select(const ActionSet& configured, const ProblemInstance& inst);

ActionSet uniform_feasible_set(const ProblemInstance& inst, rng::Stream& stream);

}  // namespace c2mabv::baselines
