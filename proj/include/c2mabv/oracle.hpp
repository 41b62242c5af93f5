#pragma once

#include <span>
#include <utility>

#include "c2mabv/core.hpp"
#include "c2mabv/learner.hpp"

namespace c2mabv::oracle {

// Exhaustive enumeration is intentional here (it is the slow side of the
// runtime comparison); a size guard refuses instances beyond 5e6 subsets.
inline constexpr long long kMaxSubsets = 5'000'000;

struct BestAction {
  ActionSet action;
  double value = 0.0;
};

long long feasible_subset_count(RewardModel model, int num_arms, int max_active);

// argmax of action_reward over feasible cardinalities; ties resolve to the
// lexicographically smallest set.
BestAction best_action(RewardModel model, std::span<const double> mu, int max_active);

// As above, additionally requiring sum of expected costs <= budget. Returns
// an empty action with value 0 when nothing is feasible.
BestAction best_budgeted_action(RewardModel model, std::span<const double> mu,
                                std::span<const double> costs, int max_active, double budget);

// Per-round selection that skips relaxation entirely: enumerate at the
// current optimistic rewards and pessimistic costs.
ActionSet direct_policy_select(const learner::EstimatorState& state,
                               const ProblemInstance& inst);

}  // namespace c2mabv::oracle
