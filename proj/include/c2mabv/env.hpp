#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "c2mabv/core.hpp"
#include "c2mabv/rng.hpp"

namespace c2mabv::env {

// Token-based cost model: one round's cost for an arm is
// (input_tokens + output_tokens) * cost_per_token * cost_scale, clipped to 1.
struct ArmSpec {
  double true_mu = 0.5;
  double cost_per_token = 0.0;
  int input_len_lo = 0;
  int input_len_hi = 0;
  double output_len_mean = 0.0;
  double cost_scale = 1.0;

  double expected_cost() const;
};

enum class RewardDist { Bernoulli, DiscreteLevels };
RewardDist parse_reward_dist(std::string_view name);  // "bernoulli" | "levels"
std::string_view reward_dist_name(RewardDist d);

// Support {0, 0.1, 0.3, 0.5} with p(0.1) = p(0.3) = 0.05 fixed; p(0.5) and
// p(0) solve for the target mean. Throws ConfigError when the mean is
// outside the reachable window [0.02, 0.47].
struct LevelProbs {
  double p_zero, p_low, p_mid, p_high;
};
LevelProbs discrete_level_probs(double mean);

struct SyntheticInstance {
  ProblemInstance inst;
  std::vector<ArmSpec> arms;
  RewardDist reward_dist = RewardDist::Bernoulli;

  std::vector<double> true_means() const;
  std::vector<double> expected_costs() const;
};

// True means and expected costs i.i.d. uniform; token parameters back-solved
// so an arm's expected cost equals its draw.
SyntheticInstance make_synthetic_instance(int num_arms, int max_active, double budget,
                                          RewardModel model, rng::Stream& stream);

double sample_cost(const ArmSpec& arm, rng::Stream& stream);
double sample_reward(double true_mu, RewardDist dist, rng::Stream& stream);

// One executed round. `used` keeps query order; rewards/costs are per used
// arm. Arms of the action that were never queried contribute fresh cost
// draws to total_worstcase_cost only; their per-arm values stay hidden from
// the learner unless expose_all_costs put them into surcharge_*.
struct RoundOutcome {
  ActionSet action;
  std::vector<int> used;
  std::vector<double> rewards;
  std::vector<double> costs;
  double total_used_cost = 0.0;
  double total_worstcase_cost = 0.0;
  std::vector<int> surcharge_arms;
  std::vector<double> surcharge_costs;
};

enum class CascadeOrder { CostLowerBoundAsc, FixedIndex, Random };
CascadeOrder parse_cascade_order(std::string_view name);

// Query order for an action: ascending cost LCB (cheapest first), plain
// index order, or a random shuffle drawn from `stream`.
std::vector<int> cascade_sequence(const ActionSet& s, CascadeOrder order,
                                  std::span<const double> cost_lower_bound, rng::Stream& stream);

// Any-win actions walk `sequence` until the first success; the other models
// query every member. `sequence` must be a permutation of the action.
RoundOutcome execute_action(const SyntheticInstance& world, const ActionSet& s,
                            std::span<const int> sequence, bool expose_all_costs,
                            rng::Stream& stream);

bool is_awc_success(double reward, RewardDist dist);

std::vector<std::string> preset_names();
SyntheticInstance make_preset(std::string_view name, std::uint64_t seed);

}  // namespace c2mabv::env
