#include "c2mabv/env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "c2mabv/errors.hpp"

namespace c2mabv::env {

namespace {

// Synthetic token profile: narrow input range and modest output mean keep
// the cost distribution's sigma/mean under 1%, so the <=1 clip is inert for
// practically every drawn expected cost.
constexpr int kSyntheticInputLo = 4950;
constexpr int kSyntheticInputHi = 5050;
constexpr double kSyntheticOutputMean = 50.0;

}  // namespace

double ArmSpec::expected_cost() const {
  const double mean_tokens =
      0.5 * (static_cast<double>(input_len_lo) + static_cast<double>(input_len_hi)) +
      output_len_mean;
  return mean_tokens * cost_per_token * cost_scale;
}

RewardDist parse_reward_dist(std::string_view name) {
  if (name == "bernoulli") return RewardDist::Bernoulli;
  if (name == "levels") return RewardDist::DiscreteLevels;
  throw ConfigError("unknown reward_dist '" + std::string(name) + "' (expected bernoulli|levels)");
}

std::string_view reward_dist_name(RewardDist d) {
  return d == RewardDist::Bernoulli ? "bernoulli" : "levels";
}

LevelProbs discrete_level_probs(double mean) {
  LevelProbs p{};
  p.p_low = 0.05;
  p.p_mid = 0.05;
  p.p_high = 2.0 * (mean - 0.02);
  p.p_zero = 1.0 - p.p_low - p.p_mid - p.p_high;
  if (p.p_high < -1e-12 || p.p_zero < -1e-12)
    throw ConfigError("discrete-level reward mean must lie in [0.02, 0.47]");
  p.p_high = std::max(p.p_high, 0.0);
  p.p_zero = std::max(p.p_zero, 0.0);
  return p;
}

std::vector<double> SyntheticInstance::true_means() const {
  std::vector<double> mu(arms.size());
  for (std::size_t k = 0; k < arms.size(); ++k) mu[k] = arms[k].true_mu;
  return mu;
}

std::vector<double> SyntheticInstance::expected_costs() const {
  std::vector<double> c(arms.size());
  for (std::size_t k = 0; k < arms.size(); ++k) c[k] = arms[k].expected_cost();
  return c;
}

SyntheticInstance make_synthetic_instance(int num_arms, int max_active, double budget,
                                          RewardModel model, rng::Stream& stream) {
  SyntheticInstance world;
  world.inst = ProblemInstance::make(num_arms, max_active, budget, model);
  world.reward_dist = RewardDist::Bernoulli;
  world.arms.reserve(static_cast<std::size_t>(num_arms));
  const double mean_tokens =
      0.5 * (kSyntheticInputLo + kSyntheticInputHi) + kSyntheticOutputMean;
  for (int k = 0; k < num_arms; ++k) {
    ArmSpec arm;
    arm.true_mu = stream.uniform01();
    const double cost = std::clamp(stream.uniform01(), 1e-6, 1.0);
    arm.input_len_lo = kSyntheticInputLo;
    arm.input_len_hi = kSyntheticInputHi;
    arm.output_len_mean = kSyntheticOutputMean;
    arm.cost_per_token = cost / mean_tokens;
    arm.cost_scale = 1.0;
    world.arms.push_back(arm);
  }
  return world;
}

double sample_cost(const ArmSpec& arm, rng::Stream& stream) {
  const std::int64_t l_in = stream.uniform_int(arm.input_len_lo, arm.input_len_hi);
  const std::int64_t l_out =
      arm.output_len_mean > 0.0 ? stream.poisson(arm.output_len_mean) : 0;
  const double raw =
      static_cast<double>(l_in + l_out) * arm.cost_per_token * arm.cost_scale;
  return std::min(raw, 1.0);
}

double sample_reward(double true_mu, RewardDist dist, rng::Stream& stream) {
  if (dist == RewardDist::Bernoulli) return stream.uniform01() < true_mu ? 1.0 : 0.0;
  const LevelProbs p = discrete_level_probs(true_mu);
  const double u = stream.uniform01();
  if (u < p.p_zero) return 0.0;
  if (u < p.p_zero + p.p_low) return 0.1;
  if (u < p.p_zero + p.p_low + p.p_mid) return 0.3;
  return 0.5;
}

bool is_awc_success(double reward, RewardDist dist) {
  return dist == RewardDist::Bernoulli ? reward >= 1.0 : reward >= 0.5 - 1e-12;
}

CascadeOrder parse_cascade_order(std::string_view name) {
  if (name == "cost-lcb" || name == "cost_lcb") return CascadeOrder::CostLowerBoundAsc;
  if (name == "index") return CascadeOrder::FixedIndex;
  if (name == "random") return CascadeOrder::Random;
  throw ConfigError("unknown cascade_order '" + std::string(name) +
                    "' (expected cost-lcb|index|random)");
}

std::vector<int> cascade_sequence(const ActionSet& s, CascadeOrder order,
                                  std::span<const double> cost_lower_bound,
                                  rng::Stream& stream) {
  std::vector<int> seq = s.members;
  switch (order) {
    case CascadeOrder::FixedIndex:
      break;
    case CascadeOrder::CostLowerBoundAsc:
      std::stable_sort(seq.begin(), seq.end(), [&](int a, int b) {
        return cost_lower_bound[static_cast<std::size_t>(a)] <
               cost_lower_bound[static_cast<std::size_t>(b)];
      });
      break;
    case CascadeOrder::Random:
      for (std::size_t i = seq.size(); i > 1; --i) {
        const std::size_t j =
            static_cast<std::size_t>(stream.uniform_int(0, static_cast<std::int64_t>(i) - 1));
        std::swap(seq[i - 1], seq[j]);
      }
      break;
  }
  return seq;
}

RoundOutcome execute_action(const SyntheticInstance& world, const ActionSet& s,
                            std::span<const int> sequence, bool expose_all_costs,
                            rng::Stream& stream) {
  if (!is_feasible(s, world.inst))
    throw std::invalid_argument("execute_action called with an infeasible action");
  if (sequence.size() != s.members.size())
    throw std::invalid_argument("cascade sequence must be a permutation of the action");
  for (int k : sequence) {
    if (!s.contains(k))
      throw std::invalid_argument("cascade sequence must be a permutation of the action");
  }

  RoundOutcome out;
  out.action = s;
  const bool cascading = world.inst.model == RewardModel::AnyWin;
  std::size_t stop = sequence.size();
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const int k = sequence[i];
    const ArmSpec& arm = world.arms[static_cast<std::size_t>(k)];
    const double reward = sample_reward(arm.true_mu, world.reward_dist, stream);
    const double cost = sample_cost(arm, stream);
    out.used.push_back(k);
    out.rewards.push_back(reward);
    out.costs.push_back(cost);
    out.total_used_cost += cost;
    if (cascading && is_awc_success(reward, world.reward_dist)) {
      stop = i + 1;
      break;
    }
  }
  out.total_worstcase_cost = out.total_used_cost;
  for (std::size_t i = stop; i < sequence.size(); ++i) {
    const int k = sequence[i];
    const double cost = sample_cost(world.arms[static_cast<std::size_t>(k)], stream);
    out.total_worstcase_cost += cost;
    if (expose_all_costs) {
      out.surcharge_arms.push_back(k);
      out.surcharge_costs.push_back(cost);
    }
  }
  return out;
}

namespace {

struct PricedModel {
  const char* name;
  double usd_per_1k_tokens;
  double mu;
};

// Per-1k-token list prices for the nine hosted models used as the cost
// preset, with plausible discrete-level means (feasible window [0.02,0.47]).
constexpr PricedModel kPricedModels[] = {
    {"chatglm2", 0.005, 0.12},   {"chatgpt-3.5", 0.02, 0.34}, {"claude-2", 0.08, 0.42},
    {"ernie-3.5", 0.015, 0.31},  {"llama2-7b", 0.005, 0.22},  {"llama2-13b", 0.008, 0.27},
    {"llama2-70b", 0.05, 0.36},  {"mixtral-8x7b", 0.05, 0.40}, {"chatgpt-4", 0.12, 0.45},
};

SyntheticInstance make_table3_instance() {
  SyntheticInstance world;
  world.inst = ProblemInstance::make(9, 4, 0.45, RewardModel::AnyWin);
  world.reward_dist = RewardDist::DiscreteLevels;
  constexpr int kInLo = 400, kInHi = 600;
  constexpr double kOutMean = 300.0;
  const double mean_tokens = 0.5 * (kInLo + kInHi) + kOutMean;
  double max_price = 0.0;
  for (const auto& m : kPricedModels) max_price = std::max(max_price, m.usd_per_1k_tokens);
  // Normalize so the priciest model's expected cost is 0.9.
  const double scale = 0.9 / (mean_tokens * (max_price / 1000.0));
  for (const auto& m : kPricedModels) {
    ArmSpec arm;
    arm.true_mu = m.mu;
    arm.cost_per_token = m.usd_per_1k_tokens / 1000.0;
    arm.input_len_lo = kInLo;
    arm.input_len_hi = kInHi;
    arm.output_len_mean = kOutMean;
    arm.cost_scale = scale;
    world.arms.push_back(arm);
  }
  return world;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"synthetic-awc-d3", "synthetic-suc-d3", "synthetic-aic-d3", "table3-llms"};
}

SyntheticInstance make_preset(std::string_view name, std::uint64_t seed) {
  rng::Stream stream = rng::make_stream(seed, 0, rng::StreamKind::Instance);
  if (name == "synthetic-awc-d3")
    return make_synthetic_instance(16, 8, 2.5, RewardModel::AnyWin, stream);
  if (name == "synthetic-suc-d3")
    return make_synthetic_instance(25, 8, 1.4, RewardModel::SumUp, stream);
  if (name == "synthetic-aic-d3")
    return make_synthetic_instance(25, 8, 1.6, RewardModel::AllIn, stream);
  if (name == "table3-llms") return make_table3_instance();
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

}  // namespace c2mabv::env
