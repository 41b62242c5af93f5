#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "c2mabv/env.hpp"
#include "c2mabv/errors.hpp"

using namespace c2mabv;

TEST_CASE("make_synthetic_instance: paper-scale instances are valid and deterministic") {
  auto s1 = rng::make_stream(9, 0, rng::StreamKind::Instance);
  const auto awc = env::make_synthetic_instance(16, 8, 2.5, RewardModel::AnyWin, s1);
  CHECK(awc.inst.num_arms == 16);
  CHECK(awc.inst.max_active == 8);
  CHECK(awc.inst.budget == 2.5);
  for (const auto& arm : awc.arms) {
    CHECK(arm.true_mu >= 0.0);
    CHECK(arm.true_mu <= 1.0);
    CHECK(arm.expected_cost() > 0.0);
    CHECK(arm.expected_cost() <= 1.0 + 1e-12);
  }

  auto s2 = rng::make_stream(9, 0, rng::StreamKind::Instance);
  const auto suc = env::make_synthetic_instance(25, 8, 1.4, RewardModel::SumUp, s2);
  CHECK(suc.inst.num_arms == 25);

  auto s3 = rng::make_stream(9, 0, rng::StreamKind::Instance);
  auto s4 = rng::make_stream(9, 0, rng::StreamKind::Instance);
  const auto a = env::make_synthetic_instance(12, 4, 1.0, RewardModel::AllIn, s3);
  const auto b = env::make_synthetic_instance(12, 4, 1.0, RewardModel::AllIn, s4);
  for (int k = 0; k < 12; ++k) {
    CHECK(a.arms[static_cast<std::size_t>(k)].true_mu ==
          b.arms[static_cast<std::size_t>(k)].true_mu);
    CHECK(a.arms[static_cast<std::size_t>(k)].cost_per_token ==
          b.arms[static_cast<std::size_t>(k)].cost_per_token);
  }
}

TEST_CASE("sample_cost: degenerate parameters give a constant cost") {
  env::ArmSpec arm;
  arm.input_len_lo = arm.input_len_hi = 100;
  arm.output_len_mean = 0.0;
  arm.cost_per_token = 0.001;
  arm.cost_scale = 1.0;
  auto s = rng::make_stream(61, 0, rng::StreamKind::Env);
  for (int i = 0; i < 50; ++i) CHECK(env::sample_cost(arm, s) == doctest::Approx(0.1));
}

TEST_CASE("sample_cost: empirical mean within 3 sigma of the compound analytic mean") {
  env::ArmSpec arm;
  arm.input_len_lo = 4950;
  arm.input_len_hi = 5050;
  arm.output_len_mean = 50.0;
  arm.cost_per_token = 0.5 / 5050.0;
  arm.cost_scale = 1.0;
  const double analytic = arm.expected_cost();
  CHECK(analytic == doctest::Approx(0.5).epsilon(1e-12));
  auto s = rng::make_stream(62, 0, rng::StreamKind::Env);
  const int n = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = env::sample_cost(arm, s);
    CHECK(x >= 0.0);
    CHECK(x <= 1.0);
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  const double sd = std::sqrt((sum2 / n - mean * mean) / n);
  CHECK(std::abs(mean - analytic) <= 3.0 * sd);
}

TEST_CASE("sample_cost clips at 1") {
  env::ArmSpec arm;
  arm.input_len_lo = arm.input_len_hi = 1500;
  arm.output_len_mean = 0.0;
  arm.cost_per_token = 0.001;
  arm.cost_scale = 1.0;
  auto s = rng::make_stream(63, 0, rng::StreamKind::Env);
  CHECK(env::sample_cost(arm, s) == 1.0);
}

TEST_CASE("sample_reward: Bernoulli endpoints and mean") {
  auto s = rng::make_stream(64, 0, rng::StreamKind::Env);
  for (int i = 0; i < 100; ++i) {
    CHECK(env::sample_reward(1.0, env::RewardDist::Bernoulli, s) == 1.0);
    CHECK(env::sample_reward(0.0, env::RewardDist::Bernoulli, s) == 0.0);
  }
  const int n = 100000;
  int ones = 0;
  for (int i = 0; i < n; ++i)
    ones += env::sample_reward(0.3, env::RewardDist::Bernoulli, s) == 1.0 ? 1 : 0;
  const double sigma = std::sqrt(0.3 * 0.7 / n);
  CHECK(std::abs(ones / static_cast<double>(n) - 0.3) <= 3.0 * sigma);
}

TEST_CASE("discrete levels: probabilities hit the target mean, infeasible means error") {
  const auto p = env::discrete_level_probs(0.3);
  CHECK(p.p_low == doctest::Approx(0.05));
  CHECK(p.p_mid == doctest::Approx(0.05));
  CHECK(0.1 * p.p_low + 0.3 * p.p_mid + 0.5 * p.p_high == doctest::Approx(0.3));
  CHECK(p.p_zero + p.p_low + p.p_mid + p.p_high == doctest::Approx(1.0));
  CHECK_THROWS_AS(env::discrete_level_probs(0.6), ConfigError);
  CHECK_THROWS_AS(env::discrete_level_probs(0.01), ConfigError);

  auto s = rng::make_stream(65, 0, rng::StreamKind::Env);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += env::sample_reward(0.3, env::RewardDist::DiscreteLevels, s);
  CHECK(sum / n == doctest::Approx(0.3).epsilon(0.02));
}

namespace {

env::SyntheticInstance tiny_world(RewardModel model, std::vector<double> mus) {
  env::SyntheticInstance world;
  const int K = static_cast<int>(mus.size());
  world.inst = ProblemInstance::make(K, std::min(3, K), 5.0, model);
  world.reward_dist = env::RewardDist::Bernoulli;
  for (double mu : mus) {
    env::ArmSpec arm;
    arm.true_mu = mu;
    arm.input_len_lo = arm.input_len_hi = 100;
    arm.output_len_mean = 0.0;
    arm.cost_per_token = 0.001;
    world.arms.push_back(arm);
  }
  return world;
}

}  // namespace

TEST_CASE("execute_action: deterministic first success stops the cascade") {
  auto world = tiny_world(RewardModel::AnyWin, {1.0, 0.5, 0.5});
  auto s = rng::make_stream(66, 0, rng::StreamKind::Env);
  const ActionSet action{0, 1, 2};
  const std::vector<int> seq{0, 1, 2};
  const auto out = env::execute_action(world, action, seq, false, s);
  CHECK(out.used == std::vector<int>{0});
  CHECK(out.rewards.size() == 1);
  CHECK(out.total_worstcase_cost >= out.total_used_cost);
  CHECK(out.total_worstcase_cost == doctest::Approx(0.3));
}

TEST_CASE("execute_action: SumUp and AllIn query every member") {
  auto world = tiny_world(RewardModel::SumUp, {0.2, 0.9, 0.4});
  auto s = rng::make_stream(67, 0, rng::StreamKind::Env);
  const ActionSet action{0, 1, 2};
  const auto out = env::execute_action(world, action, action.members, false, s);
  CHECK(out.used.size() == 3);
  CHECK(out.total_used_cost == doctest::Approx(out.total_worstcase_cost));
}

TEST_CASE("execute_action: exhausted cascade uses every arm in order") {
  auto world = tiny_world(RewardModel::AnyWin, {0.0, 0.0, 0.0});
  auto s = rng::make_stream(68, 0, rng::StreamKind::Env);
  const ActionSet action{0, 1, 2};
  const std::vector<int> seq{2, 0, 1};
  const auto out = env::execute_action(world, action, seq, false, s);
  CHECK(out.used == seq);
}

TEST_CASE("execute_action rejects infeasible actions and bad sequences") {
  auto world = tiny_world(RewardModel::SumUp, {0.5, 0.5, 0.5, 0.5});
  auto s = rng::make_stream(69, 0, rng::StreamKind::Env);
  CHECK_THROWS_AS(
      env::execute_action(world, ActionSet{0}, std::vector<int>{0}, false, s),
      std::invalid_argument);
  CHECK_THROWS_AS(env::execute_action(world, ActionSet{0, 1, 2}, std::vector<int>{0, 1, 3},
                                      false, s),
                  std::invalid_argument);
}

TEST_CASE("surcharge costs appear only when exposed") {
  auto world = tiny_world(RewardModel::AnyWin, {1.0, 0.5, 0.5});
  auto s = rng::make_stream(70, 0, rng::StreamKind::Env);
  const ActionSet action{0, 1, 2};
  const std::vector<int> seq{0, 1, 2};
  const auto hidden = env::execute_action(world, action, seq, false, s);
  CHECK(hidden.surcharge_arms.empty());
  const auto exposed = env::execute_action(world, action, seq, true, s);
  CHECK(exposed.surcharge_arms == std::vector<int>{1, 2});
  CHECK(exposed.surcharge_costs.size() == 2);
}

TEST_CASE("cascade_sequence orderings") {
  const ActionSet action{1, 3, 5};
  const std::vector<double> lcb{0.0, 0.5, 0.0, 0.1, 0.0, 0.9};
  auto s = rng::make_stream(71, 0, rng::StreamKind::Policy);
  CHECK(env::cascade_sequence(action, env::CascadeOrder::FixedIndex, lcb, s) ==
        std::vector<int>{1, 3, 5});
  CHECK(env::cascade_sequence(action, env::CascadeOrder::CostLowerBoundAsc, lcb, s) ==
        std::vector<int>{3, 1, 5});
  const auto shuffled = env::cascade_sequence(action, env::CascadeOrder::Random, lcb, s);
  CHECK(shuffled.size() == 3);
}

TEST_CASE("presets expose the documented instances") {
  const auto names = env::preset_names();
  CHECK(names.size() == 4);
  const auto awc = env::make_preset("synthetic-awc-d3", 1);
  CHECK(awc.inst.num_arms == 16);
  CHECK(awc.inst.max_active == 8);
  CHECK(awc.inst.budget == doctest::Approx(2.5));
  CHECK(awc.inst.model == RewardModel::AnyWin);
  const auto suc = env::make_preset("synthetic-suc-d3", 1);
  CHECK(suc.inst.num_arms == 25);
  CHECK(suc.inst.budget == doctest::Approx(1.4));
  const auto aic = env::make_preset("synthetic-aic-d3", 1);
  CHECK(aic.inst.budget == doctest::Approx(1.6));
  const auto llms = env::make_preset("table3-llms", 1);
  CHECK(llms.inst.num_arms == 9);
  CHECK(llms.inst.max_active == 4);
  CHECK(llms.reward_dist == env::RewardDist::DiscreteLevels);
  for (const auto& arm : llms.arms) CHECK_NOTHROW(env::discrete_level_probs(arm.true_mu));
  CHECK_THROWS_AS(env::make_preset("nope", 1), ConfigError);
}
