#include "c2mabv/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "c2mabv/errors.hpp"
#include "c2mabv/rounding.hpp"

namespace c2mabv::baselines {

PipelineResult select_via_relax_round(std::span<const double> means,
                                      std::span<const double> costs,
                                      const ProblemInstance& inst, int awc_steps,
                                      rng::Stream& rounding_stream) {
  relax::RelaxedProblem p;
  p.mu_bar.assign(means.begin(), means.end());
  p.c_lower.assign(costs.begin(), costs.end());
  p.max_active = inst.max_active;
  p.budget = inst.budget;
  p.model = inst.model;

  PipelineResult out;
  out.report = relax::solve(p, awc_steps);
  if (inst.model == RewardModel::AnyWin) {
    out.action = rounding::swap_round(out.report.z, inst.max_active, rounding_stream);
  } else {
    out.action = rounding::dependent_round(out.report.z, rounding_stream);
  }
  return out;
}

void jitter_unobserved(std::vector<double>& mu_bar, std::span<const std::int64_t> counts,
                       rng::Stream& policy_stream) {
  for (std::size_t k = 0; k < mu_bar.size(); ++k) {
    if (counts[k] == 0) mu_bar[k] -= 1e-10 * policy_stream.uniform01();
  }
}

ActionSet cucb_select(const learner::EstimatorState& state, const ProblemInstance& inst) {
  const std::vector<double> mu_bar = learner::reward_ucb_all(state);
  std::vector<int> order(mu_bar.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double ua = mu_bar[static_cast<std::size_t>(a)];
    const double ub = mu_bar[static_cast<std::size_t>(b)];
    return ua != ub ? ua > ub : a < b;
  });
  order.resize(static_cast<std::size_t>(inst.max_active));
  return ActionSet::from_unsorted(std::move(order));
}

double epsilon_schedule(int num_arms, std::int64_t t) {
  return std::min(1.0, 2.0 * std::sqrt(static_cast<double>(num_arms)) /
                           std::sqrt(static_cast<double>(t)));
}

ActionSet epsilon_greedy_select(const learner::EstimatorState& state,
                                const ProblemInstance& inst, std::int64_t t, int awc_steps,
                                rng::Stream& policy_stream, rng::Stream& rounding_stream) {
  if (policy_stream.uniform01() < epsilon_schedule(inst.num_arms, t))
    return uniform_feasible_set(inst, policy_stream);
  return select_via_relax_round(state.mu_hat, state.c_hat, inst, awc_steps, rounding_stream)
      .action;
}

ThompsonState ThompsonState::init(int num_arms) {
  ThompsonState ts;
  ts.success.assign(static_cast<std::size_t>(num_arms), 0.0);
  ts.failure.assign(static_cast<std::size_t>(num_arms), 0.0);
  return ts;
}

void thompson_observe(ThompsonState& ts, const env::RoundOutcome& outcome) {
  for (std::size_t i = 0; i < outcome.used.size(); ++i) {
    const auto k = static_cast<std::size_t>(outcome.used[i]);
    ts.success[k] += outcome.rewards[i];
    ts.failure[k] += 1.0 - outcome.rewards[i];
  }
}

ActionSet thompson_select(const ThompsonState& ts, const learner::EstimatorState& state,
                          const ProblemInstance& inst, int awc_steps,
                          rng::Stream& policy_stream, rng::Stream& rounding_stream) {
  std::vector<double> theta(ts.success.size());
  for (std::size_t k = 0; k < theta.size(); ++k)
    theta[k] = policy_stream.beta(1.0 + ts.success[k], 1.0 + ts.failure[k]);
  return select_via_relax_round(theta, state.c_hat, inst, awc_steps, rounding_stream).action;
}

ActionSet fixed_select(const ActionSet& configured, const ProblemInstance& inst) {
  if (!is_feasible(configured, inst) || configured.empty())
    throw ConfigError("fixed policy set is infeasible for the configured model");
  return configured;
}

ActionSet uniform_feasible_set(const ProblemInstance& inst, rng::Stream& stream) {
  std::vector<int> pool(static_cast<std::size_t>(inst.num_arms));
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < inst.max_active; ++i) {
    const auto j = static_cast<std::size_t>(
        stream.uniform_int(i, static_cast<std::int64_t>(inst.num_arms) - 1));
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
  }
  pool.resize(static_cast<std::size_t>(inst.max_active));
  return ActionSet::from_unsorted(std::move(pool));
}

}  // namespace c2mabv::baselines
