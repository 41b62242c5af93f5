#include "c2mabv/oracle.hpp"

#include <algorithm>
#include <vector>

#include "c2mabv/errors.hpp"

namespace c2mabv::oracle {

namespace {

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > 4 * kMaxSubsets) return 4 * kMaxSubsets;  // saturate
  }
  return r;
}

// Visit every subset of {0..K-1} with exactly `size` members in
// lexicographic order.
template <typename Fn>
void for_each_combination(int num_arms, int size, Fn&& fn) {
  if (size == 0) {
    ActionSet empty;
    fn(empty);
    return;
  }
  std::vector<int> idx(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
  ActionSet s;
  for (;;) {
    s.members = idx;
    fn(s);
    int i = size - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == num_arms - size + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < size; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

bool lex_smaller(const ActionSet& a, const ActionSet& b) {
  return std::lexicographical_compare(a.members.begin(), a.members.end(), b.members.begin(),
                                      b.members.end());
}

void check_guard(RewardModel model, int num_arms, int max_active) {
  if (feasible_subset_count(model, num_arms, max_active) > kMaxSubsets)
    throw SizeGuardError("instance too large for exhaustive enumeration (guard: 5e6 subsets)");
}

}  // namespace

long long feasible_subset_count(RewardModel model, int num_arms, int max_active) {
  if (model != RewardModel::AnyWin) return binom(num_arms, max_active);
  long long total = 0;
  for (int size = 1; size <= max_active; ++size) {
    total += binom(num_arms, size);
    if (total > kMaxSubsets) return total;
  }
  return total;
}

BestAction best_action(RewardModel model, std::span<const double> mu, int max_active) {
  check_guard(model, static_cast<int>(mu.size()), max_active);
  const int num_arms = static_cast<int>(mu.size());
  BestAction best;
  best.value = -1.0;
  auto consider = [&](const ActionSet& s) {
    const double v = action_reward(model, s, mu);
    if (v > best.value || (v == best.value && lex_smaller(s, best.action))) {
      best.value = v;
      best.action = s;
    }
  };
  if (model == RewardModel::AnyWin) {
    for (int size = 1; size <= max_active; ++size) for_each_combination(num_arms, size, consider);
  } else {
    for_each_combination(num_arms, max_active, consider);
  }
  return best;
}

BestAction best_budgeted_action(RewardModel model, std::span<const double> mu,
                                std::span<const double> costs, int max_active, double budget) {
  check_guard(model, static_cast<int>(mu.size()), max_active);
  const int num_arms = static_cast<int>(mu.size());
  BestAction best;
  best.value = -1.0;
  auto consider = [&](const ActionSet& s) {
    double spend = 0.0;
    for (int k : s.members) spend += costs[static_cast<std::size_t>(k)];
    if (spend > budget + 1e-12) return;
    const double v = action_reward(model, s, mu);
    if (v > best.value || (v == best.value && lex_smaller(s, best.action))) {
      best.value = v;
      best.action = s;
    }
  };
  if (model == RewardModel::AnyWin) {
    for (int size = 1; size <= max_active; ++size) for_each_combination(num_arms, size, consider);
  } else {
    for_each_combination(num_arms, max_active, consider);
  }
  if (best.value < 0.0) {
    best.value = 0.0;  // no feasible set: empty sentinel
    best.action = ActionSet{};
  }
  return best;
}

ActionSet direct_policy_select(const learner::EstimatorState& state,
                               const ProblemInstance& inst) {
  const std::vector<double> mu_bar = learner::reward_ucb_all(state);
  const std::vector<double> c_low = learner::cost_lcb_all(state);
  return best_budgeted_action(inst.model, mu_bar, c_low, inst.max_active, inst.budget).action;
}

}  // namespace c2mabv::oracle
