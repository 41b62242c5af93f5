#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace c2mabv {

// How the arms selected in one round combine into a task reward:
//   AnyWin: 1 - prod(1 - mu_k), any member succeeding wins;  |S| <= N
//   SumUp:  sum(mu_k), members work in parallel;             |S| == N
//   AllIn:  prod(mu_k), every member must succeed;           |S| == N
enum class RewardModel { AnyWin, SumUp, AllIn };

RewardModel parse_reward_model(std::string_view name);  // "awc" | "suc" | "aic"
std::string_view reward_model_name(RewardModel m);

// Approximation ratio of the relaxed solver: 1 - 1/e for AnyWin
// (continuous greedy), exact for the two LP-solvable models.
double approx_ratio_for(RewardModel m);

// Sorted, duplicate-free arm subset.
struct ActionSet {
  std::vector<int> members;

  ActionSet() = default;
  ActionSet(std::initializer_list<int> ids);
  static ActionSet from_unsorted(std::vector<int> ids);

  int size() const { return static_cast<int>(members.size()); }
  bool empty() const { return members.empty(); }
  bool contains(int k) const;
  bool operator==(const ActionSet& o) const { return members == o.members; }
};

// Relaxed selection vector z in [0,1]^K.
struct FractionalSelection {
  std::vector<double> values;

  FractionalSelection() = default;
  explicit FractionalSelection(std::vector<double> v) : values(std::move(v)) {}
  static FractionalSelection indicator(const ActionSet& s, int num_arms);

  int size() const { return static_cast<int>(values.size()); }
};

struct ProblemInstance {
  int num_arms = 0;       // K
  int max_active = 0;     // N
  double budget = 0.0;    // rho, expected cost units per round
  RewardModel model = RewardModel::AnyWin;
  double approx_ratio = 1.0;

  static ProblemInstance make(int num_arms, int max_active, double budget, RewardModel model);
};

double action_reward(RewardModel model, const ActionSet& s, std::span<const double> mu);
double relaxed_reward(RewardModel model, const FractionalSelection& z, std::span<const double> mu);
bool is_feasible(const ActionSet& s, const ProblemInstance& inst);

}  // namespace c2mabv
