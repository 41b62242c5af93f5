#include "c2mabv/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "c2mabv/errors.hpp"
#include "c2mabv/kernels.hpp"

namespace c2mabv {

RewardModel parse_reward_model(std::string_view name) {
  if (name == "awc") return RewardModel::AnyWin;
  if (name == "suc") return RewardModel::SumUp;
  if (name == "aic") return RewardModel::AllIn;
  throw ConfigError("unknown reward model '" + std::string(name) + "' (expected awc|suc|aic)");
}

std::string_view reward_model_name(RewardModel m) {
  switch (m) {
    case RewardModel::AnyWin: return "awc";
    case RewardModel::SumUp: return "suc";
    case RewardModel::AllIn: return "aic";
  }
  return "?";
}

double approx_ratio_for(RewardModel m) {
  return m == RewardModel::AnyWin ? 1.0 - 1.0 / std::exp(1.0) : 1.0;
}

ActionSet::ActionSet(std::initializer_list<int> ids) : members(ids) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
}

ActionSet ActionSet::from_unsorted(std::vector<int> ids) {
  ActionSet s;
  s.members = std::move(ids);
  std::sort(s.members.begin(), s.members.end());
  s.members.erase(std::unique(s.members.begin(), s.members.end()), s.members.end());
  return s;
}

bool ActionSet::contains(int k) const {
  return std::binary_search(members.begin(), members.end(), k);
}

FractionalSelection FractionalSelection::indicator(const ActionSet& s, int num_arms) {
  FractionalSelection z;
  z.values.assign(static_cast<std::size_t>(num_arms), 0.0);
  for (int k : s.members) z.values.at(static_cast<std::size_t>(k)) = 1.0;
  return z;
}

ProblemInstance ProblemInstance::make(int num_arms, int max_active, double budget,
                                      RewardModel model) {
  if (num_arms < 1 || max_active < 1 || max_active > num_arms)
    throw ConfigError("instance requires 1 <= N <= K");
  if (budget <= 0.0) throw ConfigError("instance requires budget > 0");
  ProblemInstance inst;
  inst.num_arms = num_arms;
  inst.max_active = max_active;
  inst.budget = budget;
  inst.model = model;
  inst.approx_ratio = approx_ratio_for(model);
  return inst;
}

namespace {

void check_members(const ActionSet& s, std::size_t mu_size) {
  for (int k : s.members) {
    if (k < 0 || static_cast<std::size_t>(k) >= mu_size)
      throw std::invalid_argument("action references arm index outside the mean vector");
  }
}

}  // namespace

double action_reward(RewardModel model, const ActionSet& s, std::span<const double> mu) {
  check_members(s, mu.size());
  switch (model) {
    case RewardModel::AnyWin: {
      double miss = 1.0;
      for (int k : s.members) miss *= 1.0 - mu[static_cast<std::size_t>(k)];
      return 1.0 - miss;
    }
    case RewardModel::SumUp: {
      double total = 0.0;
      for (int k : s.members) total += mu[static_cast<std::size_t>(k)];
      return total;
    }
    case RewardModel::AllIn: {
      double prod = 1.0;
      for (int k : s.members) prod *= mu[static_cast<std::size_t>(k)];
      return prod;
    }
  }
  return 0.0;
}

double relaxed_reward(RewardModel model, const FractionalSelection& z,
                      std::span<const double> mu) {
  if (z.values.size() != mu.size())
    throw std::invalid_argument("selection vector and mean vector sizes differ");
  switch (model) {
    case RewardModel::AnyWin:
      return 1.0 - kernels::complement_product(mu, z.values);
    case RewardModel::SumUp:
      return kernels::dot(mu, z.values);
    case RewardModel::AllIn: {
      double log_sum = 0.0;
      for (std::size_t k = 0; k < mu.size(); ++k) {
        const double zk = z.values[k];
        if (zk == 0.0) continue;
        if (mu[k] <= 0.0)
          throw std::domain_error("AllIn relaxed reward undefined for zero mean with z > 0");
        log_sum += zk * std::log(mu[k]);
      }
      return std::exp(log_sum);
    }
  }
  return 0.0;
}

bool is_feasible(const ActionSet& s, const ProblemInstance& inst) {
  for (int k : s.members) {
    if (k < 0 || k >= inst.num_arms) return false;
  }
  if (inst.model == RewardModel::AnyWin) return s.size() <= inst.max_active;
  return s.size() == inst.max_active;
}

}  // namespace c2mabv
