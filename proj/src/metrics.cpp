#include "c2mabv/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace c2mabv::metrics {

double violation(std::span<const double> per_round_costs, double rho, std::int64_t T) {
  double total = 0.0;
  for (std::int64_t t = 0; t < T; ++t) total += per_round_costs[static_cast<std::size_t>(t)];
  return std::max(total / static_cast<double>(T) - rho, 0.0);
}

double regret(std::span<const double> expected_rewards, double optimal_value, double alpha,
              std::int64_t T) {
  double total = 0.0;
  for (std::int64_t t = 0; t < T; ++t)
    total += alpha * optimal_value - expected_rewards[static_cast<std::size_t>(t)];
  return total;
}

double ratio(std::span<const double> expected_rewards,
             std::span<const double> running_violation, std::int64_t t) {
  double reward_sum = 0.0, violation_sum = 0.0;
  for (std::int64_t i = 0; i < t; ++i) {
    reward_sum += expected_rewards[static_cast<std::size_t>(i)];
    violation_sum += running_violation[static_cast<std::size_t>(i)];
  }
  if (violation_sum <= 0.0) return std::numeric_limits<double>::infinity();
  return reward_sum / violation_sum;
}

std::pair<double, double> theorem_bounds(int num_arms, int max_active, std::int64_t T, double L,
                                         double r_star, double o_star) {
  const double K = static_cast<double>(num_arms);
  const double N = static_cast<double>(max_active);
  const double Td = static_cast<double>(T);
  const double log_term =
      std::log(2.0 * std::numbers::pi * std::numbers::pi * K * Td / 3.0);
  const double regret_bound =
      (2.0 * L / o_star) * std::sqrt(2.0 * N * K * Td * log_term) + (K + 1.0) * r_star;
  const double tail = std::sqrt(N * K / Td);
  const double violation_bound = tail * (2.0 * std::sqrt(2.0 * log_term) + tail);
  return {regret_bound, violation_bound};
}

RunningMetrics::RunningMetrics(double rho, double alpha, double opt_structural,
                               double opt_budgeted)
    : rho_(rho), alpha_(alpha), opt_structural_(opt_structural), opt_budgeted_(opt_budgeted) {}

void RunningMetrics::observe(double exp_reward, double used_cost, double worst_cost) {
  t_ += 1;
  cum_exp_reward_ += exp_reward;
  cum_used_cost_ += used_cost;
  cum_worst_cost_ += worst_cost;
  cum_violation_sum_ += violation_used();
  cum_regret_structural_ += alpha_ * opt_structural_ - exp_reward;
  cum_regret_budgeted_ += alpha_ * opt_budgeted_ - exp_reward;
}

double RunningMetrics::violation_used() const {
  return std::max(cum_used_cost_ / static_cast<double>(t_) - rho_, 0.0);
}

double RunningMetrics::violation_worstcase() const {
  return std::max(cum_worst_cost_ / static_cast<double>(t_) - rho_, 0.0);
}

double RunningMetrics::ratio() const {
  if (cum_violation_sum_ <= 0.0) return std::numeric_limits<double>::infinity();
  return cum_exp_reward_ / cum_violation_sum_;
}

double RunningMetrics::mean_exp_reward() const {
  return t_ == 0 ? 0.0 : cum_exp_reward_ / static_cast<double>(t_);
}

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string join_ids(std::span<const int> ids) {
  if (ids.empty()) return "-";
  std::vector<int> sorted(ids.begin(), ids.end());
  std::sort(sorted.begin(), sorted.end());
  std::string out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0) out += '+';
    out += std::to_string(sorted[i]);
  }
  return out;
}

const char* const kCsvHeader =
    "t,policy,action,used,exp_reward,realized_reward,used_cost,worst_cost,"
    "cum_regret_structural,cum_regret_budgeted,violation,ratio";

std::string csv_row(const RoundRecord& r) {
  std::string out = std::to_string(r.t);
  out += ',';
  out += r.policy;
  out += ',';
  out += join_ids(r.action.members);
  out += ',';
  out += join_ids(r.used);
  for (double v : {r.exp_reward, r.realized_reward, r.used_cost, r.worst_cost,
                   r.cum_regret_structural, r.cum_regret_budgeted, r.violation, r.ratio}) {
    out += ',';
    out += format_float(v);
  }
  return out;
}

}  // namespace c2mabv::metrics
