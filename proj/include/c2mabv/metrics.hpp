#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "c2mabv/core.hpp"

namespace c2mabv::metrics {

// One CSV row. `violation` is the running Eq-style positive part over used
// costs; the worst-case flavor is tracked separately in the run summary.
struct RoundRecord {
  std::int64_t t = 0;
  std::string policy;
  ActionSet action;
  std::vector<int> used;
  double exp_reward = 0.0;
  double realized_reward = 0.0;
  double used_cost = 0.0;
  double worst_cost = 0.0;
  double cum_regret_structural = 0.0;
  double cum_regret_budgeted = 0.0;
  double violation = 0.0;
  double ratio = 0.0;
};

// [mean per-round cost - rho]^+ over the first T entries.
double violation(std::span<const double> per_round_costs, double rho, std::int64_t T);

// sum_t (alpha * optimal_value - expected_rewards[t]).
double regret(std::span<const double> expected_rewards, double optimal_value, double alpha,
              std::int64_t T);

// (mean expected reward) / (mean running violation) up to round t;
// +infinity when no violation has accrued.
double ratio(std::span<const double> expected_rewards,
             std::span<const double> running_violation, std::int64_t t);

// Theorem-shaped numeric bounds with delta = 1/T already substituted:
//   regret   <= (2L/o*) sqrt(2 N K T ln(2 pi^2 K T / 3)) + (K+1) r*
//   violation <= sqrt(NK/T) (2 sqrt(2 ln(2 pi^2 K T / 3)) + sqrt(NK/T))
std::pair<double, double> theorem_bounds(int num_arms, int max_active, std::int64_t T, double L,
                                         double r_star, double o_star);

// Incremental tracker used by the round loop; all fields derive from the
// per-round expected reward and the two cost totals.
class RunningMetrics {
 public:
  RunningMetrics(double rho, double alpha, double opt_structural, double opt_budgeted);

  void observe(double exp_reward, double used_cost, double worst_cost);

  std::int64_t rounds() const { return t_; }
  double violation_used() const;
  double violation_worstcase() const;
  double ratio() const;
  double cum_regret_structural() const { return cum_regret_structural_; }
  double cum_regret_budgeted() const { return cum_regret_budgeted_; }
  double mean_exp_reward() const;

 private:
  double rho_, alpha_, opt_structural_, opt_budgeted_;
  std::int64_t t_ = 0;
  double cum_exp_reward_ = 0.0;
  double cum_used_cost_ = 0.0;
  double cum_worst_cost_ = 0.0;
  double cum_violation_sum_ = 0.0;  // sum over rounds of the running used-violation
  double cum_regret_structural_ = 0.0;
  double cum_regret_budgeted_ = 0.0;
};

// Floats at 9 significant digits; +infinity prints as "inf".
std::string format_float(double v);
std::string join_ids(std::span<const int> ids);  // "+"-joined sorted ids, "-" when empty

extern const char* const kCsvHeader;
std::string csv_row(const RoundRecord& r);

}  // namespace c2mabv::metrics
