#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "c2mabv/core.hpp"

namespace c2mabv::relax {

struct RelaxedProblem {
  std::vector<double> mu_bar;   // optimistic reward predictions, in [0,1]
  std::vector<double> c_lower;  // pessimistic cost estimates, >= 0
  int max_active = 0;
  double budget = 0.0;
  RewardModel model = RewardModel::AnyWin;
};

enum class SolveStatus { Optimal, Approx, InfeasibleFallback };
std::string_view status_name(SolveStatus s);

struct SolveReport {
  FractionalSelection z;
  double objective = 0.0;
  SolveStatus status = SolveStatus::Optimal;
  int iterations = 0;
};

// Exact maximizer of w.z subject to
//   sum z <= N (or == N when equality), c.z <= rho, 0 <= z <= 1.
// Parametric scan over the budget multiplier; the returned vertex has at
// most two fractional coordinates. When the equality constraint cannot be
// met within the budget (the N cheapest arms already overspend), returns the
// indicator of the N cheapest arms with status InfeasibleFallback.
SolveReport solve_two_row_lp(std::span<const double> w, std::span<const double> c, int max_active,
                             double budget, bool equality);

SolveReport solve_suc(const RelaxedProblem& p);
SolveReport solve_aic(const RelaxedProblem& p);

// Continuous greedy on the closed-form multilinear extension
// 1 - prod(1 - mu_k z_k); each step moves 1/steps along the LP-optimal
// direction for the current gradient. objective_trace, when given, records
// the objective after every step.
SolveReport solve_awc(const RelaxedProblem& p, int steps,
                      std::vector<double>* objective_trace = nullptr);

SolveReport solve(const RelaxedProblem& p, int awc_steps);

}  // namespace c2mabv::relax
