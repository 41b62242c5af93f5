#include "c2mabv/relax.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "c2mabv/kernels.hpp"

namespace c2mabv::relax {

namespace {

constexpr double kScoreTol = 1e-12;
constexpr double kBudgetTol = 1e-9;

struct Workspace {
  std::vector<double> score;
  std::vector<int> order;
};

// Sorted candidate selection at multiplier lambda. prefer_cheap picks the
// cheaper arm inside score ties; the two preferences bracket the spend range
// that Lagrangian-optimal selections can realize at this multiplier.
double spend_at(std::span<const double> w, std::span<const double> c, int max_active,
                bool equality, double lambda, bool prefer_cheap, Workspace& ws) {
  const int K = static_cast<int>(w.size());
  ws.score.resize(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) ws.score[static_cast<std::size_t>(k)] = w[k] - lambda * c[k];
  ws.order.resize(static_cast<std::size_t>(K));
  std::iota(ws.order.begin(), ws.order.end(), 0);
  std::sort(ws.order.begin(), ws.order.end(), [&](int a, int b) {
    const double sa = ws.score[static_cast<std::size_t>(a)];
    const double sb = ws.score[static_cast<std::size_t>(b)];
    if (sa != sb) return sa > sb;
    if (c[a] != c[b]) return prefer_cheap ? c[a] < c[b] : c[a] > c[b];
    return a < b;
  });
  double spend = 0.0;
  int taken = 0;
  for (int idx : ws.order) {
    if (taken == max_active) break;
    const double s = ws.score[static_cast<std::size_t>(idx)];
    if (!equality) {
      // cheap-preferred drops the score-zero group, expensive-preferred keeps it
      if (prefer_cheap ? (s <= kScoreTol) : (s < -kScoreTol)) break;
    }
    spend += c[idx];
    ++taken;
  }
  return spend;
}

SolveReport make_report(std::vector<double> z, std::span<const double> w, SolveStatus status,
                        int iterations) {
  SolveReport rep;
  rep.objective = kernels::dot(w, z);
  rep.z = FractionalSelection(std::move(z));
  rep.status = status;
  rep.iterations = iterations;
  return rep;
}

}  // namespace

std::string_view status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Approx: return "approx";
    case SolveStatus::InfeasibleFallback: return "infeasible_fallback";
  }
  return "?";
}

SolveReport solve_two_row_lp(std::span<const double> w, std::span<const double> c, int max_active,
                             double budget, bool equality) {
  const int K = static_cast<int>(w.size());
  if (static_cast<int>(c.size()) != K) throw std::invalid_argument("w and c sizes differ");
  if (max_active < 0 || max_active > K) throw std::invalid_argument("max_active outside [0, K]");
  for (int k = 0; k < K; ++k) {
    if (c[k] < 0.0) throw std::invalid_argument("negative cost coefficient");
  }

  std::vector<int> by_cost(static_cast<std::size_t>(K));
  std::iota(by_cost.begin(), by_cost.end(), 0);
  std::sort(by_cost.begin(), by_cost.end(),
            [&](int a, int b) { return c[a] != c[b] ? c[a] < c[b] : a < b; });

  if (equality) {
    double cheapest = 0.0;
    for (int i = 0; i < max_active; ++i) cheapest += c[by_cost[static_cast<std::size_t>(i)]];
    if (cheapest > budget + kBudgetTol) {
      std::vector<double> z(static_cast<std::size_t>(K), 0.0);
      for (int i = 0; i < max_active; ++i) z[static_cast<std::size_t>(by_cost[static_cast<std::size_t>(i)])] = 1.0;
      return make_report(std::move(z), w, SolveStatus::InfeasibleFallback, 0);
    }
  }

  Workspace ws;
  int evals = 0;

  // Budget slack at lambda = 0: the reward-greedy pick already fits.
  ++evals;
  if (spend_at(w, c, max_active, equality, 0.0, /*prefer_cheap=*/true, ws) <= budget + kBudgetTol) {
    std::vector<double> z(static_cast<std::size_t>(K), 0.0);
    int taken = 0;
    for (int idx : ws.order) {
      if (taken == max_active) break;
      if (!equality && ws.score[static_cast<std::size_t>(idx)] <= kScoreTol) break;
      z[static_cast<std::size_t>(idx)] = 1.0;
      ++taken;
    }
    return make_report(std::move(z), w, SolveStatus::Optimal, evals);
  }

  // Multiplier candidates: pairwise score crossings, plus single-arm
  // zero crossings when the cardinality row is an inequality.
  std::vector<double> cand;
  cand.reserve(static_cast<std::size_t>(K) * static_cast<std::size_t>(K) / 2 + 4);
  for (int i = 0; i < K; ++i) {
    for (int j = i + 1; j < K; ++j) {
      if (c[i] == c[j]) continue;
      const double lambda = (w[i] - w[j]) / (c[i] - c[j]);
      if (lambda > 0.0) cand.push_back(lambda);
    }
    if (!equality && c[i] > 0.0 && w[i] > 0.0) cand.push_back(w[i] / c[i]);
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  // Cheap-preferred spend is non-increasing in lambda; find the first
  // candidate whose minimal spend fits the budget.
  int lo = 0, hi = static_cast<int>(cand.size()) - 1, first_fit = hi;
  while (lo <= hi) {
    const int mid = (lo + hi) / 2;
    ++evals;
    if (spend_at(w, c, max_active, equality, cand[static_cast<std::size_t>(mid)],
                 /*prefer_cheap=*/true, ws) <= budget + kBudgetTol) {
      first_fit = mid;
      hi = mid - 1;
    } else {
      lo = mid + 1;
    }
  }
  const double lambda = cand.at(static_cast<std::size_t>(first_fit));

  // Build the vertex at lambda: arms strictly above the boundary score are
  // fixed to 1, the tied group is mixed to hit the budget exactly.
  ws.score.resize(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) ws.score[static_cast<std::size_t>(k)] = w[k] - lambda * c[k];
  std::vector<double> sorted_scores = ws.score;
  std::sort(sorted_scores.begin(), sorted_scores.end(), std::greater<>());

  double boundary;
  bool exact_mass;
  if (equality) {
    boundary = sorted_scores[static_cast<std::size_t>(max_active - 1)];
    exact_mass = true;
  } else {
    const auto positives =
        std::count_if(sorted_scores.begin(), sorted_scores.end(),
                      [](double s) { return s > kScoreTol; });
    if (positives >= max_active) {
      boundary = sorted_scores[static_cast<std::size_t>(max_active - 1)];
      exact_mass = true;
    } else {
      boundary = 0.0;  // score-zero group absorbs budget at efficiency lambda
      exact_mass = false;
    }
  }

  std::vector<double> z(static_cast<std::size_t>(K), 0.0);
  std::vector<int> group;
  double spend = 0.0;
  int fixed = 0;
  for (int k = 0; k < K; ++k) {
    const double s = ws.score[static_cast<std::size_t>(k)];
    if (s > boundary + kScoreTol) {
      z[static_cast<std::size_t>(k)] = 1.0;
      spend += c[k];
      ++fixed;
    } else if (std::abs(s - boundary) <= kScoreTol) {
      group.push_back(k);
    }
  }

  if (exact_mass) {
    // Fill the tied slots most-expensive-first, then swap toward cheaper tied
    // arms (whole units, then one final partial swap) until spend == budget.
    const int slots = max_active - fixed;
    std::vector<int> in_group(group.begin(), group.end());
    std::sort(in_group.begin(), in_group.end(),
              [&](int a, int b) { return c[a] != c[b] ? c[a] > c[b] : a < b; });
    std::vector<int> chosen(in_group.begin(), in_group.begin() + slots);
    std::vector<int> rest(in_group.begin() + slots, in_group.end());
    std::reverse(rest.begin(), rest.end());  // cheapest first
    for (int k : chosen) {
      z[static_cast<std::size_t>(k)] = 1.0;
      spend += c[k];
    }
    std::size_t i = 0, j = 0;
    while (spend > budget + kBudgetTol && i < chosen.size() && j < rest.size()) {
      const int expensive = chosen[i];
      const int cheap = rest[j];
      const double gain = c[expensive] - c[cheap];
      if (gain <= kBudgetTol) break;
      if (spend - gain >= budget - kBudgetTol) {
        z[static_cast<std::size_t>(expensive)] = 0.0;
        z[static_cast<std::size_t>(cheap)] = 1.0;
        spend -= gain;
        ++i;
        ++j;
      } else {
        const double theta = (spend - budget) / gain;
        z[static_cast<std::size_t>(expensive)] = 1.0 - theta;
        z[static_cast<std::size_t>(cheap)] = theta;
        spend = budget;
      }
    }
  } else {
    // Boundary score is zero: spend the remaining budget on the tied group,
    // index order, at most one fractional coordinate.
    double remaining = budget - spend;
    for (int k : group) {
      if (remaining <= kBudgetTol) break;
      if (c[k] <= 0.0) continue;
      const double take = std::min(1.0, remaining / c[k]);
      z[static_cast<std::size_t>(k)] = take;
      remaining -= take * c[k];
    }
  }

  return make_report(std::move(z), w, SolveStatus::Optimal, evals);
}

SolveReport solve_suc(const RelaxedProblem& p) {
  return solve_two_row_lp(p.mu_bar, p.c_lower, p.max_active, p.budget, /*equality=*/true);
}

SolveReport solve_aic(const RelaxedProblem& p) {
  std::vector<double> log_mu(p.mu_bar.size());
  for (std::size_t k = 0; k < p.mu_bar.size(); ++k)
    log_mu[k] = std::log(std::max(p.mu_bar[k], 1e-9));
  SolveReport rep = solve_two_row_lp(log_mu, p.c_lower, p.max_active, p.budget, /*equality=*/true);
  rep.objective = std::exp(rep.objective);
  return rep;
}

SolveReport solve_awc(const RelaxedProblem& p, int steps, std::vector<double>* objective_trace) {
  if (steps < 1) throw std::invalid_argument("continuous greedy needs steps >= 1");
  const std::size_t K = p.mu_bar.size();
  std::vector<double> z(K, 0.0);
  std::vector<double> grad(K), prefix(K + 1), suffix(K + 1);
  const double step = 1.0 / static_cast<double>(steps);
  if (objective_trace) objective_trace->clear();

  for (int s = 0; s < steps; ++s) {
    prefix[0] = 1.0;
    for (std::size_t k = 0; k < K; ++k)
      prefix[k + 1] = prefix[k] * (1.0 - p.mu_bar[k] * z[k]);
    suffix[K] = 1.0;
    for (std::size_t k = K; k-- > 0;)
      suffix[k] = suffix[k + 1] * (1.0 - p.mu_bar[k] * z[k]);
    for (std::size_t k = 0; k < K; ++k) grad[k] = p.mu_bar[k] * prefix[k] * suffix[k + 1];

    const SolveReport dir =
        solve_two_row_lp(grad, p.c_lower, p.max_active, p.budget, /*equality=*/false);
    for (std::size_t k = 0; k < K; ++k)
      z[k] = std::min(1.0, z[k] + step * dir.z.values[k]);
    if (objective_trace)
      objective_trace->push_back(1.0 - kernels::complement_product(p.mu_bar, z));
  }

  SolveReport rep;
  rep.objective = 1.0 - kernels::complement_product(p.mu_bar, z);
  rep.z = FractionalSelection(std::move(z));
  rep.status = SolveStatus::Approx;
  rep.iterations = steps;
  return rep;
}

SolveReport solve(const RelaxedProblem& p, int awc_steps) {
  switch (p.model) {
    case RewardModel::AnyWin: return solve_awc(p, awc_steps);
    case RewardModel::SumUp: return solve_suc(p);
    case RewardModel::AllIn: return solve_aic(p);
  }
  throw std::logic_error("unreachable");
}

}  // namespace c2mabv::relax
