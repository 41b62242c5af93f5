#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

#include "c2mabv/oracle.hpp"
#include "c2mabv/relax.hpp"
#include "c2mabv/rng.hpp"

using namespace c2mabv;

namespace {

int fractional_count(const FractionalSelection& z) {
  int n = 0;
  for (double v : z.values) {
    if (v > 1e-9 && v < 1.0 - 1e-9) ++n;
  }
  return n;
}

double spend_of(const FractionalSelection& z, std::span<const double> c) {
  double s = 0.0;
  for (std::size_t k = 0; k < z.values.size(); ++k) s += z.values[k] * c[k];
  return s;
}

}  // namespace

TEST_CASE("lp kernel: slack budget returns the top-N integral pick") {
  const std::vector<double> w{0.2, 0.9, 0.5, 0.7};
  const std::vector<double> c{0.1, 0.1, 0.1, 0.1};
  const auto rep = relax::solve_two_row_lp(w, c, 2, 10.0, false);
  CHECK(rep.status == relax::SolveStatus::Optimal);
  CHECK(rep.z.values == std::vector<double>{0.0, 1.0, 0.0, 1.0});
  CHECK(rep.objective == doctest::Approx(1.6));
}

TEST_CASE("lp kernel: the three-arm equality example lands on (1,0,1)") {
  const std::vector<double> w{0.9, 0.8, 0.5};
  const std::vector<double> c{0.6, 0.5, 0.1};
  const auto rep = relax::solve_two_row_lp(w, c, 2, 0.7, true);
  CHECK(rep.status == relax::SolveStatus::Optimal);
  CHECK(rep.z.values[0] == doctest::Approx(1.0));
  CHECK(rep.z.values[1] == doctest::Approx(0.0));
  CHECK(rep.z.values[2] == doctest::Approx(1.0));
  CHECK(rep.objective == doctest::Approx(1.4).epsilon(1e-10));
}

TEST_CASE("lp kernel: N == K equality is forced or falls back") {
  const std::vector<double> w{0.5, 0.5};
  const std::vector<double> c{0.4, 0.4};
  const auto ok = relax::solve_two_row_lp(w, c, 2, 1.0, true);
  CHECK(ok.status == relax::SolveStatus::Optimal);
  CHECK(ok.z.values == std::vector<double>{1.0, 1.0});
  const auto fb = relax::solve_two_row_lp(w, c, 2, 0.5, true);
  CHECK(fb.status == relax::SolveStatus::InfeasibleFallback);
  CHECK(fb.z.values == std::vector<double>{1.0, 1.0});
}

TEST_CASE("lp kernel matches the vertex-enumeration oracle on random instances") {
  auto s = rng::make_stream(31, 0, rng::StreamKind::Env);
  int fallbacks = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int K = static_cast<int>(s.uniform_int(2, 8));
    const int N = static_cast<int>(s.uniform_int(1, K));
    const bool equality = s.bernoulli(0.5);
    std::vector<double> w(static_cast<std::size_t>(K)), c(static_cast<std::size_t>(K));
    for (double& x : w) x = s.uniform01();
    for (double& x : c) x = s.uniform01();
    const double rho = s.uniform_real(0.05, 0.6 * K);

    const auto rep = relax::solve_two_row_lp(w, c, N, rho, equality);
    const auto ref = testoracle::lp_vertex_enum(w, c, N, rho, equality);
    if (rep.status == relax::SolveStatus::InfeasibleFallback) {
      ++fallbacks;
      CHECK_FALSE(ref.feasible);
      continue;
    }
    REQUIRE(ref.feasible);
    CHECK(std::abs(rep.objective - ref.objective) <= 1e-8);
    CHECK(fractional_count(rep.z) <= 2);
    CHECK(spend_of(rep.z, c) <= rho + 1e-9);
    double mass = 0.0;
    for (double v : rep.z.values) {
      CHECK(v >= -1e-12);
      CHECK(v <= 1.0 + 1e-12);
      mass += v;
    }
    if (equality) CHECK(mass == doctest::Approx(static_cast<double>(N)).epsilon(1e-9));
    else CHECK(mass <= N + 1e-9);
  }
  CHECK(fallbacks < 150);  // generator keeps most instances feasible
}

TEST_CASE("solve_suc: symmetric means meet the budget with objective N*mu") {
  relax::RelaxedProblem p;
  p.mu_bar = {0.4, 0.4, 0.4, 0.4};
  p.c_lower = {0.3, 0.2, 0.5, 0.1};
  p.max_active = 2;
  p.budget = 0.4;
  p.model = RewardModel::SumUp;
  const auto rep = relax::solve_suc(p);
  CHECK(rep.status == relax::SolveStatus::Optimal);
  CHECK(rep.objective == doctest::Approx(0.8).epsilon(1e-9));
  CHECK(spend_of(rep.z, p.c_lower) <= 0.4 + 1e-9);
}

TEST_CASE("solve_suc falls back to the N cheapest arms when the budget is hopeless") {
  relax::RelaxedProblem p;
  p.mu_bar = {0.9, 0.8, 0.7};
  p.c_lower = {0.5, 0.4, 0.3};
  p.max_active = 2;
  p.budget = 0.2;
  p.model = RewardModel::SumUp;
  const auto rep = relax::solve_suc(p);
  CHECK(rep.status == relax::SolveStatus::InfeasibleFallback);
  CHECK(rep.z.values == std::vector<double>{0.0, 1.0, 1.0});
}

TEST_CASE("solve_aic log-transforms and reports the product objective") {
  relax::RelaxedProblem p;
  p.mu_bar = {1.0, 1.0, 1.0};
  p.c_lower = {0.1, 0.1, 0.1};
  p.max_active = 2;
  p.budget = 1.0;
  p.model = RewardModel::AllIn;
  CHECK(relax::solve_aic(p).objective == doctest::Approx(1.0));

  p.mu_bar = {0.9, 0.5, 0.4};
  p.c_lower = {0.2, 0.2, 0.2};
  const auto rep = relax::solve_aic(p);
  CHECK(rep.z.values[0] == doctest::Approx(1.0));
  CHECK(rep.z.values[1] == doctest::Approx(1.0));
  CHECK(rep.z.values[2] == doctest::Approx(0.0));
  CHECK(rep.objective == doctest::Approx(0.45).epsilon(1e-9));
}

TEST_CASE("solve_aic: a clamped zero mean never displaces a live arm") {
  relax::RelaxedProblem p;
  p.mu_bar = {0.0, 0.5, 0.4};
  p.c_lower = {0.01, 0.2, 0.2};
  p.max_active = 2;
  p.budget = 1.0;
  p.model = RewardModel::AllIn;
  const auto rep = relax::solve_aic(p);
  CHECK(rep.z.values[0] == doctest::Approx(0.0));
}

TEST_CASE("solve_awc: single cheap arm saturates") {
  relax::RelaxedProblem p;
  p.mu_bar = {0.8};
  p.c_lower = {0.1};
  p.max_active = 1;
  p.budget = 1.0;
  p.model = RewardModel::AnyWin;
  const auto rep = relax::solve_awc(p, 100);
  CHECK(rep.z.values[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.objective == doctest::Approx(0.8).epsilon(1e-9));
  CHECK(rep.status == relax::SolveStatus::Approx);
}

TEST_CASE("solve_awc: zero means give a zero objective") {
  relax::RelaxedProblem p;
  p.mu_bar = {0.0, 0.0, 0.0};
  p.c_lower = {0.1, 0.1, 0.1};
  p.max_active = 2;
  p.budget = 0.3;
  p.model = RewardModel::AnyWin;
  CHECK(relax::solve_awc(p, 50).objective == doctest::Approx(0.0));
}

TEST_CASE("solve_awc clears the (1-1/e) bar against the budgeted integer optimum") {
  auto s = rng::make_stream(33, 0, rng::StreamKind::Env);
  const double alpha = 1.0 - 1.0 / std::exp(1.0);
  for (int trial = 0; trial < 30; ++trial) {
    relax::RelaxedProblem p;
    p.max_active = 3;
    p.budget = s.uniform_real(0.3, 1.2);
    p.model = RewardModel::AnyWin;
    p.mu_bar.resize(6);
    p.c_lower.resize(6);
    for (double& x : p.mu_bar) x = s.uniform01();
    for (double& x : p.c_lower) x = s.uniform01();
    std::vector<double> trace;
    const auto rep = relax::solve_awc(p, 100, &trace);
    const auto opt =
        oracle::best_budgeted_action(RewardModel::AnyWin, p.mu_bar, p.c_lower, 3, p.budget);
    CHECK(rep.objective >= alpha * opt.value - 1e-6);
    for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i] >= trace[i - 1] - 1e-12);
    CHECK(spend_of(rep.z, p.c_lower) <= p.budget + 1e-9);
  }
}
