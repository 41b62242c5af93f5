#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "c2mabv/env.hpp"

namespace c2mabv::learner {

// Local-server knowledge: empirical means and observation counts, plus the
// confidence-bound parameters. Counts start at zero; the round counter
// starts at 1.
struct EstimatorState {
  std::vector<double> mu_hat;
  std::vector<double> c_hat;
  std::vector<std::int64_t> n_mu;
  std::vector<std::int64_t> n_c;
  double alpha_mu = 0.3;
  double alpha_c = 0.01;
  double delta = 0.01;
  std::int64_t round = 1;

  int num_arms() const { return static_cast<int>(mu_hat.size()); }
  static EstimatorState init(int num_arms, double alpha_mu, double alpha_c, double delta);
};

// sqrt(ln(2 pi^2 K t^3 / (3 delta)) / (2 count)); +infinity when count == 0.
double confidence_radius(std::int64_t t, int num_arms, double delta, std::int64_t count);

double reward_ucb(const EstimatorState& s, int k);  // min(mu_hat + alpha_mu * radius, 1)
double cost_lcb(const EstimatorState& s, int k);    // max(c_hat - alpha_c * radius, 0)
std::vector<double> reward_ucb_all(const EstimatorState& s);
std::vector<double> cost_lcb_all(const EstimatorState& s);

// Running-mean update over the used arms (plus surcharge costs when the
// environment exposed them); advances the round counter by one.
void update(EstimatorState& s, const env::RoundOutcome& outcome);

struct FeedbackBatch {
  std::vector<env::RoundOutcome> buffered;
  int capacity = 1;

  explicit FeedbackBatch(int cap) : capacity(cap) {}
  // Returns the full buffer (clearing it) exactly when it reaches capacity.
  std::optional<std::vector<env::RoundOutcome>> push(env::RoundOutcome outcome);
};

// Checkpoint text format, one arm per line: "k mu_hat c_hat n_mu n_c" after
// a header carrying t and the CB parameters.
std::string dump(const EstimatorState& s);
EstimatorState restore(const std::string& text);

}  // namespace c2mabv::learner
