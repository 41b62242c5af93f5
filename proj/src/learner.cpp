#include "c2mabv/learner.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "c2mabv/errors.hpp"
#include "c2mabv/kernels.hpp"

namespace c2mabv::learner {

EstimatorState EstimatorState::init(int num_arms, double alpha_mu, double alpha_c,
                                    double delta) {
  if (alpha_mu <= 0.0 || alpha_c <= 0.0) throw ConfigError("alpha_mu and alpha_c must be > 0");
  if (delta <= 0.0 || delta > 1.0) throw ConfigError("delta must lie in (0, 1]");
  EstimatorState s;
  s.mu_hat.assign(static_cast<std::size_t>(num_arms), 0.0);
  s.c_hat.assign(static_cast<std::size_t>(num_arms), 0.0);
  s.n_mu.assign(static_cast<std::size_t>(num_arms), 0);
  s.n_c.assign(static_cast<std::size_t>(num_arms), 0);
  s.alpha_mu = alpha_mu;
  s.alpha_c = alpha_c;
  s.delta = delta;
  s.round = 1;
  return s;
}

double confidence_radius(std::int64_t t, int num_arms, double delta, std::int64_t count) {
  if (count <= 0) return std::numeric_limits<double>::infinity();
  const double td = static_cast<double>(t);
  const double numerator =
      std::log(2.0 * std::numbers::pi * std::numbers::pi * static_cast<double>(num_arms) * td *
               td * td / (3.0 * delta));
  return std::sqrt(numerator / (2.0 * static_cast<double>(count)));
}

double reward_ucb(const EstimatorState& s, int k) {
  const double r = confidence_radius(s.round, s.num_arms(), s.delta,
                                     s.n_mu[static_cast<std::size_t>(k)]);
  return std::min(s.mu_hat[static_cast<std::size_t>(k)] + s.alpha_mu * r, 1.0);
}

double cost_lcb(const EstimatorState& s, int k) {
  const double r = confidence_radius(s.round, s.num_arms(), s.delta,
                                     s.n_c[static_cast<std::size_t>(k)]);
  return std::max(s.c_hat[static_cast<std::size_t>(k)] - s.alpha_c * r, 0.0);
}

namespace {

std::vector<double> radii(const EstimatorState& s, const std::vector<std::int64_t>& counts) {
  std::vector<double> r(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k)
    r[k] = confidence_radius(s.round, s.num_arms(), s.delta, counts[k]);
  return r;
}

}  // namespace

std::vector<double> reward_ucb_all(const EstimatorState& s) {
  const std::vector<double> r = radii(s, s.n_mu);
  std::vector<double> out(r.size());
  kernels::add_scaled_clamp_hi(s.mu_hat, r, s.alpha_mu, 1.0, out);
  return out;
}

std::vector<double> cost_lcb_all(const EstimatorState& s) {
  const std::vector<double> r = radii(s, s.n_c);
  std::vector<double> out(r.size());
  kernels::sub_scaled_clamp_lo(s.c_hat, r, s.alpha_c, 0.0, out);
  return out;
}

void update(EstimatorState& s, const env::RoundOutcome& outcome) {
  for (std::size_t i = 0; i < outcome.used.size(); ++i) {
    const auto k = static_cast<std::size_t>(outcome.used[i]);
    const double n_mu = static_cast<double>(s.n_mu[k]);
    s.mu_hat[k] = (n_mu * s.mu_hat[k] + outcome.rewards[i]) / (n_mu + 1.0);
    s.n_mu[k] += 1;
    const double n_c = static_cast<double>(s.n_c[k]);
    s.c_hat[k] = (n_c * s.c_hat[k] + outcome.costs[i]) / (n_c + 1.0);
    s.n_c[k] += 1;
  }
  for (std::size_t i = 0; i < outcome.surcharge_arms.size(); ++i) {
    const auto k = static_cast<std::size_t>(outcome.surcharge_arms[i]);
    const double n_c = static_cast<double>(s.n_c[k]);
    s.c_hat[k] = (n_c * s.c_hat[k] + outcome.surcharge_costs[i]) / (n_c + 1.0);
    s.n_c[k] += 1;
  }
  s.round += 1;
}

std::optional<std::vector<env::RoundOutcome>> FeedbackBatch::push(env::RoundOutcome outcome) {
  buffered.push_back(std::move(outcome));
  if (static_cast<int>(buffered.size()) < capacity) return std::nullopt;
  std::vector<env::RoundOutcome> flushed;
  flushed.swap(buffered);
  return flushed;
}

std::string dump(const EstimatorState& s) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "c2mabv-estimator v1\nt %lld\nparams %.17g %.17g %.17g\nK %d\n",
                static_cast<long long>(s.round), s.alpha_mu, s.alpha_c, s.delta, s.num_arms());
  out += line;
  for (int k = 0; k < s.num_arms(); ++k) {
    const auto i = static_cast<std::size_t>(k);
    std::snprintf(line, sizeof line, "%d %.17g %.17g %lld %lld\n", k, s.mu_hat[i], s.c_hat[i],
                  static_cast<long long>(s.n_mu[i]), static_cast<long long>(s.n_c[i]));
    out += line;
  }
  return out;
}

EstimatorState restore(const std::string& text) {
  std::istringstream in(text);
  std::string magic, version, tag;
  in >> magic >> version;
  if (magic != "c2mabv-estimator" || version != "v1")
    throw ConfigError("unrecognized estimator checkpoint header");
  long long t = 0;
  int num_arms = 0;
  double alpha_mu = 0, alpha_c = 0, delta = 0;
  in >> tag >> t >> tag >> alpha_mu >> alpha_c >> delta >> tag >> num_arms;
  if (!in || num_arms < 1) throw ConfigError("malformed estimator checkpoint");
  EstimatorState s = EstimatorState::init(num_arms, alpha_mu, alpha_c, delta);
  s.round = t;
  for (int k = 0; k < num_arms; ++k) {
    int idx = -1;
    long long nm = 0, nc = 0;
    const auto i = static_cast<std::size_t>(k);
    in >> idx >> s.mu_hat[i] >> s.c_hat[i] >> nm >> nc;
    if (!in || idx != k) throw ConfigError("malformed estimator checkpoint row");
    s.n_mu[i] = nm;
    s.n_c[i] = nc;
  }
  return s;
}

}  // namespace c2mabv::learner
