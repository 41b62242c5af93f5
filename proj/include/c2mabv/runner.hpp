#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "c2mabv/env.hpp"
#include "c2mabv/metrics.hpp"

namespace c2mabv::runner {

struct ExperimentConfig {
  // Instance source: either a preset name or explicit k/n/rho/model keys.
  std::string preset;
  int num_arms = 0;
  int max_active = 0;
  double budget = 0.0;
  std::string model;  // awc | suc | aic; empty keeps the preset's model
  std::string reward_dist;  // optional override: bernoulli | levels
  std::map<int, double> arm_mu_override;
  std::map<int, double> arm_cost_override;

  std::vector<std::string> policies{"c2mabv"};
  std::int64_t horizon = 10'000;  // T
  int replications = 10;
  std::uint64_t seed = 1;
  double alpha_mu = 0.3;
  double alpha_c = 0.01;
  double delta = 0.0;  // 0 -> 1/T
  int batch_size = 1;
  std::string cascade_order = "cost-lcb";
  int cg_steps = 100;
  bool observe_all_costs = false;
  bool warmup = false;
  bool log_messages = false;
  int jobs = 1;
  std::filesystem::path out_dir = "out";
};

// Line-oriented "key = value" file; '#' starts a comment; the `policy` key
// repeats. Unknown keys are an error.
ExperimentConfig load_config_file(const std::filesystem::path& path);
void apply_config_line(ExperimentConfig& cfg, const std::string& line);

env::SyntheticInstance build_world(const ExperimentConfig& cfg);
double effective_delta(const ExperimentConfig& cfg);

struct ReplicationResult {
  std::vector<metrics::RoundRecord> records;
  std::string message_log;  // line-delimited, empty unless enabled
  double violation_used = 0.0;
  double violation_worstcase = 0.0;
  double final_ratio = 0.0;
  double mean_exp_reward = 0.0;
  double cum_regret_structural = 0.0;
  double cum_regret_budgeted = 0.0;
  std::int64_t fallback_rounds = 0;
  double full_feedback_frac = 0.0;
  double o_star_hat = 0.05;
  double theorem_regret_bound = 0.0;
  double theorem_violation_bound = 0.0;
  double wall_seconds = 0.0;
};

// One policy, one replication, fully deterministic given (cfg, policy, rep).
ReplicationResult run_replication(const ExperimentConfig& cfg,
                                  const env::SyntheticInstance& world,
                                  const std::string& policy, int replication);

struct ExperimentFiles {
  std::vector<std::filesystem::path> per_replication_csv;
  std::vector<std::filesystem::path> message_logs;
  std::filesystem::path aggregate_csv;
  std::filesystem::path summary_csv;
  std::filesystem::path timings_csv;
};

// Writes <policy>_rep<r>.csv (+ .log), <policy>_aggregate.csv, and the
// shared summary.csv / timings.csv under cfg.out_dir. Everything except
// timings.csv is a pure function of (config, seed).
ExperimentFiles run_experiment(const ExperimentConfig& cfg);

// Reconstructs the round records of one replication from its message log;
// byte-identical CSV to the original run.
std::vector<metrics::RoundRecord> replay_log(const ExperimentConfig& cfg,
                                             const env::SyntheticInstance& world,
                                             const std::string& policy,
                                             const std::string& log_text);
std::filesystem::path replay_to_csv(const ExperimentConfig& cfg,
                                    const std::filesystem::path& log_path);

void write_records_csv(const std::filesystem::path& path,
                       const std::vector<metrics::RoundRecord>& records);

}  // namespace c2mabv::runner
