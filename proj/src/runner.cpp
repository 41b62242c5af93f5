#include "c2mabv/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "c2mabv/baselines.hpp"
#include "c2mabv/errors.hpp"
#include "c2mabv/learner.hpp"
#include "c2mabv/oracle.hpp"

namespace c2mabv::runner {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw ConfigError("expected a boolean, got '" + v + "'");
}

ActionSet parse_fixed_ids(const std::string& policy) {
  std::vector<int> ids;
  std::string token;
  std::istringstream in(policy.substr(std::string("fixed:").size()));
  while (std::getline(in, token, '+')) {
    if (!token.empty()) ids.push_back(std::stoi(token));
  }
  if (ids.empty()) throw ConfigError("fixed policy needs ids, e.g. fixed:0+2+5");
  return ActionSet::from_unsorted(std::move(ids));
}

std::string sanitize_for_path(std::string name) {
  for (char& c : name) {
    if (c == ':' || c == '/' || c == '\\') c = '-';
  }
  return name;
}

double realized_reward_of(RewardModel model, const env::RoundOutcome& o) {
  switch (model) {
    case RewardModel::AnyWin: {
      double best = 0.0;
      for (double r : o.rewards) best = std::max(best, r);
      return best;
    }
    case RewardModel::SumUp: {
      double total = 0.0;
      for (double r : o.rewards) total += r;
      return total;
    }
    case RewardModel::AllIn: {
      double prod = 1.0;
      for (double r : o.rewards) prod *= r;
      return o.rewards.empty() ? 0.0 : prod;
    }
  }
  return 0.0;
}

struct MessageLog {
  bool enabled = false;
  std::string text;

  void z_tilde(std::int64_t t, const relax::SolveReport& rep) {
    if (!enabled) return;
    ordered_json j;
    j["t"] = t;
    j["dir"] = "local→cloud";
    j["kind"] = "z_tilde";
    j["values"] = rep.z.values;
    j["status"] = std::string(relax::status_name(rep.status));
    j["iterations"] = rep.iterations;
    text += j.dump();
    text += '\n';
  }
  void action(std::int64_t t, const ActionSet& s) {
    if (!enabled) return;
    ordered_json j;
    j["t"] = t;
    j["dir"] = "cloud→local";
    j["kind"] = "action";
    j["members"] = s.members;
    text += j.dump();
    text += '\n';
  }
  void feedback(std::int64_t t, const env::RoundOutcome& o) {
    if (!enabled) return;
    ordered_json j;
    j["t"] = t;
    j["dir"] = "user→local";
    j["kind"] = "feedback";
    j["used"] = o.used;
    j["rewards"] = o.rewards;
    j["costs"] = o.costs;
    j["worst_cost"] = o.total_worstcase_cost;
    text += j.dump();
    text += '\n';
  }
};

struct Oracles {
  oracle::BestAction structural;
  oracle::BestAction budgeted;
  double r_star = 0.0;
};

Oracles compute_oracles(const env::SyntheticInstance& world) {
  Oracles o;
  const std::vector<double> mu = world.true_means();
  const std::vector<double> costs = world.expected_costs();
  o.structural = oracle::best_action(world.inst.model, mu, world.inst.max_active);
  o.budgeted = oracle::best_budgeted_action(world.inst.model, mu, costs, world.inst.max_active,
                                            world.inst.budget);
  o.r_star = o.structural.value;
  return o;
}

}  // namespace

ExperimentConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path.string());
  ExperimentConfig cfg;
  cfg.policies.clear();
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    apply_config_line(cfg, line);
  }
  if (cfg.policies.empty()) cfg.policies = {"c2mabv"};
  return cfg;
}

void apply_config_line(ExperimentConfig& cfg, const std::string& line) {
  const auto eq = line.find('=');
  if (eq == std::string::npos) throw ConfigError("config line is not key=value: '" + line + "'");
  const std::string key = trim(line.substr(0, eq));
  const std::string value = trim(line.substr(eq + 1));
  try {
    if (key == "preset") cfg.preset = value;
    else if (key == "k") cfg.num_arms = std::stoi(value);
    else if (key == "n") cfg.max_active = std::stoi(value);
    else if (key == "rho") cfg.budget = std::stod(value);
    else if (key == "model") cfg.model = value;
    else if (key == "reward_dist") cfg.reward_dist = value;
    else if (key == "policy") cfg.policies.push_back(value);
    else if (key == "t" || key == "horizon") cfg.horizon = std::stoll(value);
    else if (key == "replications") cfg.replications = std::stoi(value);
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "alpha_mu") cfg.alpha_mu = std::stod(value);
    else if (key == "alpha_c") cfg.alpha_c = std::stod(value);
    else if (key == "delta") cfg.delta = std::stod(value);
    else if (key == "batch_size") cfg.batch_size = std::stoi(value);
    else if (key == "cascade_order") cfg.cascade_order = value;
    else if (key == "cg_steps") cfg.cg_steps = std::stoi(value);
    else if (key == "observe_all_costs") cfg.observe_all_costs = parse_bool(value);
    else if (key == "warmup") cfg.warmup = parse_bool(value);
    else if (key == "log_messages") cfg.log_messages = parse_bool(value);
    else if (key == "jobs") cfg.jobs = std::stoi(value);
    else if (key == "out_dir") cfg.out_dir = value;
    else if (key.rfind("arm.", 0) == 0) {
      const auto second_dot = key.find('.', 4);
      if (second_dot == std::string::npos) throw ConfigError("bad arm override key: " + key);
      const int idx = std::stoi(key.substr(4, second_dot - 4));
      const std::string field = key.substr(second_dot + 1);
      if (field == "mu") cfg.arm_mu_override[idx] = std::stod(value);
      else if (field == "cost") cfg.arm_cost_override[idx] = std::stod(value);
      else throw ConfigError("bad arm override field: " + key);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const std::invalid_argument&) {
    throw ConfigError("cannot parse value for key '" + key + "': '" + value + "'");
  } catch (const std::out_of_range&) {
    throw ConfigError("value out of range for key '" + key + "': '" + value + "'");
  }
}

double effective_delta(const ExperimentConfig& cfg) {
  if (cfg.delta > 0.0) return cfg.delta;
  return 1.0 / static_cast<double>(cfg.horizon);
}

env::SyntheticInstance build_world(const ExperimentConfig& cfg) {
  env::SyntheticInstance world;
  if (!cfg.preset.empty()) {
    if (cfg.num_arms != 0)
      throw ConfigError("'k' cannot be overridden when a preset is selected");
    world = env::make_preset(cfg.preset, cfg.seed);
    if (cfg.max_active != 0) world.inst.max_active = cfg.max_active;
    if (cfg.budget != 0.0) world.inst.budget = cfg.budget;
    if (!cfg.model.empty()) world.inst.model = parse_reward_model(cfg.model);
  } else {
    if (cfg.num_arms <= 0 || cfg.max_active <= 0 || cfg.budget <= 0.0)
      throw ConfigError("config needs either a preset or k, n and rho");
    rng::Stream stream = rng::make_stream(cfg.seed, 0, rng::StreamKind::Instance);
    world = env::make_synthetic_instance(cfg.num_arms, cfg.max_active, cfg.budget,
                                         parse_reward_model(cfg.model.empty() ? "awc" : cfg.model),
                                         stream);
  }
  world.inst =
      ProblemInstance::make(static_cast<int>(world.arms.size()), world.inst.max_active,
                            world.inst.budget, world.inst.model);
  if (!cfg.reward_dist.empty()) world.reward_dist = env::parse_reward_dist(cfg.reward_dist);

  for (const auto& [idx, mu] : cfg.arm_mu_override) {
    if (idx < 0 || idx >= static_cast<int>(world.arms.size()))
      throw ConfigError("arm override index out of range");
    if (mu < 0.0 || mu > 1.0) throw ConfigError("arm mu override outside [0,1]");
    world.arms[static_cast<std::size_t>(idx)].true_mu = mu;
  }
  for (const auto& [idx, cost] : cfg.arm_cost_override) {
    if (idx < 0 || idx >= static_cast<int>(world.arms.size()))
      throw ConfigError("arm override index out of range");
    if (cost <= 0.0 || cost > 1.0) throw ConfigError("arm cost override outside (0,1]");
    env::ArmSpec& arm = world.arms[static_cast<std::size_t>(idx)];
    const double mean_tokens =
        0.5 * (arm.input_len_lo + arm.input_len_hi) + arm.output_len_mean;
    arm.cost_per_token = cost / (mean_tokens * arm.cost_scale);
  }
  if (world.reward_dist == env::RewardDist::DiscreteLevels) {
    for (const auto& arm : world.arms) env::discrete_level_probs(arm.true_mu);  // validates
  }
  return world;
}

ReplicationResult run_replication(const ExperimentConfig& cfg,
                                  const env::SyntheticInstance& world,
                                  const std::string& policy, int replication) {
  const ProblemInstance& inst = world.inst;
  const int K = inst.num_arms;
  const int N = inst.max_active;
  if (cfg.horizon < 1 || cfg.batch_size < 1 || cfg.replications < 1)
    throw ConfigError("horizon, batch_size and replications must be >= 1");

  const bool is_fixed = policy.rfind("fixed:", 0) == 0;
  ActionSet fixed_set;
  if (is_fixed) fixed_set = baselines::fixed_select(parse_fixed_ids(policy), inst);
  if (!is_fixed && policy != "c2mabv" && policy != "c2mabv-direct" && policy != "cucb" &&
      policy != "eps-greedy" && policy != "thompson")
    throw ConfigError("unknown policy '" + policy + "'");

  const env::CascadeOrder cascade = env::parse_cascade_order(cfg.cascade_order);
  const Oracles oracles = compute_oracles(world);
  const std::vector<double> true_mu = world.true_means();

  auto state = learner::EstimatorState::init(K, cfg.alpha_mu, cfg.alpha_c, effective_delta(cfg));
  auto ts = baselines::ThompsonState::init(K);
  auto env_rng = rng::make_stream(cfg.seed, static_cast<std::uint32_t>(replication),
                                  rng::StreamKind::Env);
  auto rounding_rng = rng::make_stream(cfg.seed, static_cast<std::uint32_t>(replication),
                                       rng::StreamKind::Rounding);
  auto policy_rng = rng::make_stream(cfg.seed, static_cast<std::uint32_t>(replication),
                                     rng::StreamKind::Policy);
  learner::FeedbackBatch batch(cfg.batch_size);
  metrics::RunningMetrics running(inst.budget, inst.approx_ratio, oracles.structural.value,
                                  oracles.budgeted.value);

  ReplicationResult result;
  result.records.reserve(static_cast<std::size_t>(cfg.horizon));
  MessageLog log;
  log.enabled = cfg.log_messages;

  const std::int64_t warmup_rounds =
      cfg.warmup ? static_cast<std::int64_t>((K + N - 1) / N) : 0;

  ActionSet prev_action;
  std::vector<int> prev_seq;
  bool recompute = true;
  std::int64_t full_feedback = 0;

  const auto started = std::chrono::steady_clock::now();
  for (std::int64_t t = 1; t <= cfg.horizon; ++t) {
    ActionSet action;
    std::vector<int> seq;
    bool announced = false;  // a cloud->local action message this round

    if (t <= warmup_rounds) {
      const int start = std::min(static_cast<int>(t - 1) * N, K - N);
      std::vector<int> ids(static_cast<std::size_t>(N));
      for (int i = 0; i < N; ++i) ids[static_cast<std::size_t>(i)] = start + i;
      action = ActionSet::from_unsorted(std::move(ids));
      announced = true;
    } else if (recompute) {
      if (policy == "c2mabv") {
        std::vector<double> mu_bar = learner::reward_ucb_all(state);
        baselines::jitter_unobserved(mu_bar, state.n_mu, policy_rng);
        const std::vector<double> c_low = learner::cost_lcb_all(state);
        auto picked =
            baselines::select_via_relax_round(mu_bar, c_low, inst, cfg.cg_steps, rounding_rng);
        if (picked.report.status == relax::SolveStatus::InfeasibleFallback)
          result.fallback_rounds += 1;
        log.z_tilde(t, picked.report);
        action = std::move(picked.action);
      } else if (policy == "c2mabv-direct") {
        action = oracle::direct_policy_select(state, inst);
      } else if (policy == "cucb") {
        action = baselines::cucb_select(state, inst);
      } else if (policy == "eps-greedy") {
        action = baselines::epsilon_greedy_select(state, inst, t, cfg.cg_steps, policy_rng,
                                                  rounding_rng);
      } else if (policy == "thompson") {
        action = baselines::thompson_select(ts, state, inst, cfg.cg_steps, policy_rng,
                                            rounding_rng);
      } else {
        action = fixed_set;
      }
      announced = true;
    } else {
      action = prev_action;
      seq = prev_seq;
    }

    if (announced) {
      if (inst.model == RewardModel::AnyWin && !action.empty()) {
        const std::vector<double> c_low = learner::cost_lcb_all(state);
        seq = env::cascade_sequence(action, cascade, c_low, policy_rng);
      } else {
        seq = action.members;
      }
      log.action(t, action);
    }

    env::RoundOutcome outcome =
        env::execute_action(world, action, seq, cfg.observe_all_costs, env_rng);
    log.feedback(t, outcome);
    if (static_cast<int>(outcome.used.size()) == action.size()) full_feedback += 1;

    const double exp_reward = action_reward(inst.model, action, true_mu);
    running.observe(exp_reward, outcome.total_used_cost, outcome.total_worstcase_cost);

    metrics::RoundRecord rec;
    rec.t = t;
    rec.policy = policy;
    rec.action = action;
    rec.used = outcome.used;
    rec.exp_reward = exp_reward;
    rec.realized_reward = realized_reward_of(inst.model, outcome);
    rec.used_cost = outcome.total_used_cost;
    rec.worst_cost = outcome.total_worstcase_cost;
    rec.cum_regret_structural = running.cum_regret_structural();
    rec.cum_regret_budgeted = running.cum_regret_budgeted();
    rec.violation = running.violation_used();
    rec.ratio = running.ratio();
    result.records.push_back(std::move(rec));

    prev_action = std::move(action);
    prev_seq = std::move(seq);

    auto flushed = batch.push(std::move(outcome));
    if (flushed) {
      for (const auto& o : *flushed) {
        learner::update(state, o);
        if (policy == "thompson") baselines::thompson_observe(ts, o);
      }
      recompute = true;
    } else {
      recompute = false;
    }
  }
  const auto finished = std::chrono::steady_clock::now();
  result.wall_seconds = std::chrono::duration<double>(finished - started).count();

  result.violation_used = running.violation_used();
  result.violation_worstcase = running.violation_worstcase();
  result.final_ratio = running.ratio();
  result.mean_exp_reward = running.mean_exp_reward();
  result.cum_regret_structural = running.cum_regret_structural();
  result.cum_regret_budgeted = running.cum_regret_budgeted();
  result.full_feedback_frac =
      static_cast<double>(full_feedback) / static_cast<double>(cfg.horizon);
  result.o_star_hat = std::max(result.full_feedback_frac, 0.05);
  const auto bounds = metrics::theorem_bounds(K, N, cfg.horizon, 1.0, oracles.r_star,
                                              result.o_star_hat);
  result.theorem_regret_bound = bounds.first;
  result.theorem_violation_bound = bounds.second;
  result.message_log = std::move(log.text);
  return result;
}

void write_records_csv(const std::filesystem::path& path,
                       const std::vector<metrics::RoundRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << metrics::kCsvHeader << '\n';
  for (const auto& r : records) out << metrics::csv_row(r) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

namespace {

void write_aggregate_csv(const std::filesystem::path& path,
                         const std::vector<std::vector<metrics::RoundRecord>>& reps) {
  struct Field {
    const char* name;
    double (*get)(const metrics::RoundRecord&);
  };
  static const Field fields[] = {
      {"exp_reward", [](const metrics::RoundRecord& r) { return r.exp_reward; }},
      {"realized_reward", [](const metrics::RoundRecord& r) { return r.realized_reward; }},
      {"used_cost", [](const metrics::RoundRecord& r) { return r.used_cost; }},
      {"worst_cost", [](const metrics::RoundRecord& r) { return r.worst_cost; }},
      {"violation", [](const metrics::RoundRecord& r) { return r.violation; }},
      {"ratio", [](const metrics::RoundRecord& r) { return r.ratio; }},
      {"cum_regret_structural",
       [](const metrics::RoundRecord& r) { return r.cum_regret_structural; }},
      {"cum_regret_budgeted",
       [](const metrics::RoundRecord& r) { return r.cum_regret_budgeted; }},
  };

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "t";
  for (const auto& f : fields) out << ',' << f.name << "_mean," << f.name << "_ci95";
  out << '\n';

  const std::size_t T = reps.front().size();
  const double R = static_cast<double>(reps.size());
  for (std::size_t i = 0; i < T; ++i) {
    out << reps.front()[i].t;
    for (const auto& f : fields) {
      double mean = 0.0;
      for (const auto& rep : reps) mean += f.get(rep[i]);
      mean /= R;
      double ci = 0.0;
      if (!std::isfinite(mean)) {
        ci = std::numeric_limits<double>::infinity();
      } else if (reps.size() > 1) {
        double ss = 0.0;
        for (const auto& rep : reps) {
          const double d = f.get(rep[i]) - mean;
          ss += d * d;
        }
        ci = 1.96 * std::sqrt(ss / (R - 1.0)) / std::sqrt(R);
      }
      out << ',' << metrics::format_float(mean) << ',' << metrics::format_float(ci);
    }
    out << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

ExperimentFiles run_experiment(const ExperimentConfig& cfg) {
  const env::SyntheticInstance world = build_world(cfg);
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + cfg.out_dir.string());

  ExperimentFiles files;
  std::ofstream summary(cfg.out_dir / "summary.csv", std::ios::binary);
  std::ofstream timings(cfg.out_dir / "timings.csv", std::ios::binary);
  if (!summary || !timings) throw IoError("cannot write into " + cfg.out_dir.string());
  summary << "policy,rep,final_t,mean_exp_reward,violation_used,violation_worstcase,ratio,"
             "cum_regret_structural,cum_regret_budgeted,fallback_rounds,full_feedback_frac,"
             "o_star_hat,theorem_regret_bound,theorem_violation_bound\n";
  timings << "policy,rep,wall_seconds\n";

  for (const std::string& policy : cfg.policies) {
    std::vector<ReplicationResult> results(static_cast<std::size_t>(cfg.replications));
    const int jobs = std::max(1, std::min(cfg.jobs, cfg.replications));
    if (jobs == 1) {
      for (int r = 0; r < cfg.replications; ++r)
        results[static_cast<std::size_t>(r)] = run_replication(cfg, world, policy, r);
    } else {
      std::atomic<int> next{0};
      std::vector<std::thread> workers;
      workers.reserve(static_cast<std::size_t>(jobs));
      for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
          for (;;) {
            const int r = next.fetch_add(1);
            if (r >= cfg.replications) return;
            results[static_cast<std::size_t>(r)] = run_replication(cfg, world, policy, r);
          }
        });
      }
      for (auto& w : workers) w.join();
    }

    const std::string stem = sanitize_for_path(policy);
    std::vector<std::vector<metrics::RoundRecord>> all_records;
    all_records.reserve(results.size());
    for (int r = 0; r < cfg.replications; ++r) {
      auto& res = results[static_cast<std::size_t>(r)];
      const auto csv_path = cfg.out_dir / (stem + "_rep" + std::to_string(r) + ".csv");
      write_records_csv(csv_path, res.records);
      files.per_replication_csv.push_back(csv_path);
      if (cfg.log_messages) {
        const auto log_path = cfg.out_dir / (stem + "_rep" + std::to_string(r) + ".log");
        std::ofstream log_out(log_path, std::ios::binary);
        if (!log_out) throw IoError("cannot write " + log_path.string());
        log_out << res.message_log;
        files.message_logs.push_back(log_path);
      }
      summary << policy << ',' << r << ',' << cfg.horizon << ','
              << metrics::format_float(res.mean_exp_reward) << ','
              << metrics::format_float(res.violation_used) << ','
              << metrics::format_float(res.violation_worstcase) << ','
              << metrics::format_float(res.final_ratio) << ','
              << metrics::format_float(res.cum_regret_structural) << ','
              << metrics::format_float(res.cum_regret_budgeted) << ',' << res.fallback_rounds
              << ',' << metrics::format_float(res.full_feedback_frac) << ','
              << metrics::format_float(res.o_star_hat) << ','
              << metrics::format_float(res.theorem_regret_bound) << ','
              << metrics::format_float(res.theorem_violation_bound) << '\n';
      timings << policy << ',' << r << ',' << metrics::format_float(res.wall_seconds) << '\n';
      all_records.push_back(std::move(res.records));
    }
    const auto agg_path = cfg.out_dir / (stem + "_aggregate.csv");
    write_aggregate_csv(agg_path, all_records);
    files.aggregate_csv = agg_path;
  }
  files.summary_csv = cfg.out_dir / "summary.csv";
  files.timings_csv = cfg.out_dir / "timings.csv";
  return files;
}

std::vector<metrics::RoundRecord> replay_log(const ExperimentConfig& cfg,
                                             const env::SyntheticInstance& world,
                                             const std::string& policy,
                                             const std::string& log_text) {
  const ProblemInstance& inst = world.inst;
  const Oracles oracles = compute_oracles(world);
  const std::vector<double> true_mu = world.true_means();
  metrics::RunningMetrics running(inst.budget, inst.approx_ratio, oracles.structural.value,
                                  oracles.budgeted.value);

  std::vector<metrics::RoundRecord> records;
  records.reserve(static_cast<std::size_t>(cfg.horizon));
  ActionSet current_action;
  std::istringstream in(log_text);
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ordered_json j = ordered_json::parse(line);
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "z_tilde") continue;  // cloud input; actions carry the decision
    if (kind == "action") {
      current_action = ActionSet::from_unsorted(j.at("members").get<std::vector<int>>());
      continue;
    }
    if (kind != "feedback") throw ConfigError("unknown message kind '" + kind + "' in log");

    env::RoundOutcome o;
    o.action = current_action;
    o.used = j.at("used").get<std::vector<int>>();
    o.rewards = j.at("rewards").get<std::vector<double>>();
    o.costs = j.at("costs").get<std::vector<double>>();
    for (double c : o.costs) o.total_used_cost += c;
    o.total_worstcase_cost = j.at("worst_cost").get<double>();

    const double exp_reward = action_reward(inst.model, current_action, true_mu);
    running.observe(exp_reward, o.total_used_cost, o.total_worstcase_cost);

    metrics::RoundRecord rec;
    rec.t = j.at("t").get<std::int64_t>();
    rec.policy = policy;
    rec.action = current_action;
    rec.used = o.used;
    rec.exp_reward = exp_reward;
    rec.realized_reward = realized_reward_of(inst.model, o);
    rec.used_cost = o.total_used_cost;
    rec.worst_cost = o.total_worstcase_cost;
    rec.cum_regret_structural = running.cum_regret_structural();
    rec.cum_regret_budgeted = running.cum_regret_budgeted();
    rec.violation = running.violation_used();
    rec.ratio = running.ratio();
    records.push_back(std::move(rec));
  }
  return records;
}

std::filesystem::path replay_to_csv(const ExperimentConfig& cfg,
                                    const std::filesystem::path& log_path) {
  std::ifstream in(log_path, std::ios::binary);
  if (!in) throw IoError("cannot open message log: " + log_path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();

  // <policy>_rep<r>.log -> policy name; undo the path sanitization of ':'
  std::string stem = log_path.stem().string();
  const auto pos = stem.rfind("_rep");
  if (pos != std::string::npos) stem.resize(pos);
  if (stem.rfind("fixed-", 0) == 0) stem[5] = ':';

  const env::SyntheticInstance world = build_world(cfg);
  const auto records = replay_log(cfg, world, stem, buffer.str());

  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + cfg.out_dir.string());
  const auto out_path = cfg.out_dir / (log_path.stem().string() + "_replay.csv");
  write_records_csv(out_path, records);
  return out_path;
}

}  // namespace c2mabv::runner
