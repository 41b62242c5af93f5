#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "c2mabv/env.hpp"
#include "c2mabv/errors.hpp"
#include "c2mabv/runner.hpp"

namespace {

int run_command(const std::string& config_path, const std::vector<std::string>& policies,
                std::uint64_t seed, bool seed_set, const std::string& out_dir,
                bool log_messages, const std::string& replay_path) {
  c2mabv::runner::ExperimentConfig cfg = c2mabv::runner::load_config_file(config_path);
  if (!policies.empty()) cfg.policies = policies;
  if (seed_set) cfg.seed = seed;
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (log_messages) cfg.log_messages = true;

  if (!replay_path.empty()) {
    const auto csv = c2mabv::runner::replay_to_csv(cfg, replay_path);
    std::printf("replayed %s -> %s\n", replay_path.c_str(), csv.string().c_str());
    return 0;
  }

  const auto files = c2mabv::runner::run_experiment(cfg);
  std::printf("wrote %zu replication CSVs, %s, %s\n", files.per_replication_csv.size(),
              files.summary_csv.string().c_str(), files.timings_csv.string().c_str());
  return 0;
}

int presets_list() {
  for (const auto& name : c2mabv::env::preset_names()) {
    const auto world = c2mabv::env::make_preset(name, 1);
    std::printf("%-18s K=%-3d N=%-2d rho=%-5g model=%s reward_dist=%s\n", name.c_str(),
                world.inst.num_arms, world.inst.max_active, world.inst.budget,
                std::string(c2mabv::reward_model_name(world.inst.model)).c_str(),
                std::string(c2mabv::env::reward_dist_name(world.reward_dist)).c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"c2mabv: budgeted multi-armed bandit engine and experiment simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir, replay_path;
  std::vector<std::string> policies;
  std::uint64_t seed = 0;
  bool log_messages = false;

  auto* run = app.add_subcommand("run", "run an experiment from a config file");
  run->add_option("--config", config_path, "key=value config file")->required();
  run->add_option("--policy", policies,
                  "policy override (repeatable): c2mabv, c2mabv-direct, cucb, eps-greedy, "
                  "thompson, fixed:<id+id+...>");
  auto* seed_opt = run->add_option("--seed", seed, "root seed override");
  run->add_option("--out", out_dir, "output directory override");
  run->add_flag("--log-messages", log_messages, "write the local/cloud message log");
  run->add_option("--replay", replay_path, "replay a message log into a CSV instead of running");

  auto* presets = app.add_subcommand("presets", "preset utilities");
  auto* presets_list_cmd = presets->add_subcommand("list", "list named instance presets");

  try {
    app.parse(argc, argv);
    if (run->parsed())
      return run_command(config_path, policies, seed, seed_opt->count() > 0, out_dir,
                         log_messages, replay_path);
    if (presets->parsed()) {
      if (presets_list_cmd->parsed() || presets->get_subcommands().empty()) return presets_list();
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const c2mabv::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const c2mabv::SizeGuardError& e) {
    std::fprintf(stderr, "size guard: %s\n", e.what());
    std::fprintf(stderr, "hint: exhaustive enumeration is capped at 5e6 subsets; reduce K or N, "
                         "or avoid the c2mabv-direct policy on this instance\n");
    return 3;
  } catch (const c2mabv::IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
