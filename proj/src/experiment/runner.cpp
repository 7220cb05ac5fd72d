#include "wargame/experiment/runner.hpp"

#include <atomic>
#include <cstdio>
#include <mutex>
#include <thread>

#include "wargame/util/hash.hpp"

namespace wargame {

std::string make_game_id(const std::string& experiment, int team_index, const Treatment& t) {
  char team[16];
  std::snprintf(team, sizeof team, "team%02d", team_index + 1);
  return experiment + "-" + team + "-" + t.code();
}

std::uint64_t game_seed(std::uint64_t master_seed, int team_index, const Treatment& t) {
  return util::derive_seed(master_seed, {static_cast<std::uint64_t>(team_index), t.index()});
}

std::vector<TeamComposition> sample_roster(const ExperimentConfig& cfg, const ProfileDataset* dataset) {
  util::Rng rng(util::derive_seed(cfg.master_seed, {0x7ea5}));
  std::vector<TeamComposition> roster;
  for (int i = 0; i < cfg.n_teams; ++i)
    roster.push_back(sample_team(cfg.sampling, dataset, rng, static_cast<std::size_t>(cfg.team_size)));
  return roster;
}

std::vector<GameSetup> plan_experiment(const ExperimentConfig& cfg, const ProfileDataset* dataset) {
  cfg.validate();
  const auto roster = sample_roster(cfg, dataset);
  std::vector<GameSetup> plan;
  for (int team = 0; team < cfg.n_teams; ++team)
    for (const auto& t : cfg.treatment_list()) {
      GameSetup s;
      s.game_id = make_game_id(cfg.name, team, t);
      s.experiment = cfg.name;
      s.team_index = team;
      s.team = roster[static_cast<std::size_t>(team)];
      s.treatment = t;
      s.variant = cfg.variant;
      s.seed = game_seed(cfg.master_seed, team, t);
      plan.push_back(std::move(s));
    }
  return plan;
}

ExperimentResult run_experiment(const std::vector<GameSetup>& plan, const PromptBuilder& prompts, Gateway& gateway,
                                RecordStore& store, int parallelism, const RunOptions& options) {
  if (parallelism <= 0) throw ConfigError("parallelism must be > 0");
  RunReport report;
  report.planned = plan.size();
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    if (store.finalized(plan[i].game_id))
      ++report.skipped;
    else
      todo.push_back(i);
  }

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> started{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  auto worker = [&] {
    for (;;) {
      if (stop) return;
      const std::size_t k = next++;
      if (k >= todo.size()) return;
      if (started++ >= options.max_new_games) return;
      const GameSetup& setup = plan[todo[k]];
      try {
        GameRecord r = run_game(prompts, gateway, setup);
        store.append(r);
        std::lock_guard lock(mu);
        if (options.on_record) options.on_record(r);
      } catch (const SessionAborted& e) {
        stop = true;
        std::lock_guard lock(mu);
        ++report.aborted;
        report.errors.push_back(e.what());
        try {
          store.append(e.partial());
        } catch (const Error& write_error) {
          report.errors.push_back(write_error.what());
        }
      } catch (const Error& e) {
        stop = true;
        std::lock_guard lock(mu);
        report.errors.push_back("game " + setup.game_id + ": " + e.what());
      }
    }
  };
  const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(parallelism), std::max<std::size_t>(1, todo.size()));
  std::vector<std::thread> threads;
  for (std::size_t i = 1; i < n_threads; ++i) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  ExperimentResult result;
  std::map<std::string, GameRecord> finals;
  for (auto& r : store.final_records()) finals[r.game_id] = std::move(r);
  for (const auto& s : plan) {
    const auto it = finals.find(s.game_id);
    if (it == finals.end()) {
      ++report.not_started;
      continue;
    }
    if (it->second.complete())
      ++report.completed;
    else
      ++report.failed;
    result.records.push_back(it->second);
  }
  report.not_started -= std::min(report.not_started, report.aborted);
  result.report = std::move(report);
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& options) {
  cfg.validate();
  ProfileDataset dataset;
  const ProfileDataset* ds = nullptr;
  if (!cfg.profiles.empty()) {
    dataset = load_profiles(cfg.profiles);
    ds = &dataset;
  }
  const auto plan = plan_experiment(cfg, ds);
  const ScenarioScript script = ScenarioScript::load_default();
  const PromptBuilder prompts(script);
  auto backend = make_backend(cfg.backend);
  TranscriptLog log(cfg.transcripts);
  Gateway gateway(*backend, &log);
  RecordStore store(cfg.records);
  return run_experiment(plan, prompts, gateway, store, options.parallelism > 0 ? options.parallelism : cfg.parallelism,
                        options);
}

}  // namespace wargame
