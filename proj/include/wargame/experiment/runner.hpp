#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "wargame/experiment/config.hpp"
#include "wargame/experiment/store.hpp"
#include "wargame/session/session.hpp"

namespace wargame {

// "<name>-team03-high-basic-revisionist"; team numbers start at 1.
std::string make_game_id(const std::string& experiment, int team_index, const Treatment& t);

// Per-game seed: a hash of (master seed, team index, treatment index).
std::uint64_t game_seed(std::uint64_t master_seed, int team_index, const Treatment& t);

// Samples the roster once; the same teams play every treatment.
std::vector<TeamComposition> sample_roster(const ExperimentConfig& cfg, const ProfileDataset* dataset);

// Team-major list of every (team, treatment) game.
std::vector<GameSetup> plan_experiment(const ExperimentConfig& cfg, const ProfileDataset* dataset);

struct RunReport {
  std::size_t planned = 0;
  std::size_t completed = 0;  // includes games finished by earlier runs
  std::size_t failed = 0;
  std::size_t skipped = 0;    // already final in the store
  std::size_t aborted = 0;    // backend errors
  std::size_t not_started = 0;
  std::vector<std::string> errors;
  bool partial() const noexcept { return completed + failed < planned; }
};

struct ExperimentResult {
  std::vector<GameRecord> records;  // final records of planned games, plan order
  RunReport report;
};

struct RunOptions {
  int parallelism = 0;  // 0 = config value
  // Stop after this many newly played games (resume testing, dry runs).
  std::size_t max_new_games = std::numeric_limits<std::size_t>::max();
  // Called under a lock for every new final record.
  std::function<void(const GameRecord&)> on_record;
};

// Plays every planned game that is not already final in the store. A
// backend error stores the partial record as Incomplete and stops
// scheduling further games.
ExperimentResult run_experiment(const std::vector<GameSetup>& plan, const PromptBuilder& prompts, Gateway& gateway,
                                RecordStore& store, int parallelism, const RunOptions& options = {});

// Config-driven run: loads the scenario, profiles and backend, then writes
// records and transcripts to the configured paths.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& options = {});

}  // namespace wargame
