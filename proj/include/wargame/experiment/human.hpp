#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "wargame/gateway/synthetic.hpp"
#include "wargame/session/record.hpp"

namespace wargame {

// Column schema of a human wargame dataset, one team per row:
//   team_id, ai_accuracy, crew_training, china_posture,
//   m1_a .. m1_g, m2_a .. m2_k (0/1, catalog keys),
//   end_state_1, end_state_2,
//   ages, genders, educations, expertises (';'-separated, one entry per player)
// course_plan_2 is optional.
std::vector<std::string> human_csv_columns();

struct RowError {
  std::size_t line = 0;
  std::string message;
};

struct IngestResult {
  std::vector<GameRecord> records;
  std::vector<RowError> errors;
  std::string sha256;
};

// Row problems (bad bits, unknown labels, invalid profiles) are collected and
// the row skipped; a missing column throws SchemaError naming it.
IngestResult ingest_human_csv(const std::filesystem::path& path, const std::string& experiment = "human");
IngestResult ingest_human_csv(std::istream& in, const std::string& source_name, const std::string& experiment);

struct SyntheticHumanSpec {
  int teams = 48;
  std::uint64_t seed = 1;
  int min_players = 4;
  int max_players = 5;
  ResponseModel model = ResponseModel::human_pattern();
};

// Writes a dataset in the human CSV schema. Team i plays treatment i mod 8;
// selections are drawn from spec.model.
void write_synthetic_human_csv(std::ostream& out, const SyntheticHumanSpec& spec);

struct SyntheticArm {
  Treatment treatment;
  int games = 40;
};

// Analysis-ready records straight from a response model, without sessions.
// Used to exercise the statistics on data with known effects.
std::vector<GameRecord> synthetic_records(const ResponseModel& model, const std::vector<SyntheticArm>& arms,
                                          std::uint64_t seed, const std::string& experiment = "synthetic",
                                          Persona persona = Persona::None);

}  // namespace wargame
