#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wargame/core/response.hpp"
#include "wargame/core/team.hpp"
#include "wargame/core/treatment.hpp"
#include "wargame/gateway/chat.hpp"
#include "wargame/scenario/prompts.hpp"

namespace wargame {

inline constexpr std::string_view kRecordSchemaVersion = "wargame-record-v1";

enum class RecordSource : std::uint8_t { Llm, Human };
enum class RecordStatus : std::uint8_t { Complete, Failed, Incomplete };
std::string_view to_string(RecordSource s) noexcept;
std::string_view to_string(RecordStatus s) noexcept;
RecordSource parse_record_source(std::string_view s);
RecordStatus parse_record_status(std::string_view s);

struct RecordedTurn {
  Role role = Role::User;
  std::string content;
  std::string request_hash;  // assistant turns of LLM games only
  std::string kind;          // TurnKind label for assistant turns

  friend bool operator==(const RecordedTurn&, const RecordedTurn&) = default;
};

struct MoveRecord {
  int move = 1;
  std::vector<RecordedTurn> transcript;  // turns appended during this move
  std::string answer_text;               // last elicited answer
  int elicitations = 0;                  // 1 + re-elicitations
  std::string confidence;                // ParseConfidence label, empty if unparsed
  std::vector<std::string> diagnostics;

  friend bool operator==(const MoveRecord&, const MoveRecord&) = default;
};

// One played game, simulated or human. Complete records carry a response
// vector; Failed and Incomplete ones carry a failure message instead.
struct GameRecord {
  std::string schema_version{kRecordSchemaVersion};
  std::string game_id;
  std::string experiment;  // free label used to form contrasts
  RecordSource source = RecordSource::Llm;
  RecordStatus status = RecordStatus::Incomplete;
  int team_index = -1;
  TeamComposition team;
  Treatment treatment;
  PromptVariant variant;
  std::uint64_t seed = 0;
  BackendDescriptor backend;
  std::string scenario_version;
  std::string parser_rules;
  std::vector<MoveRecord> moves;
  std::optional<ResponseVector> response;
  std::string failure;
  std::string started_at;
  std::string finished_at;

  bool complete() const noexcept { return status == RecordStatus::Complete; }
  friend bool operator==(const GameRecord&, const GameRecord&) = default;
};

nlohmann::json to_json(const GameRecord& r);
// Validates and converts; throws SchemaError naming the offending field.
GameRecord record_from_json(const nlohmann::json& j);
// Field-level consistency checks shared by every record source.
void validate_record(const GameRecord& r);

// One-line JSON. With timestamps=false the time fields are dropped, which
// gives a byte-stable form for determinism checks and hashing.
std::string serialize_record(const GameRecord& r, bool timestamps = true);
GameRecord parse_record(std::string_view line);

}  // namespace wargame
