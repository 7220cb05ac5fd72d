#include "wargame/session/record.hpp"

#include <nlohmann/json.hpp>

#include "wargame/util/error.hpp"

namespace wargame {

using nlohmann::json;

std::string_view to_string(RecordSource s) noexcept { return s == RecordSource::Human ? "human" : "llm"; }

std::string_view to_string(RecordStatus s) noexcept {
  switch (s) {
    case RecordStatus::Complete:
      return "complete";
    case RecordStatus::Failed:
      return "failed";
    case RecordStatus::Incomplete:
      break;
  }
  return "incomplete";
}

RecordSource parse_record_source(std::string_view s) {
  if (s == "llm") return RecordSource::Llm;
  if (s == "human") return RecordSource::Human;
  throw SchemaError("unknown record source '" + std::string(s) + "' (expected llm|human)");
}

RecordStatus parse_record_status(std::string_view s) {
  if (s == "complete") return RecordStatus::Complete;
  if (s == "failed") return RecordStatus::Failed;
  if (s == "incomplete") return RecordStatus::Incomplete;
  throw SchemaError("unknown record status '" + std::string(s) + "'");
}

namespace {

json turn_json(const RecordedTurn& t) {
  json j{{"role", to_string(t.role)}, {"content", t.content}};
  if (!t.kind.empty()) j["kind"] = t.kind;
  if (!t.request_hash.empty()) j["request_hash"] = t.request_hash;
  return j;
}

template <typename T>
T field(const json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaError(where + ": missing field '" + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw SchemaError(where + ": field '" + key + "' has the wrong type");
  }
}

template <typename T>
T optional_field(const json& j, const char* key, const std::string& where, T fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  return field<T>(j, key, where);
}

const json& object_field(const json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_object()) throw SchemaError(where + ": field '" + key + "' must be an object");
  return *it;
}

const json& array_field(const json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_array()) throw SchemaError(where + ": field '" + key + "' must be an array");
  return *it;
}

template <typename F>
auto rethrow_as_schema(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(where + ": " + e.what());
  }
}

bool is_hex64(const std::string& s) {
  if (s.size() != 64) return false;
  for (char c : s)
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  return true;
}

}  // namespace

json to_json(const GameRecord& r) {
  json team = json::array();
  for (const auto& p : r.team)
    team.push_back({{"age", p.age},
                    {"gender", p.gender},
                    {"education", p.education},
                    {"expertise", p.expertise},
                    {"free_traits", p.free_traits}});
  json moves = json::array();
  for (const auto& m : r.moves) {
    json turns = json::array();
    for (const auto& t : m.transcript) turns.push_back(turn_json(t));
    moves.push_back({{"move", m.move},
                     {"transcript", std::move(turns)},
                     {"answer_text", m.answer_text},
                     {"elicitations", m.elicitations},
                     {"confidence", m.confidence},
                     {"diagnostics", m.diagnostics}});
  }
  json response = nullptr;
  if (r.response)
    response = {{"vector", r.response->selections.to_bit_string()},
                {"end_state_1", r.response->end_state_1},
                {"end_state_2", r.response->end_state_2},
                {"course_plan_2", r.response->course_plan_2}};
  return {{"schema_version", r.schema_version},
          {"game_id", r.game_id},
          {"experiment", r.experiment},
          {"source", to_string(r.source)},
          {"status", to_string(r.status)},
          {"team_index", r.team_index},
          {"team", std::move(team)},
          {"treatment", r.treatment.code()},
          {"variant",
           {{"include_priorities", r.variant.include_priorities},
            {"roleplay_emphasis", r.variant.roleplay_emphasis},
            {"disagreement_emphasis", r.variant.disagreement_emphasis},
            {"persona", to_string(r.variant.persona)},
            {"dialog_chunks", r.variant.dialog_chunks},
            {"words_per_chunk", r.variant.words_per_chunk}}},
          {"seed", r.seed},
          {"backend",
           {{"kind", r.backend.kind},
            {"model", r.backend.model},
            {"endpoint", r.backend.endpoint},
            {"temperature", r.backend.temperature},
            {"fixture_sha256", r.backend.fixture_sha256}}},
          {"scenario_version", r.scenario_version},
          {"parser_rules", r.parser_rules},
          {"moves", std::move(moves)},
          {"response", std::move(response)},
          {"failure", r.failure},
          {"started_at", r.started_at},
          {"finished_at", r.finished_at}};
}

GameRecord record_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("record must be a JSON object");
  GameRecord r;
  const std::string w = "record";
  r.schema_version = field<std::string>(j, "schema_version", w);
  if (r.schema_version != kRecordSchemaVersion)
    throw SchemaError("unsupported record schema '" + r.schema_version + "' (expected " +
                      std::string(kRecordSchemaVersion) + ")");
  r.game_id = field<std::string>(j, "game_id", w);
  const std::string where = "record " + r.game_id;
  r.experiment = optional_field<std::string>(j, "experiment", where, "");
  r.source = parse_record_source(field<std::string>(j, "source", where));
  r.status = rethrow_as_schema(where, [&] { return parse_record_status(field<std::string>(j, "status", where)); });
  r.team_index = field<int>(j, "team_index", where);
  const auto& team = array_field(j, "team", where);
  for (std::size_t i = 0; i < team.size(); ++i) {
    const std::string pw = where + " team[" + std::to_string(i) + "]";
    PlayerProfile p;
    p.age = field<int>(team[i], "age", pw);
    p.gender = field<std::string>(team[i], "gender", pw);
    p.education = field<std::string>(team[i], "education", pw);
    p.expertise = field<std::string>(team[i], "expertise", pw);
    p.free_traits = optional_field<std::string>(team[i], "free_traits", pw, "");
    r.team.push_back(std::move(p));
  }
  r.treatment =
      rethrow_as_schema(where, [&] { return Treatment::parse_code(field<std::string>(j, "treatment", where)); });
  const auto& v = object_field(j, "variant", where);
  const std::string vw = where + " variant";
  r.variant.include_priorities = field<bool>(v, "include_priorities", vw);
  r.variant.roleplay_emphasis = field<bool>(v, "roleplay_emphasis", vw);
  r.variant.disagreement_emphasis = field<bool>(v, "disagreement_emphasis", vw);
  r.variant.persona = rethrow_as_schema(vw, [&] { return parse_persona(field<std::string>(v, "persona", vw)); });
  r.variant.dialog_chunks = field<int>(v, "dialog_chunks", vw);
  r.variant.words_per_chunk = field<int>(v, "words_per_chunk", vw);
  r.seed = field<std::uint64_t>(j, "seed", where);
  const auto& b = object_field(j, "backend", where);
  const std::string bw = where + " backend";
  r.backend.kind = field<std::string>(b, "kind", bw);
  r.backend.model = field<std::string>(b, "model", bw);
  r.backend.endpoint = optional_field<std::string>(b, "endpoint", bw, "");
  r.backend.temperature = field<double>(b, "temperature", bw);
  r.backend.fixture_sha256 = optional_field<std::string>(b, "fixture_sha256", bw, "");
  r.scenario_version = optional_field<std::string>(j, "scenario_version", where, "");
  r.parser_rules = optional_field<std::string>(j, "parser_rules", where, "");
  const auto& moves = array_field(j, "moves", where);
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const std::string mw = where + " moves[" + std::to_string(i) + "]";
    MoveRecord m;
    m.move = field<int>(moves[i], "move", mw);
    for (const auto& t : array_field(moves[i], "transcript", mw)) {
      RecordedTurn turn;
      turn.role = rethrow_as_schema(mw, [&] { return parse_role(field<std::string>(t, "role", mw)); });
      turn.content = field<std::string>(t, "content", mw);
      turn.kind = optional_field<std::string>(t, "kind", mw, "");
      turn.request_hash = optional_field<std::string>(t, "request_hash", mw, "");
      m.transcript.push_back(std::move(turn));
    }
    m.answer_text = field<std::string>(moves[i], "answer_text", mw);
    m.elicitations = field<int>(moves[i], "elicitations", mw);
    m.confidence = optional_field<std::string>(moves[i], "confidence", mw, "");
    m.diagnostics = optional_field<std::vector<std::string>>(moves[i], "diagnostics", mw, {});
    r.moves.push_back(std::move(m));
  }
  if (j.contains("response") && !j["response"].is_null()) {
    const auto& resp = object_field(j, "response", where);
    const std::string rw = where + " response";
    ResponseVector rv;
    rv.selections =
        rethrow_as_schema(rw, [&] { return ActionSet::from_bit_string(field<std::string>(resp, "vector", rw)); });
    rv.end_state_1 = optional_field<std::string>(resp, "end_state_1", rw, "");
    rv.end_state_2 = optional_field<std::string>(resp, "end_state_2", rw, "");
    rv.course_plan_2 = optional_field<std::string>(resp, "course_plan_2", rw, "");
    r.response = std::move(rv);
  }
  r.failure = optional_field<std::string>(j, "failure", where, "");
  r.started_at = optional_field<std::string>(j, "started_at", where, "");
  r.finished_at = optional_field<std::string>(j, "finished_at", where, "");
  validate_record(r);
  return r;
}

void validate_record(const GameRecord& r) {
  const std::string where = "record " + (r.game_id.empty() ? std::string("<unnamed>") : r.game_id);
  auto fail = [&](const std::string& msg) { throw SchemaError(where + ": " + msg); };
  if (r.schema_version != kRecordSchemaVersion) fail("schema_version must be " + std::string(kRecordSchemaVersion));
  if (r.game_id.empty()) fail("game_id is empty");
  if (r.complete() != r.response.has_value()) fail("response must be present exactly when status is complete");
  if (r.complete() && !r.failure.empty()) fail("complete record carries a failure message");
  if (!r.complete() && r.failure.empty()) fail("non-complete record needs a failure message");
  if (r.source == RecordSource::Llm && r.team.size() != kTeamSize)
    fail("simulated team must have " + std::to_string(kTeamSize) + " players, got " + std::to_string(r.team.size()));
  for (std::size_t i = 0; i < r.team.size(); ++i) {
    try {
      validate_profile(r.team[i]);
    } catch (const Error& e) {
      fail("team[" + std::to_string(i) + "]: " + e.what());
    }
  }
  if (r.variant.dialog_chunks < 0) fail("variant.dialog_chunks must be >= 0");
  if (r.variant.words_per_chunk <= 0) fail("variant.words_per_chunk must be > 0");
  if (r.backend.kind.empty()) fail("backend.kind is empty");
  if (r.moves.size() > 2) fail("more than two moves");
  for (std::size_t i = 0; i < r.moves.size(); ++i) {
    const auto& m = r.moves[i];
    if (m.move != static_cast<int>(i) + 1) fail("moves out of order");
    if (m.elicitations < 0) fail("negative elicitation count");
    for (const auto& t : m.transcript) {
      if (t.role != Role::Assistant && t.content.empty()) fail("empty system/user turn");
      if (r.source == RecordSource::Llm && t.role == Role::Assistant && !is_hex64(t.request_hash))
        fail("assistant turn without a request hash");
    }
  }
  if (r.complete() && !r.moves.empty() && r.moves.size() != 2) fail("complete game with transcripts needs both moves");
}

std::string serialize_record(const GameRecord& r, bool timestamps) {
  json j = to_json(r);
  if (!timestamps) {
    j.erase("started_at");
    j.erase("finished_at");
  }
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

GameRecord parse_record(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed record JSON: ") + e.what());
  }
  return record_from_json(j);
}

}  // namespace wargame
