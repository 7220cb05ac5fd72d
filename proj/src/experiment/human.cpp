#include "wargame/experiment/human.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "wargame/experiment/profiles.hpp"
#include "wargame/util/csv.hpp"
#include "wargame/util/error.hpp"
#include "wargame/util/hash.hpp"
#include "wargame/util/text.hpp"

namespace wargame {

std::vector<std::string> human_csv_columns() {
  std::vector<std::string> cols{"team_id", "ai_accuracy", "crew_training", "china_posture"};
  for (const auto& a : catalog().actions()) cols.emplace_back(a.key);
  for (const char* c : {"end_state_1", "end_state_2", "ages", "genders", "educations", "expertises"})
    cols.emplace_back(c);
  return cols;
}

namespace {

std::vector<std::string> split_list(const std::string& cell) {
  std::vector<std::string> out;
  if (util::trim(cell).empty()) return out;
  for (const auto& part : util::split(cell, ';')) out.emplace_back(util::trim(part));
  return out;
}

TeamComposition parse_team(const std::vector<std::string>& ages, const std::vector<std::string>& genders,
                           const std::vector<std::string>& educations, const std::vector<std::string>& expertises) {
  const std::size_t n = ages.size();
  if (genders.size() != n || educations.size() != n || expertises.size() != n)
    throw SchemaError("demographic lists differ in length (ages " + std::to_string(n) + ", genders " +
                      std::to_string(genders.size()) + ", educations " + std::to_string(educations.size()) +
                      ", expertises " + std::to_string(expertises.size()) + ")");
  TeamComposition team;
  for (std::size_t i = 0; i < n; ++i) {
    PlayerProfile p;
    std::size_t used = 0;
    try {
      p.age = std::stoi(ages[i], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != ages[i].size()) throw SchemaError("age '" + ages[i] + "' is not an integer");
    p.gender = genders[i];
    p.education = educations[i];
    p.expertise = expertises[i];
    try {
      validate_profile(p);
    } catch (const Error& e) {
      throw SchemaError("player " + std::to_string(i + 1) + ": " + e.what());
    }
    team.push_back(std::move(p));
  }
  return team;
}

}  // namespace

IngestResult ingest_human_csv(std::istream& in, const std::string& source_name, const std::string& experiment) {
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string content = buf.str();
  std::istringstream parse(content);
  const auto rows = util::read_csv(parse);
  if (rows.empty()) throw SchemaError(source_name + ": empty file");

  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < rows[0].cells.size(); ++i) {
    const std::string name = util::to_lower(util::trim(rows[0].cells[i]));
    if (!col.emplace(name, i).second) throw SchemaError(source_name + ": duplicate column '" + name + "'");
  }
  for (const auto& c : human_csv_columns())
    if (!col.count(c)) throw SchemaError(source_name + ": missing column '" + c + "'");
  const bool has_course = col.count("course_plan_2") > 0;

  IngestResult result;
  result.sha256 = util::sha256_hex(content);
  std::map<std::string, std::size_t> seen_ids;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.cells.size() == 1 && util::trim(row.cells[0]).empty()) continue;
    try {
      if (row.cells.size() != rows[0].cells.size())
        throw SchemaError("expected " + std::to_string(rows[0].cells.size()) + " cells, got " +
                          std::to_string(row.cells.size()));
      auto cell = [&](const std::string& name) { return std::string(util::trim(row.cells[col.at(name)])); };
      GameRecord rec;
      const std::string team_id = cell("team_id");
      if (team_id.empty()) throw SchemaError("team_id is empty");
      if (const auto it = seen_ids.find(team_id); it != seen_ids.end())
        throw SchemaError("team_id '" + team_id + "' already used on line " + std::to_string(it->second));
      rec.game_id = "human-" + team_id;
      rec.experiment = experiment;
      rec.source = RecordSource::Human;
      rec.status = RecordStatus::Complete;
      try {
        const std::size_t n = std::stoul(team_id);
        rec.team_index = static_cast<int>(n);
      } catch (const std::exception&) {
        rec.team_index = -1;
      }
      rec.treatment.ai_accuracy = parse_ai_accuracy(cell("ai_accuracy"));
      rec.treatment.crew_training = parse_crew_training(cell("crew_training"));
      rec.treatment.china_posture = parse_china_posture(cell("china_posture"));
      ResponseVector rv;
      for (const auto& a : catalog().actions()) {
        const std::string v = cell(std::string(a.key));
        if (v == "1")
          rv.selections.set(a.index);
        else if (v != "0")
          throw SchemaError("column " + std::string(a.key) + ": bit value '" + v + "' is not 0 or 1");
      }
      rv.end_state_1 = cell("end_state_1");
      rv.end_state_2 = cell("end_state_2");
      if (has_course) rv.course_plan_2 = cell("course_plan_2");
      rec.response = std::move(rv);
      rec.team = parse_team(split_list(cell("ages")), split_list(cell("genders")), split_list(cell("educations")),
                            split_list(cell("expertises")));
      rec.backend = {"dataset", "human-csv", source_name, 0.0, result.sha256};
      validate_record(rec);
      seen_ids.emplace(team_id, row.line);
      result.records.push_back(std::move(rec));
    } catch (const Error& e) {
      result.errors.push_back({row.line, e.what()});
    }
  }
  return result;
}

IngestResult ingest_human_csv(const std::filesystem::path& path, const std::string& experiment) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read human dataset " + path.string());
  return ingest_human_csv(in, path.filename().string(), experiment);
}

namespace {

constexpr std::array<std::string_view, 4> kHumanEndStates{
    "De-escalation with our forces intact",
    "China backs down and navigation continues",
    "Allies reassured and the crisis contained",
    "No loss of life and talks resume",
};

}  // namespace

void write_synthetic_human_csv(std::ostream& out, const SyntheticHumanSpec& spec) {
  if (spec.teams <= 0) throw ConfigError("teams must be > 0");
  if (spec.min_players < 1 || spec.max_players < spec.min_players) throw ConfigError("bad player count range");
  auto cols = human_csv_columns();
  cols.emplace_back("course_plan_2");
  util::write_csv_row(out, cols);
  const auto treatments = all_treatments();
  SamplingSpec sampling;
  for (int i = 0; i < spec.teams; ++i) {
    util::Rng rng(util::derive_seed(spec.seed, {0x4a11, static_cast<std::uint64_t>(i)}));
    const Treatment t = treatments[static_cast<std::size_t>(i) % treatments.size()];
    const ActionSet bits = spec.model.sample(t, Persona::None, rng);
    std::vector<std::string> row{std::to_string(i + 1), std::string(to_string(t.ai_accuracy)),
                                 std::string(to_string(t.crew_training)), std::string(to_string(t.china_posture))};
    for (const auto& a : catalog().actions()) row.emplace_back(bits.test(a.index) ? "1" : "0");
    row.emplace_back(kHumanEndStates[rng.uniform_index(kHumanEndStates.size())]);
    row.emplace_back(kHumanEndStates[rng.uniform_index(kHumanEndStates.size())]);
    const auto players =
        static_cast<std::size_t>(rng.uniform_int(spec.min_players, spec.max_players));
    const TeamComposition team = sample_team(sampling, nullptr, rng, players);
    std::vector<std::string> ages, genders, educations, expertises;
    for (const auto& p : team) {
      ages.push_back(std::to_string(p.age));
      genders.push_back(p.gender);
      educations.push_back(p.education);
      expertises.push_back(p.expertise);
    }
    row.push_back(util::join(ages, ";"));
    row.push_back(util::join(genders, ";"));
    row.push_back(util::join(educations, ";"));
    row.push_back(util::join(expertises, ";"));
    row.emplace_back("Coordinate with allies and keep forces ready");
    util::write_csv_row(out, row);
  }
}

std::vector<GameRecord> synthetic_records(const ResponseModel& model, const std::vector<SyntheticArm>& arms,
                                          std::uint64_t seed, const std::string& experiment, Persona persona) {
  std::vector<GameRecord> out;
  SamplingSpec sampling;
  for (std::size_t a = 0; a < arms.size(); ++a) {
    for (int g = 0; g < arms[a].games; ++g) {
      util::Rng rng(util::derive_seed(seed, {a, static_cast<std::uint64_t>(g)}));
      GameRecord r;
      r.game_id = experiment + "-arm" + std::to_string(a) + "-" + std::to_string(g);
      r.experiment = experiment;
      r.source = RecordSource::Llm;
      r.status = RecordStatus::Complete;
      r.team_index = g;
      r.treatment = arms[a].treatment;
      r.variant.persona = persona;
      r.seed = rng.next();
      r.backend = {"generator", "response-model", "", 1.0, ""};
      ResponseVector rv;
      rv.selections = model.sample(arms[a].treatment, persona, rng);
      r.response = rv;
      r.team = sample_team(sampling, nullptr, rng);
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace wargame
