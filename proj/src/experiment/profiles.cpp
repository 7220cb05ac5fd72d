#include "wargame/experiment/profiles.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "wargame/util/csv.hpp"
#include "wargame/util/error.hpp"
#include "wargame/util/hash.hpp"
#include "wargame/util/text.hpp"

namespace wargame {

std::string_view to_string(SamplingMode m) noexcept {
  switch (m) {
    case SamplingMode::BootstrapFromDataset:
      return "bootstrap";
    case SamplingMode::FixedPersona:
      return "fixed-persona";
    case SamplingMode::UniformRandom:
      break;
  }
  return "uniform";
}

SamplingMode parse_sampling_mode(std::string_view s) {
  const std::string v = util::to_lower(util::trim(s));
  if (v == "bootstrap") return SamplingMode::BootstrapFromDataset;
  if (v == "uniform") return SamplingMode::UniformRandom;
  if (v == "fixed-persona") return SamplingMode::FixedPersona;
  throw ConfigError("unknown sampling mode '" + std::string(s) + "' (expected bootstrap|uniform|fixed-persona)");
}

ProfileDataset load_profiles(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read profile dataset " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string content = buf.str();
  std::istringstream parse(content);
  const auto rows = util::read_csv(parse);
  if (rows.empty()) throw SchemaError(path.string() + ": empty profile file");

  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < rows[0].cells.size(); ++i) col[util::to_lower(util::trim(rows[0].cells[i]))] = i;
  for (const char* required : {"age", "gender", "education", "expertise"})
    if (!col.count(required)) throw SchemaError(path.string() + ": missing column '" + required + "'");
  const bool has_traits = col.count("free_traits") > 0;

  ProfileDataset ds;
  ds.provenance = path.filename().string() + " sha256:" + util::sha256_hex(content);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& cells = rows[r].cells;
    const std::string where = path.string() + ":" + std::to_string(rows[r].line);
    if (cells.size() == 1 && util::trim(cells[0]).empty()) continue;
    if (cells.size() != rows[0].cells.size())
      throw SchemaError(where + ": expected " + std::to_string(rows[0].cells.size()) + " cells, got " +
                        std::to_string(cells.size()));
    PlayerProfile p;
    try {
      std::size_t used = 0;
      const std::string age(util::trim(cells[col["age"]]));
      p.age = std::stoi(age, &used);
      if (used != age.size()) throw std::invalid_argument("age");
    } catch (const std::exception&) {
      throw SchemaError(where + ": age '" + cells[col["age"]] + "' is not an integer");
    }
    p.gender = util::trim(cells[col["gender"]]);
    p.education = util::trim(cells[col["education"]]);
    p.expertise = util::trim(cells[col["expertise"]]);
    if (has_traits) p.free_traits = util::trim(cells[col["free_traits"]]);
    try {
      validate_profile(p);
    } catch (const Error& e) {
      throw SchemaError(where + ": " + e.what());
    }
    ds.rows.push_back(std::move(p));
  }
  return ds;
}

namespace {

template <typename V>
const auto& pick(const V& v, util::Rng& rng) {
  return v.at(rng.uniform_index(v.size()));
}

PlayerProfile uniform_player(const Vocabularies& vocab, util::Rng& rng) {
  if (vocab.genders.empty() || vocab.educations.empty() || vocab.expertises.empty())
    throw ConfigError("sampling vocabularies must be non-empty");
  if (vocab.min_age > vocab.max_age) throw ConfigError("sampling age range is empty");
  PlayerProfile p;
  p.age = static_cast<int>(rng.uniform_int(vocab.min_age, vocab.max_age));
  p.gender = pick(vocab.genders, rng);
  p.education = pick(vocab.educations, rng);
  p.expertise = pick(vocab.expertises, rng);
  return p;
}

}  // namespace

TeamComposition sample_team(const SamplingSpec& spec, const ProfileDataset* dataset, util::Rng& rng,
                            std::size_t size) {
  TeamComposition team;
  team.reserve(size);
  switch (spec.mode) {
    case SamplingMode::BootstrapFromDataset:
      if (!dataset || dataset->rows.empty()) throw ConfigError("bootstrap sampling needs a non-empty profile dataset");
      for (std::size_t i = 0; i < size; ++i) team.push_back(pick(dataset->rows, rng));
      break;
    case SamplingMode::UniformRandom:
      for (std::size_t i = 0; i < size; ++i) team.push_back(uniform_player(spec.vocab, rng));
      break;
    case SamplingMode::FixedPersona:
      if (spec.persona == Persona::None) throw ConfigError("fixed-persona sampling needs a persona");
      for (std::size_t i = 0; i < size; ++i) {
        team.push_back(uniform_player(spec.vocab, rng));
        team.back().free_traits = std::string(to_string(spec.persona));
      }
      break;
  }
  for (const auto& p : team) validate_profile(p);
  return team;
}

void write_synthetic_profiles(std::ostream& out, std::size_t rows, std::uint64_t seed) {
  util::Rng rng(util::derive_seed(seed, {0x9e0f11e5}));
  util::write_csv_row(out, {"age", "gender", "education", "expertise", "free_traits"});
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string expertise(kExpertiseVocabulary[rng.uniform_index(kExpertiseVocabulary.size())]);
    // Academics skew toward doctorates, military officers toward master's degrees.
    std::string education;
    const double u = rng.unit();
    if (expertise == "academic")
      education = u < 0.7 ? "doctorate" : "master";
    else if (expertise == "military")
      education = u < 0.6 ? "master" : (u < 0.9 ? "bachelor" : "doctorate");
    else
      education = std::string(kEducationVocabulary[rng.uniform_index(kEducationVocabulary.size())]);
    const double g = rng.unit();
    const std::string gender = g < 0.62 ? "male" : (g < 0.96 ? "female" : (g < 0.98 ? "non-binary" : "undisclosed"));
    const int age = static_cast<int>(rng.uniform_int(expertise == "academic" ? 28 : 30, 68));
    util::write_csv_row(out, {std::to_string(age), gender, education, expertise, ""});
  }
}

}  // namespace wargame
