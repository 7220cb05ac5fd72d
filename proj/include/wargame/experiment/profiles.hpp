#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "wargame/core/team.hpp"
#include "wargame/scenario/prompts.hpp"
#include "wargame/util/rng.hpp"

namespace wargame {

enum class SamplingMode : std::uint8_t { BootstrapFromDataset, UniformRandom, FixedPersona };
std::string_view to_string(SamplingMode m) noexcept;
SamplingMode parse_sampling_mode(std::string_view s);

struct ProfileDataset {
  std::vector<PlayerProfile> rows;
  std::string provenance;  // file name and sha256, or "generated"
};

// CSV with columns age, gender, education, expertise and optional free_traits.
// Throws SchemaError with the line number of the first bad row.
ProfileDataset load_profiles(const std::filesystem::path& path);

// Value sets used by UniformRandom sampling.
struct Vocabularies {
  int min_age = 25;
  int max_age = 70;
  std::vector<std::string> genders{kGenderVocabulary.begin(), kGenderVocabulary.end()};
  std::vector<std::string> educations{kEducationVocabulary.begin(), kEducationVocabulary.end()};
  std::vector<std::string> expertises{kExpertiseVocabulary.begin(), kExpertiseVocabulary.end()};
};

struct SamplingSpec {
  SamplingMode mode = SamplingMode::UniformRandom;
  Persona persona = Persona::None;  // required for FixedPersona
  Vocabularies vocab;
};

// Bootstrap draws whole dataset rows with replacement; UniformRandom draws
// each attribute independently; FixedPersona draws like UniformRandom and
// writes the persona label into every player's traits.
// Throws ConfigError for an empty dataset under Bootstrap.
TeamComposition sample_team(const SamplingSpec& spec, const ProfileDataset* dataset, util::Rng& rng,
                            std::size_t size = kTeamSize);

// Profiles drawn from the default vocabularies with a mild correlation
// between expertise and education, for the bundled dataset.
void write_synthetic_profiles(std::ostream& out, std::size_t rows, std::uint64_t seed);

}  // namespace wargame
