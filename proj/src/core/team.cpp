#include "wargame/core/team.hpp"

#include <algorithm>

#include "wargame/util/error.hpp"

namespace wargame {
namespace {

template <std::size_t N>
void check_vocab(const std::string& value, const std::array<std::string_view, N>& vocab, const char* field) {
  if (value.empty()) throw ConfigError(std::string("player profile is missing required field '") + field + "'");
  if (std::find(vocab.begin(), vocab.end(), value) == vocab.end())
    throw ConfigError(std::string("player profile field '") + field + "' has unknown value '" + value + "'");
}

}  // namespace

void validate_profile(const PlayerProfile& p) {
  if (p.age == 0) throw ConfigError("player profile is missing required field 'age'");
  if (p.age < kMinAge || p.age > kMaxAge)
    throw ConfigError("player profile field 'age' out of range [18, 100]: " + std::to_string(p.age));
  check_vocab(p.gender, kGenderVocabulary, "gender");
  check_vocab(p.education, kEducationVocabulary, "education");
  check_vocab(p.expertise, kExpertiseVocabulary, "expertise");
}

}  // namespace wargame
