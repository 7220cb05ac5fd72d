#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace wargame {

// Documented categorical vocabularies for player demographics. The labels
// are conventions of this tool; see README "Player profiles".
inline constexpr std::array<std::string_view, 4> kGenderVocabulary{"female", "male", "non-binary", "undisclosed"};
inline constexpr std::array<std::string_view, 4> kEducationVocabulary{"bachelor", "master", "doctorate", "other"};
inline constexpr std::array<std::string_view, 4> kExpertiseVocabulary{"academic", "intelligence", "military",
                                                                      "government"};
inline constexpr int kMinAge = 18;
inline constexpr int kMaxAge = 100;
inline constexpr std::size_t kTeamSize = 6;

struct PlayerProfile {
  int age = 0;
  std::string gender;
  std::string education;
  std::string expertise;
  std::string free_traits;  // optional

  friend bool operator==(const PlayerProfile&, const PlayerProfile&) = default;
};

using TeamComposition = std::vector<PlayerProfile>;

// Throws ConfigError naming the first offending field.
void validate_profile(const PlayerProfile& p);

}  // namespace wargame
