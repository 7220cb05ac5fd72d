#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "wargame/core/catalog.hpp"
#include "wargame/core/team.hpp"
#include "wargame/core/treatment.hpp"
#include "wargame/scenario/scenario.hpp"

namespace wargame {

enum class Persona : std::uint8_t { None, StrictPacifists, AggressiveSociopaths };

std::string_view to_string(Persona p) noexcept;
Persona parse_persona(std::string_view s);

inline constexpr int kDefaultWordsPerChunk = 350;

struct PromptVariant {
  bool include_priorities = true;
  bool roleplay_emphasis = false;
  bool disagreement_emphasis = false;
  Persona persona = Persona::None;
  int dialog_chunks = 3;  // 0 = direct-answer mode
  int words_per_chunk = kDefaultWordsPerChunk;

  bool direct_answer() const noexcept { return dialog_chunks == 0; }
  friend bool operator==(const PromptVariant&, const PromptVariant&) = default;
};

// The six NSC deputies roles, assigned to players in team order.
inline constexpr std::array<std::string_view, kTeamSize> kPlayerRoles{
    "Deputy National Security Advisor (Chair)",
    "Deputy Secretary of Defense (DEPSECDEF)",
    "Vice Chairman Joint Chiefs of Staff (VCJCS)",
    "Deputy Director of National Intelligence",
    "Deputy Secretary of State",
    "USINDOPACOM Commander",
};

// Assembles every text sent to players from a ScenarioScript. All methods are
// pure: identical inputs produce byte-identical text.
class PromptBuilder {
 public:
  explicit PromptBuilder(const ScenarioScript& script) : script_(&script) {}

  // Instruction text followed by one background paragraph per player.
  std::string system_prompt(const TeamComposition& team, const PromptVariant& variant) const;
  // Briefing, treatment inserts and the Move 1 question; ends with option (g).
  std::string move1_prompt(const Treatment& t, const PromptVariant& variant) const;
  // Move 2 situation, posture-specific reporting and the Move 2 question.
  std::string move2_prompt(ChinaPosture posture) const;
  // Chunk 0 asks for a simulated dialog on the move's questions; later chunks continue it.
  std::string dialog_instruction(Move m, int chunk_index, const PromptVariant& variant) const;
  // Request for the final selections in enumerated-letter form.
  std::string answer_elicitation(Move m, const PromptVariant& variant) const;
  // Transition into Move 2 whose reply is discarded.
  std::string move2_handshake(const PromptVariant& variant) const;
  std::string reelicit_reminder() const;

  // One player's background paragraph (1-based player number).
  std::string player_description(std::size_t player, const PlayerProfile& p, Persona persona) const;
  std::string_view persona_sentence(Persona p) const;

  const ScenarioScript& script() const noexcept { return *script_; }

 private:
  const std::string& block(std::string_view id) const { return script_->block(id); }
  const ScenarioScript* script_;
};

}  // namespace wargame
