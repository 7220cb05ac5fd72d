#include "wargame/scenario/prompts.hpp"

#include "wargame/util/error.hpp"
#include "wargame/util/text.hpp"

namespace wargame {

std::string_view to_string(Persona p) noexcept {
  switch (p) {
    case Persona::StrictPacifists:
      return "strict-pacifists";
    case Persona::AggressiveSociopaths:
      return "aggressive-sociopaths";
    case Persona::None:
      break;
  }
  return "none";
}

Persona parse_persona(std::string_view s) {
  const std::string v = util::to_lower(util::trim(s));
  if (v.empty() || v == "none") return Persona::None;
  if (v == "strict-pacifists" || v == "pacifists") return Persona::StrictPacifists;
  if (v == "aggressive-sociopaths" || v == "sociopaths") return Persona::AggressiveSociopaths;
  throw ConfigError("unknown persona '" + std::string(s) + "' (expected none|strict-pacifists|aggressive-sociopaths)");
}

std::string_view PromptBuilder::persona_sentence(Persona p) const {
  switch (p) {
    case Persona::StrictPacifists:
      return block("persona-strict-pacifists");
    case Persona::AggressiveSociopaths:
      return block("persona-aggressive-sociopaths");
    case Persona::None:
      break;
  }
  return {};
}

std::string PromptBuilder::player_description(std::size_t player, const PlayerProfile& p, Persona persona) const {
  validate_profile(p);
  std::string s = "Player " + std::to_string(player) + " (" + std::string(kPlayerRoles.at(player - 1)) + "): age " +
                  std::to_string(p.age) + "; gender " + p.gender + "; education " + p.education + "; expertise " +
                  p.expertise + ".";
  if (persona != Persona::None) {
    s += " ";
    s += persona_sentence(persona);
  } else if (!p.free_traits.empty()) {
    s += " Personal traits: " + p.free_traits;
  }
  return s;
}

std::string PromptBuilder::system_prompt(const TeamComposition& team, const PromptVariant& variant) const {
  if (team.size() != kTeamSize)
    throw ConfigError("team size must be " + std::to_string(kTeamSize) + " players, got " +
                      std::to_string(team.size()));
  std::string s = block("llm-preamble");
  if (variant.roleplay_emphasis) s += " " + block("roleplay-emphasis");
  if (variant.disagreement_emphasis) s += " " + block("disagreement-emphasis");
  s += "\n\n" + block("players-heading");
  for (std::size_t i = 0; i < team.size(); ++i) s += "\n" + player_description(i + 1, team[i], variant.persona);
  return s;
}

std::string PromptBuilder::move1_prompt(const Treatment& t, const PromptVariant& variant) const {
  std::string s = block("introduction");
  for (std::string_view id : {"incident", "roles", "forces", "new-technology"}) s += "\n\n" + block(id);
  if (variant.include_priorities) s += "\n\n" + block("priorities");
  s += "\n\n" + block("recommendation");
  s += "\n\n" + block("move1-heading");
  s += "\n\n" + util::replace_all(block("accuracy-insert"), "{{accuracy}}", accuracy_range(t.ai_accuracy));
  s += "\n\n" + block(t.crew_training == CrewTraining::Basic ? "training-basic" : "training-extensive");
  s += "\n\n" + block("move1-questions");
  return s;
}

std::string PromptBuilder::move2_prompt(ChinaPosture posture) const {
  return block("move2-global-response") + "\n\n" +
         block(posture == ChinaPosture::Revisionist ? "move2-reporting-revisionist" : "move2-reporting-status-quo") +
         "\n\n" + block("move2-questions");
}

std::string PromptBuilder::dialog_instruction(Move m, int chunk_index, const PromptVariant& variant) const {
  if (chunk_index < 0 || chunk_index >= variant.dialog_chunks)
    throw ConfigError("dialog chunk index " + std::to_string(chunk_index) + " outside [0, " +
                      std::to_string(variant.dialog_chunks) + ")");
  const std::string words = std::to_string(variant.words_per_chunk);
  if (chunk_index > 0) return util::replace_all(block("dialog-continue"), "{{words}}", words);
  return block("dialog-instruction") + "\n" + block(m == Move::One ? "move1-questions" : "move2-questions") + "\n\n" +
         util::replace_all(block("dialog-length"), "{{words}}", words);
}

std::string PromptBuilder::answer_elicitation(Move m, const PromptVariant& variant) const {
  std::string s;
  if (variant.direct_answer()) s = block("direct-answer-instruction") + "\n\n";
  s += block("answer-request") + "\n\n";
  if (m == Move::One) {
    s += block("move1-end-state-question") + "\n" + block("move1-selection-form") + "\n\n" + block("answer-format-move1");
  } else {
    s += block("move2-course-question") + "\n" + block("move2-selection-form") + "\n" +
         block("move2-end-state-question") + "\n\n" + block("answer-format-move2");
  }
  return s;
}

std::string PromptBuilder::move2_handshake(const PromptVariant& variant) const {
  return block("move2-transition") + " " + block(variant.direct_answer() ? "confirm-direct" : "move2-confirm");
}

std::string PromptBuilder::reelicit_reminder() const { return block("reelicit-reminder"); }

}  // namespace wargame
