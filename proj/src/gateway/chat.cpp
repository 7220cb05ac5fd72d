#include "wargame/gateway/chat.hpp"

#include <nlohmann/json.hpp>

#include "wargame/util/hash.hpp"

namespace wargame {

std::string_view to_string(Role r) noexcept {
  switch (r) {
    case Role::System:
      return "system";
    case Role::Assistant:
      return "assistant";
    case Role::User:
      break;
  }
  return "user";
}

Role parse_role(std::string_view s) {
  if (s == "system") return Role::System;
  if (s == "user") return Role::User;
  if (s == "assistant") return Role::Assistant;
  throw SchemaError("unknown chat role '" + std::string(s) + "'");
}

std::string_view to_string(TurnKind k) noexcept {
  switch (k) {
    case TurnKind::Answer:
      return "answer";
    case TurnKind::Handshake:
      return "handshake";
    case TurnKind::Reelicit:
      return "reelicit";
    case TurnKind::Dialog:
      break;
  }
  return "dialog";
}

GenerationParams word_budget_hint(int budget_words) {
  if (budget_words <= 0) throw ConfigError("word budget must be positive, got " + std::to_string(budget_words));
  // Integer ceil(words * 14 / 10).
  return GenerationParams{(budget_words * kTokensPerTenWords + 9) / 10};
}

std::string request_hash(const BackendDescriptor& backend, const std::vector<ChatTurn>& history,
                         const GenerationParams& params) {
  nlohmann::json messages = nlohmann::json::array();
  for (const auto& t : history) messages.push_back({{"role", to_string(t.role)}, {"content", t.content}});
  const nlohmann::json canon{{"model", backend.model},
                             {"temperature", backend.temperature},
                             {"max_tokens", params.max_tokens},
                             {"messages", messages}};
  return util::sha256_hex(canon.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace));
}

}  // namespace wargame
