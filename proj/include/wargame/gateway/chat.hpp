#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wargame/core/catalog.hpp"
#include "wargame/core/treatment.hpp"
#include "wargame/scenario/prompts.hpp"
#include "wargame/util/error.hpp"

namespace wargame {

enum class Role : std::uint8_t { System, User, Assistant };
std::string_view to_string(Role r) noexcept;
Role parse_role(std::string_view s);

struct ChatTurn {
  Role role;
  std::string content;

  friend bool operator==(const ChatTurn&, const ChatTurn&) = default;
};

// What the session asks for with a given request.
enum class TurnKind : std::uint8_t { Dialog, Answer, Handshake, Reelicit };
std::string_view to_string(TurnKind k) noexcept;

struct CompletionRequest {
  std::string game_key;
  int turn_index = 0;  // assistant turn number within the game, from 0
  std::vector<ChatTurn> history;
  int budget_words = 0;
  TurnKind kind = TurnKind::Dialog;
  Move move = Move::One;
  int chunk_index = 0;
  // Context for offline backends; never sent over the wire.
  Treatment treatment;
  PromptVariant variant;
  std::uint64_t seed = 0;
};

// 1 word ~= 1.4 tokens.
inline constexpr int kTokensPerTenWords = 14;

struct GenerationParams {
  int max_tokens = 0;
};

// Token ceiling for a word budget: ceil(words * 1.4). Throws ConfigError for budgets <= 0.
GenerationParams word_budget_hint(int budget_words);

// Identifies the player backend in records and transcripts.
struct BackendDescriptor {
  std::string kind;  // "scripted", "synthetic", "http"
  std::string model;
  std::string endpoint;
  double temperature = 1.0;
  std::string fixture_sha256;

  friend bool operator==(const BackendDescriptor&, const BackendDescriptor&) = default;
};

struct BackendReply {
  std::string text;
  int attempts = 1;
};

// A player backend. Implementations must be safe to call from several
// sessions at once.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual BackendReply complete(const CompletionRequest& request, const GenerationParams& params) = 0;
  virtual BackendDescriptor descriptor() const = 0;
};

class GatewayError : public Error {
 public:
  using Error::Error;
  virtual std::string_view type() const noexcept { return "GatewayError"; }
};

#define WARGAME_GATEWAY_ERROR(Name)                                        \
  class Name : public GatewayError {                                       \
   public:                                                                 \
    using GatewayError::GatewayError;                                      \
    std::string_view type() const noexcept override { return #Name; }      \
  }

WARGAME_GATEWAY_ERROR(AuthError);
WARGAME_GATEWAY_ERROR(RateLimited);
WARGAME_GATEWAY_ERROR(ContextOverflow);
WARGAME_GATEWAY_ERROR(TransportError);
WARGAME_GATEWAY_ERROR(FixtureMiss);

#undef WARGAME_GATEWAY_ERROR

// Hex SHA-256 over the canonical JSON of model, temperature, token limit and messages.
std::string request_hash(const BackendDescriptor& backend, const std::vector<ChatTurn>& history,
                         const GenerationParams& params);

}  // namespace wargame
