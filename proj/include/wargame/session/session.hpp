#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wargame/gateway/gateway.hpp"
#include "wargame/session/record.hpp"

namespace wargame {

enum class Phase : std::uint8_t { Briefing, Move1Dialog, Move1Answer, Move2Brief, Move2Dialog, Move2Answer, Complete, Failed };
std::string_view to_string(Phase p) noexcept;

// Everything that identifies one game before it is played.
struct GameSetup {
  std::string game_id;
  std::string experiment;
  int team_index = -1;
  TeamComposition team;
  Treatment treatment;
  PromptVariant variant;
  std::uint64_t seed = 0;
};

inline constexpr int kMaxReelicits = 2;
inline constexpr int kAnswerBudgetWords = 250;
inline constexpr int kHandshakeBudgetWords = 40;

// One LLM game as an explicit state machine. Each step() sends at most one
// request. The Move 1 answer is parsed and frozen before any Move 2 text is
// appended; Move 2 prompts depend only on the posture and the variant.
class GameSession {
 public:
  GameSession(const PromptBuilder& prompts, Gateway& gateway, GameSetup setup);

  Phase phase() const noexcept { return phase_; }
  int chunk() const noexcept { return chunk_; }
  bool done() const noexcept { return phase_ == Phase::Complete || phase_ == Phase::Failed; }
  const std::vector<ChatTurn>& history() const noexcept { return history_; }
  int requests_sent() const noexcept { return turn_index_; }

  // Advances one phase or dialog chunk. Gateway errors propagate and leave
  // the session where it was.
  void step();

  // Snapshot; Incomplete until the session is done.
  GameRecord record() const;

 private:
  Move current_move() const noexcept;
  MoveRecord& move_record() { return moves_[current_move() == Move::One ? 0 : 1]; }
  void push_user(std::string text);
  // Sends the prompt unless a previous attempt already did and is unanswered.
  void prompt(std::string text);
  std::string request(TurnKind kind, int budget_words);
  void after_brief(Move m);
  void answer_step();

  const PromptBuilder* prompts_;
  Gateway* gateway_;
  GameSetup setup_;
  BackendDescriptor backend_;
  Phase phase_ = Phase::Briefing;
  int chunk_ = 0;
  int turn_index_ = 0;
  bool awaiting_reply_ = false;
  std::vector<ChatTurn> history_;
  std::vector<MoveRecord> moves_;
  ResponseVector response_;
  std::string failure_;
  std::string started_at_;
  std::string finished_at_;
};

// A backend error ended the game; the partial record keeps every turn so far.
class SessionAborted : public Error {
 public:
  SessionAborted(const std::string& what, GameRecord partial, std::string error_type)
      : Error(what), partial_(std::move(partial)), error_type_(std::move(error_type)) {}
  const GameRecord& partial() const noexcept { return partial_; }
  const std::string& error_type() const noexcept { return error_type_; }

 private:
  GameRecord partial_;
  std::string error_type_;
};

// Plays one game to Complete or Failed. Unparseable answers are re-elicited
// up to kMaxReelicits times before the game is recorded as Failed.
// Throws SessionAborted on backend errors, ConfigError on a bad setup.
GameRecord run_game(const PromptBuilder& prompts, Gateway& gateway, const GameSetup& setup);

// Terminal-like channel for human play. ask() returns nullopt when the
// operator aborts (end of input).
class InteractiveChannel {
 public:
  virtual ~InteractiveChannel() = default;
  virtual void show(std::string_view text) = 0;
  virtual std::optional<std::string> ask(std::string_view prompt) = 0;
};

class StreamChannel : public InteractiveChannel {
 public:
  StreamChannel(std::istream& in, std::ostream& out) : in_(&in), out_(&out) {}
  void show(std::string_view text) override;
  std::optional<std::string> ask(std::string_view prompt) override;

 private:
  std::istream* in_;
  std::ostream* out_;
};

// Operator letter entry such as "b,e", "a1 c" or "none". Returns nullopt
// when any token is not an option of the move.
std::optional<ActionSet> parse_letter_entry(std::string_view input, Move move);

// Presents the same scenario text to a human team and records their
// selections. An abort yields an Incomplete record.
GameRecord run_human_game(const PromptBuilder& prompts, InteractiveChannel& io, const GameSetup& setup);

}  // namespace wargame
