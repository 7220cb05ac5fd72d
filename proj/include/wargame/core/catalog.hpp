#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace wargame {

enum class Move : std::uint8_t { One = 1, Two = 2 };

enum class Stance : std::uint8_t { Aggressive, DeEscalatory };

inline constexpr std::size_t kActionCount = 21;
inline constexpr std::size_t kMove1ActionCount = 7;
inline constexpr std::size_t kMove2ActionCount = 14;

// Schema tag for the bit order below; embedded in every serialized record.
inline constexpr std::string_view kActionsSchema = "actions-v1";

// One selectable action. `index` is the bit position in a response vector:
// Move 1 a-g occupy 0..6, Move 2 a, a1, a2, a3, b-k occupy 7..20.
struct Action {
  std::size_t index;
  Move move;
  std::string_view code;   // "b", "a1"
  std::string_view label;  // "(b)", "(a)(1)"
  std::string_view key;    // "m1_b", "m2_a1"; CSV column and JSON name
  std::string_view title;  // option text as shown to players
  Stance stance;
};

class ActionCatalog {
 public:
  std::span<const Action> actions() const noexcept { return actions_; }
  std::span<const Action> actions(Move m) const noexcept;

  const Action& at(std::size_t index) const { return actions_.at(index); }
  std::optional<std::size_t> find(Move m, std::string_view code) const noexcept;
  std::optional<std::size_t> find_key(std::string_view key) const noexcept;

  Stance stance(std::size_t index) const { return actions_.at(index).stance; }

  // Bit masks over the packed 21-bit representation.
  std::uint32_t move_mask(Move m) const noexcept;
  std::uint32_t stance_mask(Move m, Stance s) const noexcept;

  static const ActionCatalog& instance();

 private:
  ActionCatalog();
  std::array<Action, kActionCount> actions_;
};

// The canonical immutable catalog.
inline const ActionCatalog& catalog() { return ActionCatalog::instance(); }

constexpr std::size_t move_offset(Move m) noexcept { return m == Move::One ? 0 : kMove1ActionCount; }
constexpr std::size_t move_size(Move m) noexcept { return m == Move::One ? kMove1ActionCount : kMove2ActionCount; }

std::string_view to_string(Move m) noexcept;
std::string_view to_string(Stance s) noexcept;

}  // namespace wargame
