#include "wargame/core/catalog.hpp"

namespace wargame {
namespace {

constexpr Stance kAgg = Stance::Aggressive;
constexpr Stance kDes = Stance::DeEscalatory;

// Stances follow the published aggressive / de-escalatory classification.
constexpr std::array<Action, kActionCount> kActions{{
    {0, Move::One, "a", "(a)", "m1_a",
     "Fire at Chinese vessels within close proximity of CSG with any weapon mission commander deems appropriate", kAgg},
    {1, Move::One, "b", "(b)", "m1_b", "Hold fire unless fired upon", kDes},
    {2, Move::One, "c", "(c)", "m1_c", "Hold fire without approval from President", kDes},
    {3, Move::One, "d", "(d)", "m1_d", "Place automated defenses on auto-fire. AI decides target/AI decides firing.", kAgg},
    {4, Move::One, "e", "(e)", "m1_e",
     "Place automated defenses on manual firing control. AI decides target/human decides firing.", kAgg},
    {5, Move::One, "f", "(f)", "m1_f", "Human decides target/human decides firing", kAgg},
    {6, Move::One, "g", "(g)", "m1_g", "Hold fire at all costs", kDes},
    {7, Move::Two, "a", "(a)", "m2_a", "Military Action", kAgg},
    {8, Move::Two, "a1", "(a)(1)", "m2_a1", "Preserve Status Quo/Deter", kAgg},
    {9, Move::Two, "a2", "(a)(2)", "m2_a2", "Invade/Attack", kAgg},
    {10, Move::Two, "a3", "(a)(3)", "m2_a3", "Defend", kAgg},
    {11, Move::Two, "b", "(b)", "m2_b", "Activate Civilian Reserve/Draft", kAgg},
    {12, Move::Two, "c", "(c)", "m2_c", "Surge Domestic Defense Production", kAgg},
    {13, Move::Two, "d", "(d)", "m2_d", "Diplomacy", kDes},
    {14, Move::Two, "e", "(e)", "m2_e", "Economic Punishment", kAgg},
    {15, Move::Two, "f", "(f)", "m2_f", "Economic Incentives", kDes},
    {16, Move::Two, "g", "(g)", "m2_g", "Clandestine/Special Operations", kAgg},
    {17, Move::Two, "h", "(h)", "m2_h", "Information Operations", kAgg},
    {18, Move::Two, "i", "(i)", "m2_i", "Conduct Foreign Intelligence", kAgg},
    {19, Move::Two, "j", "(j)", "m2_j", "Conduct Domestic Intelligence", kAgg},
    {20, Move::Two, "k", "(k)", "m2_k", "Cyber Operations", kAgg},
}};

}  // namespace

ActionCatalog::ActionCatalog() : actions_(kActions) {}

const ActionCatalog& ActionCatalog::instance() {
  static const ActionCatalog cat;
  return cat;
}

std::span<const Action> ActionCatalog::actions(Move m) const noexcept {
  return std::span<const Action>(actions_).subspan(move_offset(m), move_size(m));
}

std::optional<std::size_t> ActionCatalog::find(Move m, std::string_view code) const noexcept {
  for (const Action& a : actions(m))
    if (a.code == code) return a.index;
  return std::nullopt;
}

std::optional<std::size_t> ActionCatalog::find_key(std::string_view key) const noexcept {
  for (const Action& a : actions_)
    if (a.key == key) return a.index;
  return std::nullopt;
}

std::uint32_t ActionCatalog::move_mask(Move m) const noexcept {
  return ((1u << move_size(m)) - 1u) << move_offset(m);
}

std::uint32_t ActionCatalog::stance_mask(Move m, Stance s) const noexcept {
  std::uint32_t mask = 0;
  for (const Action& a : actions(m))
    if (a.stance == s) mask |= 1u << a.index;
  return mask;
}

std::string_view to_string(Move m) noexcept { return m == Move::One ? "move1" : "move2"; }

std::string_view to_string(Stance s) noexcept { return s == Stance::Aggressive ? "aggressive" : "de-escalatory"; }

}  // namespace wargame
