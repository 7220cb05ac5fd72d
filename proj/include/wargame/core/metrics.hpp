#pragma once

#include <cstdint>
#include <span>

#include "wargame/core/response.hpp"

namespace wargame {

enum class MoveStance : std::uint8_t { Aggressive, DeEscalatory, Neutral };

// Number of chosen actions in move m.
int chosen_count(ActionSet v, Move m) noexcept;

// (aggressive - de-escalatory) / chosen over move m; 0 when nothing is chosen.
double aggressiveness_index(ActionSet v, Move m) noexcept;

// Sign of the aggressiveness index; Neutral covers both a zero index and an empty move.
MoveStance move_stance_label(ActionSet v, Move m) noexcept;

// Batched aggressiveness indices over packed vectors (SIMD kernels underneath).
void aggressiveness_indices(std::span<const std::uint32_t> packed, Move m, std::span<double> out);
void move_stance_labels(std::span<const std::uint32_t> packed, Move m, std::span<MoveStance> out);

std::string_view to_string(MoveStance s) noexcept;

}  // namespace wargame
