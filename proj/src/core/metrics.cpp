#include "wargame/core/metrics.hpp"

#include <bit>
#include <vector>

#include "wargame/kernels/kernels.hpp"
#include "wargame/util/error.hpp"

namespace wargame {

int chosen_count(ActionSet v, Move m) noexcept { return std::popcount(v.packed() & catalog().move_mask(m)); }

double aggressiveness_index(ActionSet v, Move m) noexcept {
  const auto& cat = catalog();
  const int agg = std::popcount(v.packed() & cat.stance_mask(m, Stance::Aggressive));
  const int des = std::popcount(v.packed() & cat.stance_mask(m, Stance::DeEscalatory));
  const int chosen = agg + des;
  return chosen == 0 ? 0.0 : static_cast<double>(agg - des) / chosen;
}

MoveStance move_stance_label(ActionSet v, Move m) noexcept {
  const double idx = aggressiveness_index(v, m);
  if (idx > 0) return MoveStance::Aggressive;
  if (idx < 0) return MoveStance::DeEscalatory;
  return MoveStance::Neutral;
}

namespace {

void batch_counts(std::span<const std::uint32_t> packed, Move m, std::vector<std::uint32_t>& agg,
                  std::vector<std::uint32_t>& des) {
  const auto& cat = catalog();
  agg.resize(packed.size());
  des.resize(packed.size());
  kernels::stance_counts(packed, cat.stance_mask(m, Stance::Aggressive), cat.stance_mask(m, Stance::DeEscalatory), agg,
                         des);
}

}  // namespace

void aggressiveness_indices(std::span<const std::uint32_t> packed, Move m, std::span<double> out) {
  if (out.size() != packed.size()) throw ConfigError("aggressiveness_indices: output size mismatch");
  std::vector<std::uint32_t> agg, des;
  batch_counts(packed, m, agg, des);
  for (std::size_t i = 0; i < packed.size(); ++i) {
    const auto chosen = static_cast<int>(agg[i] + des[i]);
    out[i] = chosen == 0 ? 0.0 : static_cast<double>(static_cast<int>(agg[i]) - static_cast<int>(des[i])) / chosen;
  }
}

void move_stance_labels(std::span<const std::uint32_t> packed, Move m, std::span<MoveStance> out) {
  if (out.size() != packed.size()) throw ConfigError("move_stance_labels: output size mismatch");
  std::vector<std::uint32_t> agg, des;
  batch_counts(packed, m, agg, des);
  for (std::size_t i = 0; i < packed.size(); ++i)
    out[i] = agg[i] > des[i] ? MoveStance::Aggressive : (agg[i] < des[i] ? MoveStance::DeEscalatory : MoveStance::Neutral);
}

std::string_view to_string(MoveStance s) noexcept {
  switch (s) {
    case MoveStance::Aggressive:
      return "aggressive";
    case MoveStance::DeEscalatory:
      return "de-escalatory";
    case MoveStance::Neutral:
      break;
  }
  return "neutral";
}

}  // namespace wargame
