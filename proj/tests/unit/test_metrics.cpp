#include <cmath>
#include <vector>

#include "doctest.h"
#include "support/oracle.hpp"
#include "wargame/core/metrics.hpp"
#include "wargame/util/rng.hpp"

using namespace wargame;

namespace {
ActionSet with(Move m, std::initializer_list<const char*> codes) {
  ActionSet s;
  for (const char* c : codes) s.set(*catalog().find(m, c));
  return s;
}
}  // namespace

TEST_CASE("aggressiveness examples") {
  CHECK(aggressiveness_index(with(Move::One, {"a", "d"}), Move::One) == 1.0);
  CHECK(aggressiveness_index(with(Move::One, {"b", "e"}), Move::One) == 0.0);
  CHECK(aggressiveness_index(with(Move::Two, {"d", "f", "e"}), Move::Two) == doctest::Approx(-1.0 / 3.0));
  CHECK(aggressiveness_index(ActionSet{}, Move::One) == 0.0);
}

TEST_CASE("chosen count examples") {
  CHECK(chosen_count(ActionSet{}, Move::One) == 0);
  CHECK(chosen_count(ActionSet(catalog().move_mask(Move::Two)), Move::Two) == 14);
  CHECK(chosen_count(with(Move::One, {"b", "c", "g"}), Move::One) == 3);
  CHECK(chosen_count(with(Move::One, {"b", "c", "g"}), Move::Two) == 0);
}

TEST_CASE("stance label examples") {
  CHECK(move_stance_label(with(Move::One, {"a", "d"}), Move::One) == MoveStance::Aggressive);
  CHECK(move_stance_label(with(Move::One, {"b"}), Move::One) == MoveStance::DeEscalatory);
  CHECK(move_stance_label(with(Move::One, {"b", "e"}), Move::One) == MoveStance::Neutral);
  CHECK(move_stance_label(ActionSet{}, Move::Two) == MoveStance::Neutral);
}

TEST_CASE("exhaustive move 1 oracle") {
  for (std::uint32_t v = 0; v < 128; ++v) {
    const ActionSet s(v);
    CHECK(aggressiveness_index(s, Move::One) == oracle::brute_index(v, 1));
    const int sign = oracle::brute_sign(v, 1);
    const MoveStance expect = sign > 0 ? MoveStance::Aggressive : sign < 0 ? MoveStance::DeEscalatory : MoveStance::Neutral;
    CHECK(move_stance_label(s, Move::One) == expect);
    const double idx = aggressiveness_index(s, Move::One);
    CHECK(std::fabs(idx) <= 1.0);
    CHECK(chosen_count(s, Move::One) <= 7);
  }
}

TEST_CASE("index depends only on the move's bits") {
  util::Rng rng(5);
  for (int t = 0; t < 500; ++t) {
    const auto v = static_cast<std::uint32_t>(rng.next()) & ActionSet::kAllBits;
    const auto m1 = v & 0x7Fu;
    CHECK(aggressiveness_index(ActionSet(v), Move::One) == aggressiveness_index(ActionSet(m1), Move::One));
    CHECK(aggressiveness_index(ActionSet(v), Move::Two) == aggressiveness_index(ActionSet(v & ~0x7Fu), Move::Two));
  }
}

TEST_CASE("adding a de-escalatory action never raises the index") {
  const auto des = catalog().stance_mask(Move::One, Stance::DeEscalatory);
  const auto agg = catalog().stance_mask(Move::One, Stance::Aggressive);
  for (std::uint32_t v = 0; v < 128; ++v) {
    for (std::size_t b = 0; b < 7; ++b) {
      const std::uint32_t bit = 1u << b;
      if (v & bit) continue;
      const double before = aggressiveness_index(ActionSet(v), Move::One);
      const double after = aggressiveness_index(ActionSet(v | bit), Move::One);
      if (des & bit) {
        // from an empty move the index goes 0 -> -1, otherwise it falls
        CHECK(after <= before);
      }
      if (agg & bit) CHECK(after >= before);
    }
  }
}

TEST_CASE("10000 random move 2 vectors against the oracle, batched and single") {
  util::Rng rng(2024);
  std::vector<std::uint32_t> packed(10000);
  for (auto& p : packed) p = static_cast<std::uint32_t>(rng.next()) & ActionSet::kAllBits;
  std::vector<double> idx(packed.size());
  std::vector<MoveStance> labels(packed.size());
  aggressiveness_indices(packed, Move::Two, idx);
  move_stance_labels(packed, Move::Two, labels);
  int mismatches = 0;
  for (std::size_t i = 0; i < packed.size(); ++i) {
    const double expect = oracle::brute_index(packed[i], 2);
    const int sign = oracle::brute_sign(packed[i], 2);
    const MoveStance el = sign > 0 ? MoveStance::Aggressive : sign < 0 ? MoveStance::DeEscalatory : MoveStance::Neutral;
    if (idx[i] != expect || aggressiveness_index(ActionSet(packed[i]), Move::Two) != expect) ++mismatches;
    if (labels[i] != el || move_stance_label(ActionSet(packed[i]), Move::Two) != el) ++mismatches;
  }
  CHECK(mismatches == 0);
}
