#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "wargame/core/catalog.hpp"

namespace wargame {

// The 21 action selections of one game, packed in catalog bit order.
class ActionSet {
 public:
  constexpr ActionSet() = default;
  constexpr explicit ActionSet(std::uint32_t packed) : bits_(packed & kAllBits) {}

  constexpr bool test(std::size_t index) const noexcept { return (bits_ >> index) & 1u; }
  constexpr void set(std::size_t index, bool on = true) noexcept {
    if (on)
      bits_ |= 1u << index;
    else
      bits_ &= ~(1u << index);
  }
  constexpr std::uint32_t packed() const noexcept { return bits_; }
  constexpr bool empty() const noexcept { return bits_ == 0; }

  // Selections restricted to one move.
  ActionSet only(Move m) const noexcept { return ActionSet(bits_ & catalog().move_mask(m)); }

  // 21 characters of '0'/'1', index 0 first.
  std::string to_bit_string() const;
  // Inverse of to_bit_string; throws SchemaError on bad length or characters.
  static ActionSet from_bit_string(std::string_view s);

  friend constexpr bool operator==(ActionSet, ActionSet) = default;
  friend constexpr ActionSet operator|(ActionSet a, ActionSet b) { return ActionSet(a.bits_ | b.bits_); }

  static constexpr std::uint32_t kAllBits = (1u << kActionCount) - 1u;

 private:
  std::uint32_t bits_ = 0;
};

struct ResponseVector {
  ActionSet selections;
  std::string end_state_1;
  std::string end_state_2;
  std::string course_plan_2;

  friend bool operator==(const ResponseVector&, const ResponseVector&) = default;
};

}  // namespace wargame
