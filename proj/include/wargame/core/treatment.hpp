#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace wargame {

enum class AiAccuracy : std::uint8_t { Low, High };
enum class CrewTraining : std::uint8_t { Basic, Extensive };
enum class ChinaPosture : std::uint8_t { Revisionist, StatusQuo };

// The three experimental factors of one game.
struct Treatment {
  AiAccuracy ai_accuracy = AiAccuracy::Low;
  CrewTraining crew_training = CrewTraining::Basic;
  ChinaPosture china_posture = ChinaPosture::Revisionist;

  // 0..7, accuracy as the most significant factor.
  std::size_t index() const noexcept;
  static Treatment from_index(std::size_t i);

  // "high-basic-revisionist"
  std::string code() const;
  static Treatment parse_code(std::string_view code);

  friend bool operator==(const Treatment&, const Treatment&) = default;
};

// The full factorial, ordered by index().
std::array<Treatment, 8> all_treatments();

// Percent range inserted in the accuracy treatment text.
std::string_view accuracy_range(AiAccuracy a) noexcept;

std::string_view to_string(AiAccuracy a) noexcept;
std::string_view to_string(CrewTraining c) noexcept;
std::string_view to_string(ChinaPosture p) noexcept;
// Throw SchemaError naming the accepted labels.
AiAccuracy parse_ai_accuracy(std::string_view s);
CrewTraining parse_crew_training(std::string_view s);
ChinaPosture parse_china_posture(std::string_view s);

}  // namespace wargame
