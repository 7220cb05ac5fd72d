#include "wargame/core/treatment.hpp"

#include "wargame/util/error.hpp"
#include "wargame/util/text.hpp"

namespace wargame {

std::size_t Treatment::index() const noexcept {
  return (static_cast<std::size_t>(ai_accuracy) << 2) | (static_cast<std::size_t>(crew_training) << 1) |
         static_cast<std::size_t>(china_posture);
}

Treatment Treatment::from_index(std::size_t i) {
  if (i >= 8) throw ConfigError("treatment index out of range: " + std::to_string(i));
  return Treatment{static_cast<AiAccuracy>((i >> 2) & 1), static_cast<CrewTraining>((i >> 1) & 1),
                   static_cast<ChinaPosture>(i & 1)};
}

std::string Treatment::code() const {
  std::string s(to_string(ai_accuracy));
  s += '-';
  s += to_string(crew_training);
  s += '-';
  s += to_string(china_posture);
  return s;
}

Treatment Treatment::parse_code(std::string_view code) {
  const auto parts = util::split(code, '-');
  // "status-quo" contains a dash itself.
  if (parts.size() < 3) throw SchemaError("malformed treatment code: " + std::string(code));
  std::string posture = parts[2];
  for (std::size_t i = 3; i < parts.size(); ++i) posture += "-" + parts[i];
  return Treatment{parse_ai_accuracy(parts[0]), parse_crew_training(parts[1]), parse_china_posture(posture)};
}

std::array<Treatment, 8> all_treatments() {
  std::array<Treatment, 8> out;
  for (std::size_t i = 0; i < 8; ++i) out[i] = Treatment::from_index(i);
  return out;
}

std::string_view accuracy_range(AiAccuracy a) noexcept { return a == AiAccuracy::High ? "95-99%" : "70-85%"; }

std::string_view to_string(AiAccuracy a) noexcept { return a == AiAccuracy::High ? "high" : "low"; }
std::string_view to_string(CrewTraining c) noexcept { return c == CrewTraining::Extensive ? "extensive" : "basic"; }
std::string_view to_string(ChinaPosture p) noexcept {
  return p == ChinaPosture::Revisionist ? "revisionist" : "status-quo";
}

AiAccuracy parse_ai_accuracy(std::string_view s) {
  const std::string v = util::to_lower(util::trim(s));
  if (v == "low") return AiAccuracy::Low;
  if (v == "high") return AiAccuracy::High;
  throw SchemaError("unknown ai accuracy label '" + std::string(s) + "' (expected low|high)");
}

CrewTraining parse_crew_training(std::string_view s) {
  const std::string v = util::to_lower(util::trim(s));
  if (v == "basic") return CrewTraining::Basic;
  if (v == "extensive") return CrewTraining::Extensive;
  throw SchemaError("unknown crew training label '" + std::string(s) + "' (expected basic|extensive)");
}

ChinaPosture parse_china_posture(std::string_view s) {
  const std::string v = util::to_lower(util::trim(s));
  if (v == "revisionist") return ChinaPosture::Revisionist;
  if (v == "status-quo" || v == "status_quo" || v == "statusquo") return ChinaPosture::StatusQuo;
  throw SchemaError("unknown china posture label '" + std::string(s) + "' (expected revisionist|status-quo)");
}

}  // namespace wargame
