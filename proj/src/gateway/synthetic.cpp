#include "wargame/gateway/synthetic.hpp"

#include <algorithm>
#include <array>

#include "wargame/parsing/parser.hpp"
#include "wargame/util/hash.hpp"
#include "wargame/util/text.hpp"

namespace wargame {

double ResponseModel::probability(std::size_t a, const Treatment& t, Persona persona) const {
  double p = base.at(a);
  if (t.ai_accuracy == AiAccuracy::High) p += high_accuracy[a];
  if (t.crew_training == CrewTraining::Extensive) p += extensive_training[a];
  if (t.china_posture == ChinaPosture::StatusQuo) p += status_quo[a];
  if (persona == Persona::StrictPacifists) p += strict_pacifists[a];
  if (persona == Persona::AggressiveSociopaths) p += aggressive_sociopaths[a];
  return std::clamp(p, 0.0, 1.0);
}

ActionSet ResponseModel::sample(Move m, const Treatment& t, Persona persona, util::Rng& rng) const {
  ActionSet s;
  for (const auto& a : catalog().actions(m))
    if (rng.bernoulli(probability(a.index, t, persona))) s.set(a.index);
  return s;
}

ActionSet ResponseModel::sample(const Treatment& t, Persona persona, util::Rng& rng) const {
  return sample(Move::One, t, persona, rng) | sample(Move::Two, t, persona, rng);
}

ResponseModel ResponseModel::null_model() {
  ResponseModel m;
  //          m1: a     b     c     d     e     f     g
  //          m2: a     a1    a2    a3    b     c     d     e     f     g     h     i     j     k
  m.base = {0.10, 0.75, 0.40, 0.15, 0.50, 0.35, 0.05,
            0.60, 0.45, 0.15, 0.50, 0.20, 0.45, 0.90, 0.60, 0.30, 0.40, 0.65, 0.70, 0.35, 0.55};
  return m;
}

ResponseModel ResponseModel::human_pattern() {
  ResponseModel m = null_model();
  // A status-quo China lowers military and coercive responses.
  m.status_quo = {0, 0, 0, 0, 0, 0, 0,
                  -0.35, -0.10, -0.10, -0.30, -0.15, -0.25, 0.05, -0.30, 0.30, -0.20, 0, 0, 0, -0.25};
  return m;
}

namespace {

constexpr std::array<std::string_view, 12> kLines{
    "We should keep the safety of the crews at the center of this decision.",
    "I want to be careful that nothing we do reads as a first move toward escalation.",
    "The intelligence picture is incomplete, so we should plan for several readings of their intent.",
    "Our allies will watch how we handle this, and so will Beijing.",
    "I agree with the point on restraint, but we cannot leave the commander without options.",
    "The new system changes the timeline for a response, and we need to account for that.",
    "Let us make sure the President has a clear recommendation with a fallback.",
    "We should keep diplomatic channels open while the forces hold their posture.",
    "I am concerned about how the rules of engagement will be read by the crews on station.",
    "Public messaging matters here, and we should prepare it in parallel.",
    "The risk of a miscalculation is real on both sides.",
    "I would like to hear from the commander on what is feasible within the week.",
};

constexpr std::array<std::string_view, 4> kEndStates{
    "The crisis de-escalates without loss of life and the strike group keeps freedom of navigation.",
    "Deterrence holds, allies are reassured and talks with Beijing resume.",
    "Forces remain safe, the status quo in the Strait is preserved and tensions fall.",
    "China stands down its harassment and the United States avoids a wider conflict.",
};

std::string dialog_text(const CompletionRequest& r, util::Rng& rng) {
  const int target = std::max(20, r.budget_words);
  std::string out;
  std::size_t words = 0;
  std::size_t speaker = static_cast<std::size_t>(r.chunk_index) % kPlayerRoles.size();
  while (static_cast<int>(words) < target) {
    std::string line = std::string(kPlayerRoles[speaker]) + ": ";
    for (int s = 0; s < 2; ++s) line += std::string(kLines[rng.uniform_index(kLines.size())]) + (s == 0 ? " " : "");
    words += util::word_count(line);
    out += line + "\n";
    speaker = (speaker + 1) % kPlayerRoles.size();
  }
  return out;
}

}  // namespace

BackendReply SyntheticPolicyBackend::complete(const CompletionRequest& r, const GenerationParams&) {
  const auto move = static_cast<std::uint64_t>(r.move);
  switch (r.kind) {
    case TurnKind::Handshake:
      return {"Confirmed. The team is ready for the next move.", 1};
    case TurnKind::Dialog: {
      util::Rng rng(util::derive_seed(r.seed, {move, static_cast<std::uint64_t>(r.turn_index), 0xd1a1}));
      return {dialog_text(r, rng), 1};
    }
    case TurnKind::Answer:
    case TurnKind::Reelicit:
      break;
  }
  util::Rng glitch(util::derive_seed(r.seed, {move, static_cast<std::uint64_t>(r.turn_index), 0xbad}));
  if (malformed_rate_ > 0 && glitch.bernoulli(malformed_rate_))
    return {"The team needs more time to deliberate before answering.", 1};

  // Same draw on every elicitation of a move.
  util::Rng rng(util::derive_seed(r.seed, {move, 0x5e1ec7}));
  const ActionSet bits = model_.sample(r.move, r.treatment, r.variant.persona, rng);
  const std::string end_state(kEndStates[rng.uniform_index(kEndStates.size())]);
  std::string text;
  if (r.move == Move::One) {
    text = "Desired End State: " + end_state + "\nSelected Orders: " + render_selection(bits, Move::One);
  } else {
    text = "Course of Action: Coordinate the response across the government and keep the President's options open.\n"
           "Selected Actions: " +
           render_selection(bits, Move::Two) + "\nDesired End State: " + end_state;
  }
  return {text, 1};
}

BackendDescriptor SyntheticPolicyBackend::descriptor() const {
  std::string params;
  for (const auto* col : {&model_.base, &model_.high_accuracy, &model_.extensive_training, &model_.status_quo,
                          &model_.strict_pacifists, &model_.aggressive_sociopaths})
    for (double v : *col) params += util::format_fixed(v, 6) + ",";
  params += util::format_fixed(malformed_rate_, 6);
  BackendDescriptor d;
  d.kind = "synthetic";
  d.model = "response-model-" + util::sha256_hex(params).substr(0, 12);
  d.temperature = 1.0;
  return d;
}

}  // namespace wargame
