#pragma once

#include <array>
#include <string>

#include "wargame/core/response.hpp"
#include "wargame/gateway/chat.hpp"
#include "wargame/util/rng.hpp"

namespace wargame {

// Independent per-action selection probabilities with additive shifts per
// treatment factor and persona; the result is clamped to [0, 1].
struct ResponseModel {
  using Column = std::array<double, kActionCount>;

  Column base{};                // low accuracy, basic training, revisionist, no persona
  Column high_accuracy{};
  Column extensive_training{};
  Column status_quo{};
  Column strict_pacifists{};
  Column aggressive_sociopaths{};

  double probability(std::size_t action, const Treatment& t, Persona persona) const;
  // Draws the move's bits in catalog order, one Bernoulli per action.
  ActionSet sample(Move m, const Treatment& t, Persona persona, util::Rng& rng) const;
  ActionSet sample(const Treatment& t, Persona persona, util::Rng& rng) const;

  // Documented marginals with a China-posture effect only (see README).
  static ResponseModel human_pattern();
  // Same marginals with every shift zero.
  static ResponseModel null_model();
};

// Offline backend that answers like a team following a ResponseModel.
// Dialog turns return filler conversation of roughly the requested length,
// answer turns the sampled selections in the requested format. Every reply
// is a pure function of (seed, move, turn), so re-elicitations repeat.
class SyntheticPolicyBackend : public Backend {
 public:
  explicit SyntheticPolicyBackend(ResponseModel model, double malformed_rate = 0.0)
      : model_(model), malformed_rate_(malformed_rate) {}

  BackendReply complete(const CompletionRequest& request, const GenerationParams& params) override;
  BackendDescriptor descriptor() const override;

  const ResponseModel& model() const noexcept { return model_; }

 private:
  ResponseModel model_;
  double malformed_rate_;
};

}  // namespace wargame
