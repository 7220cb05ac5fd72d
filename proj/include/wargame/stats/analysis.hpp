#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wargame/core/metrics.hpp"
#include "wargame/session/record.hpp"
#include "wargame/stats/bootstrap.hpp"
#include "wargame/util/rng.hpp"

namespace wargame {

// Records used for analysis: Complete ones with a response vector.
std::vector<GameRecord> analyzable(const std::vector<GameRecord>& records);

struct EffectEstimate {
  std::string id;  // action key ("m2_a1") or metric name
  double delta = 0.0;  // mean(A) - mean(B)
  Interval ci;
  std::size_t n_a = 0;
  std::size_t n_b = 0;

  bool significant() const noexcept { return ci.excludes_zero(); }
};

// "0.52 (+0.13, -0.13)": delta with distances to the interval ends.
std::string format_effect(const EffectEstimate& e, int decimals = 2);

using RecordMetric = std::function<double(const GameRecord&)>;

// Difference of per-game means of `metric`; the interval always contains delta.
EffectEstimate metric_effect(const std::vector<GameRecord>& a, const std::vector<GameRecord>& b, const std::string& id,
                             const RecordMetric& metric, const BootstrapOptions& opts);

// Per-game indicator of one catalog action. Throws Error for an empty group.
EffectEstimate total_causal_effect(const std::vector<GameRecord>& a, const std::vector<GameRecord>& b,
                                   std::size_t action, const BootstrapOptions& opts);
// All 21 actions in catalog order.
std::vector<EffectEstimate> total_causal_effects(const std::vector<GameRecord>& a, const std::vector<GameRecord>& b,
                                                 const BootstrapOptions& opts);

// Per-action mean selection frequency with interval.
struct Frequency {
  std::string id;
  double mean = 0.0;
  Interval ci;
  std::size_t n = 0;
};
std::vector<Frequency> action_frequencies(const std::vector<GameRecord>& records, const BootstrapOptions& opts);

enum class TreatmentVariable : std::uint8_t { AiAccuracy, CrewTraining, ChinaPosture };
std::string_view to_string(TreatmentVariable v) noexcept;

struct TreatmentEffectRow {
  TreatmentVariable variable;
  bool effect = false;  // any relevant action significant
  std::string level_a;  // e.g. "high"
  std::string level_b;  // e.g. "low"
  std::vector<EffectEstimate> actions;  // Move 1 actions for accuracy/training, Move 2 for posture
};

// One row per treatment variable: level A is high / extensive / status-quo.
// Throws Error when a variable has only one level present.
std::vector<TreatmentEffectRow> treatment_effect_table(const std::vector<GameRecord>& records,
                                                       const BootstrapOptions& opts);

struct CurvePoint {
  Move move;
  int dialog_chunks = 0;
  std::size_t n = 0;
  double mean_index = 0.0;
  Interval index_ci;
  double mean_count = 0.0;
  Interval count_ci;
};

struct Curve {
  std::vector<CurvePoint> points;  // ordered by (move, dialog_chunks)
  std::vector<std::string> warnings;
};

// Mean aggressiveness index and chosen count per (move, dialog length).
// Lengths listed in `expected_lengths` with no records are skipped with a warning.
Curve aggressiveness_curve(const std::vector<GameRecord>& records, const BootstrapOptions& opts,
                           const std::vector<int>& expected_lengths = {});

struct ConditionalProbability {
  std::optional<double> p;  // undefined when the conditioning cell is empty
  Interval ci;
  std::size_t given = 0;       // games in the conditioning cell
  std::size_t aggressive = 0;  // of those, aggressive in Move 2
};

struct ConsistencyTable {
  ConditionalProbability agg_given_agg;
  ConditionalProbability agg_given_des;
  std::size_t neutral_excluded = 0;
  std::vector<std::string> flags;
};

// p(agg2 | agg1) and p(agg2 | des1) from move_stance_label; Neutral Move 1
// games are excluded. Intervals resample games within each cell.
ConsistencyTable consistency_table(const std::vector<GameRecord>& records, const BootstrapOptions& opts);

// "0.94 (+0.06, -0.08)" or "undefined".
std::string format_probability(const ConditionalProbability& p, int decimals = 2);

struct ConsistencyRow {
  std::string label;
  ConsistencyTable table;
};
// Plain-text table with the two conditional probabilities as columns.
std::string render_consistency_table(const std::vector<ConsistencyRow>& rows);

// Response vectors with every bit an independent fair coin.
std::vector<ResponseVector> gen_random_vectors(std::size_t n, util::Rng& rng);

}  // namespace wargame
