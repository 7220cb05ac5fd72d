#include "wargame/stats/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>

#include "wargame/util/error.hpp"

namespace wargame {

std::vector<GameRecord> analyzable(const std::vector<GameRecord>& records) {
  std::vector<GameRecord> out;
  for (const auto& r : records)
    if (r.complete() && r.response) out.push_back(r);
  return out;
}

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  // "-0.00" reads as a sign error in the tables
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

Interval clamp_to(Interval ci, double x) { return {std::min(ci.low, x), std::max(ci.high, x)}; }

ActionSet selections(const GameRecord& r) {
  if (!r.response) throw Error("record " + r.game_id + " has no response vector");
  return r.response->selections;
}

std::vector<double> values(const std::vector<GameRecord>& rs, const RecordMetric& f) {
  std::vector<double> v;
  v.reserve(rs.size());
  for (const auto& r : rs) v.push_back(f(r));
  return v;
}

}  // namespace

std::string format_effect(const EffectEstimate& e, int decimals) {
  return fixed(e.delta, decimals) + " (+" + fixed(e.ci.high - e.delta, decimals) + ", -" +
         fixed(e.delta - e.ci.low, decimals) + ")";
}

EffectEstimate metric_effect(const std::vector<GameRecord>& a, const std::vector<GameRecord>& b, const std::string& id,
                             const RecordMetric& metric, const BootstrapOptions& opts) {
  if (a.empty() || b.empty()) throw Error("effect '" + id + "' needs two non-empty groups");
  const auto va = values(a, metric), vb = values(b, metric);
  EffectEstimate e;
  e.id = id;
  e.delta = mean(va) - mean(vb);
  e.ci = clamp_to(bootstrap_diff_ci(va, vb, opts), e.delta);
  e.n_a = a.size();
  e.n_b = b.size();
  return e;
}

EffectEstimate total_causal_effect(const std::vector<GameRecord>& a, const std::vector<GameRecord>& b,
                                   std::size_t action, const BootstrapOptions& opts) {
  const Action& act = catalog().at(action);
  return metric_effect(a, b, std::string(act.key),
                       [action](const GameRecord& r) { return selections(r).test(action) ? 1.0 : 0.0; }, opts);
}

std::vector<EffectEstimate> total_causal_effects(const std::vector<GameRecord>& a, const std::vector<GameRecord>& b,
                                                 const BootstrapOptions& opts) {
  std::vector<EffectEstimate> out;
  for (std::size_t i = 0; i < kActionCount; ++i) out.push_back(total_causal_effect(a, b, i, opts));
  return out;
}

std::vector<Frequency> action_frequencies(const std::vector<GameRecord>& records, const BootstrapOptions& opts) {
  if (records.empty()) throw Error("action frequencies of an empty record set");
  std::vector<Frequency> out;
  for (std::size_t i = 0; i < kActionCount; ++i) {
    const auto v = values(records, [i](const GameRecord& r) { return selections(r).test(i) ? 1.0 : 0.0; });
    Frequency f;
    f.id = std::string(catalog().at(i).key);
    f.mean = mean(v);
    f.ci = clamp_to(bootstrap_mean_ci(v, opts), f.mean);
    f.n = v.size();
    out.push_back(std::move(f));
  }
  return out;
}

std::string_view to_string(TreatmentVariable v) noexcept {
  switch (v) {
    case TreatmentVariable::AiAccuracy:
      return "ai_accuracy";
    case TreatmentVariable::CrewTraining:
      return "crew_training";
    case TreatmentVariable::ChinaPosture:
      break;
  }
  return "china_posture";
}

std::vector<TreatmentEffectRow> treatment_effect_table(const std::vector<GameRecord>& records,
                                                       const BootstrapOptions& opts) {
  struct Split {
    TreatmentVariable var;
    Move move;
    std::string a, b;
    bool (*in_a)(const Treatment&);
  };
  const Split splits[] = {
      {TreatmentVariable::AiAccuracy, Move::One, "high", "low",
       [](const Treatment& t) { return t.ai_accuracy == AiAccuracy::High; }},
      {TreatmentVariable::CrewTraining, Move::One, "extensive", "basic",
       [](const Treatment& t) { return t.crew_training == CrewTraining::Extensive; }},
      {TreatmentVariable::ChinaPosture, Move::Two, "status-quo", "revisionist",
       [](const Treatment& t) { return t.china_posture == ChinaPosture::StatusQuo; }},
  };
  std::vector<TreatmentEffectRow> rows;
  for (const auto& s : splits) {
    std::vector<GameRecord> a, b;
    for (const auto& r : records) (s.in_a(r.treatment) ? a : b).push_back(r);
    if (a.empty() || b.empty())
      throw Error(std::string(to_string(s.var)) + " has a single level in the records (" +
                  (a.empty() ? s.b : s.a) + " only)");
    TreatmentEffectRow row{s.var, false, s.a, s.b, {}};
    for (const auto& act : catalog().actions(s.move)) {
      row.actions.push_back(total_causal_effect(a, b, act.index, opts));
      row.effect = row.effect || row.actions.back().significant();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Curve aggressiveness_curve(const std::vector<GameRecord>& records, const BootstrapOptions& opts,
                           const std::vector<int>& expected_lengths) {
  std::map<int, std::vector<const GameRecord*>> by_len;
  for (const auto& r : records) by_len[r.variant.dialog_chunks].push_back(&r);
  Curve c;
  for (int len : expected_lengths)
    if (!by_len.count(len)) c.warnings.push_back("no records with dialog_chunks=" + std::to_string(len) + "; skipped");
  for (Move m : {Move::One, Move::Two}) {
    for (const auto& [len, rs] : by_len) {
      std::vector<double> idx, cnt;
      for (const auto* r : rs) {
        idx.push_back(aggressiveness_index(selections(*r), m));
        cnt.push_back(chosen_count(selections(*r), m));
      }
      CurvePoint p;
      p.move = m;
      p.dialog_chunks = len;
      p.n = rs.size();
      p.mean_index = mean(idx);
      p.index_ci = clamp_to(bootstrap_mean_ci(idx, opts), p.mean_index);
      p.mean_count = mean(cnt);
      p.count_ci = clamp_to(bootstrap_mean_ci(cnt, opts), p.mean_count);
      c.points.push_back(p);
    }
  }
  return c;
}

namespace {

ConditionalProbability conditional(const std::vector<double>& cell, const BootstrapOptions& opts) {
  ConditionalProbability p;
  p.given = cell.size();
  if (cell.empty()) return p;
  p.aggressive = static_cast<std::size_t>(std::count(cell.begin(), cell.end(), 1.0));
  p.p = static_cast<double>(p.aggressive) / static_cast<double>(p.given);
  p.ci = clamp_to(bootstrap_mean_ci(cell, opts), *p.p);
  return p;
}

}  // namespace

ConsistencyTable consistency_table(const std::vector<GameRecord>& records, const BootstrapOptions& opts) {
  std::vector<double> given_agg, given_des;
  ConsistencyTable t;
  for (const auto& r : records) {
    const ActionSet v = selections(r);
    const double agg2 = move_stance_label(v, Move::Two) == MoveStance::Aggressive ? 1.0 : 0.0;
    switch (move_stance_label(v, Move::One)) {
      case MoveStance::Aggressive:
        given_agg.push_back(agg2);
        break;
      case MoveStance::DeEscalatory:
        given_des.push_back(agg2);
        break;
      case MoveStance::Neutral:
        ++t.neutral_excluded;
        break;
    }
  }
  t.agg_given_agg = conditional(given_agg, opts);
  t.agg_given_des = conditional(given_des, opts);
  if (given_agg.empty()) t.flags.push_back("no games aggressive in move 1: p(agg2|agg1) undefined");
  if (given_des.empty()) t.flags.push_back("no games de-escalatory in move 1: p(agg2|des1) undefined");
  return t;
}

std::string format_probability(const ConditionalProbability& p, int decimals) {
  if (!p.p) return "undefined";
  return fixed(*p.p, decimals) + " (+" + fixed(p.ci.high - *p.p, decimals) + ", -" + fixed(*p.p - p.ci.low, decimals) +
         ")";
}

std::string render_consistency_table(const std::vector<ConsistencyRow>& rows) {
  const std::string h0 = "Experiment", h1 = "p(agg2 | agg1)", h2 = "p(agg2 | des1)";
  std::size_t w0 = h0.size(), w1 = h1.size();
  std::vector<std::array<std::string, 3>> cells;
  for (const auto& r : rows) {
    cells.push_back({r.label, format_probability(r.table.agg_given_agg), format_probability(r.table.agg_given_des)});
    w0 = std::max(w0, cells.back()[0].size());
    w1 = std::max(w1, cells.back()[1].size());
  }
  auto line = [&](const std::string& a, const std::string& b, const std::string& c) {
    return a + std::string(w0 - a.size() + 2, ' ') + b + std::string(w1 - b.size() + 2, ' ') + c + "\n";
  };
  std::string out = line(h0, h1, h2);
  for (const auto& c : cells) out += line(c[0], c[1], c[2]);
  return out;
}

std::vector<ResponseVector> gen_random_vectors(std::size_t n, util::Rng& rng) {
  std::vector<ResponseVector> out(n);
  for (auto& v : out) v.selections = ActionSet(static_cast<std::uint32_t>(rng.next() >> 43));
  return out;
}

}  // namespace wargame
