#include "wargame/report/bundle.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "wargame/stats/analysis.hpp"
#include "wargame/stats/lda.hpp"
#include "wargame/util/csv.hpp"
#include "wargame/util/error.hpp"
#include "wargame/util/hash.hpp"
#include "wargame/util/text.hpp"

namespace wargame {

const std::vector<std::string_view>& group_fields() {
  static const std::vector<std::string_view> f{"experiment", "source",        "model",         "backend",      "persona",
                                               "dialog_chunks", "ai_accuracy", "crew_training", "china_posture"};
  return f;
}

std::string group_value(const GameRecord& r, std::string_view field) {
  if (field == "experiment") return r.experiment;
  if (field == "source") return std::string(to_string(r.source));
  if (field == "model") return r.backend.model;
  if (field == "backend") return r.backend.kind;
  if (field == "persona") return std::string(to_string(r.variant.persona));
  if (field == "dialog_chunks") return std::to_string(r.variant.dialog_chunks);
  if (field == "ai_accuracy") return std::string(to_string(r.treatment.ai_accuracy));
  if (field == "crew_training") return std::string(to_string(r.treatment.crew_training));
  if (field == "china_posture") return std::string(to_string(r.treatment.china_posture));
  throw ConfigError("unknown grouping field '" + std::string(field) + "'");
}

std::string ContrastSpec::text() const { return field + ":" + a + "," + b; }

std::string ContrastSpec::name() const {
  std::string s = field + "-" + a + "-vs-" + b;
  for (char& c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) c = '_';
  return s;
}

ContrastSpec parse_contrast(std::string_view spec) {
  const auto colon = spec.find(':');
  const auto comma = spec.find(',', colon == std::string_view::npos ? 0 : colon);
  if (colon == std::string_view::npos || comma == std::string_view::npos)
    throw ConfigError("contrast '" + std::string(spec) + "' must look like field:A,B");
  ContrastSpec c{std::string(util::trim(spec.substr(0, colon))),
                 std::string(util::trim(spec.substr(colon + 1, comma - colon - 1))),
                 std::string(util::trim(spec.substr(comma + 1)))};
  const auto& f = group_fields();
  if (std::find(f.begin(), f.end(), c.field) == f.end())
    throw ConfigError("contrast '" + std::string(spec) + "': unknown field '" + c.field + "'");
  if (c.a.empty() || c.b.empty()) throw ConfigError("contrast '" + std::string(spec) + "' has an empty label");
  if (c.a == c.b) throw ConfigError("contrast '" + std::string(spec) + "' compares a label with itself");
  return c;
}

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  if (s == "-0.000000") s.erase(0, 1);
  return s;
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += util::csv_escape(cells[i]);
  }
  return out + "\n";
}

std::vector<GameRecord> sorted_by_id(std::vector<GameRecord> rs) {
  std::sort(rs.begin(), rs.end(), [](const GameRecord& a, const GameRecord& b) { return a.game_id < b.game_id; });
  return rs;
}

std::map<std::string, std::vector<GameRecord>> by_group(const std::vector<GameRecord>& rs, const std::string& field) {
  std::map<std::string, std::vector<GameRecord>> g;
  for (const auto& r : rs) g[group_value(r, field)].push_back(r);
  return g;
}

nlohmann::json options_json(const ReportOptions& o) {
  nlohmann::json contrasts = nlohmann::json::array();
  for (const auto& c : o.contrasts) contrasts.push_back(c.text());
  return {{"contrasts", contrasts},
          {"group_by", o.group_by},
          {"bootstrap", {{"resamples", o.bootstrap.resamples}, {"level", o.bootstrap.level}, {"seed", o.bootstrap.seed}}},
          {"lda", {{"random_baseline", o.lda_random_baseline}, {"seed", o.lda_seed}, {"ridge_scale", o.lda_ridge_scale}}},
          {"expected_lengths", o.expected_lengths}};
}

const std::vector<std::string> kEffectHeader{"id",      "move",    "title",   "stance",      "delta",    "ci_low",
                                             "ci_high", "n_a",     "n_b",     "significant", "formatted"};

std::vector<std::string> effect_cells(const EffectEstimate& e) {
  std::string move, title, stance;
  if (auto idx = catalog().find_key(e.id)) {
    const Action& a = catalog().at(*idx);
    move = std::string(to_string(a.move));
    title = std::string(a.title);
    stance = std::string(to_string(a.stance));
  }
  return {e.id,        move,       title, stance, num(e.delta), num(e.ci.low), num(e.ci.high), std::to_string(e.n_a),
          std::to_string(e.n_b), e.significant() ? "yes" : "no", format_effect(e)};
}

std::string effects_csv(const std::vector<GameRecord>& a, const std::vector<GameRecord>& b, const BootstrapOptions& o) {
  std::string out = csv_line(kEffectHeader);
  for (const auto& e : total_causal_effects(a, b, o)) out += csv_line(effect_cells(e));
  for (Move m : {Move::One, Move::Two}) {
    const std::string suffix = m == Move::One ? "_m1" : "_m2";
    out += csv_line(effect_cells(metric_effect(
        a, b, "chosen_count" + suffix,
        [m](const GameRecord& r) { return static_cast<double>(chosen_count(r.response->selections, m)); }, o)));
    out += csv_line(effect_cells(metric_effect(
        a, b, "aggressiveness" + suffix,
        [m](const GameRecord& r) { return aggressiveness_index(r.response->selections, m); }, o)));
  }
  return out;
}

}  // namespace

std::string record_set_hash(const std::vector<GameRecord>& records) {
  std::string text;
  for (const auto& r : sorted_by_id(records)) text += serialize_record(r) + "\n";
  return util::sha256_hex(text);
}

std::string analysis_config_hash(const ReportOptions& opts) { return util::sha256_hex(options_json(opts).dump()); }

ReportBundle build_report(const std::vector<GameRecord>& input, const ReportOptions& opts) {
  opts.bootstrap.validate();
  group_value(GameRecord{}, opts.group_by);  // rejects unknown fields early
  ReportBundle b;
  // Sorting first makes every output independent of input order.
  const auto records = sorted_by_id(analyzable(input));
  if (records.size() < input.size())
    b.warnings.push_back(std::to_string(input.size() - records.size()) + " records without a response were skipped");
  if (records.empty()) throw Error("no complete records to analyze");

  std::vector<std::string> contrast_names;
  for (const auto& c : opts.contrasts) {
    auto groups = by_group(records, c.field);
    for (const auto& label : {c.a, c.b})
      if (!groups.count(label)) {
        std::string known;
        for (const auto& [k, v] : groups) known += (known.empty() ? "" : ", ") + k;
        throw Error("contrast " + c.text() + ": unknown label '" + label + "' (present: " + known + ")");
      }
    const std::string file = "effects/" + c.name() + ".csv";
    b.files.push_back({file, effects_csv(groups[c.a], groups[c.b], opts.bootstrap)});
    contrast_names.push_back(file);
  }

  const auto groups = by_group(records, opts.group_by);

  std::string freq = csv_line({"group", "id", "mean", "ci_low", "ci_high", "n"});
  for (const auto& [g, rs] : groups)
    for (const auto& f : action_frequencies(rs, opts.bootstrap))
      freq += csv_line({g, f.id, num(f.mean), num(f.ci.low), num(f.ci.high), std::to_string(f.n)});
  b.files.push_back({"frequencies.csv", freq});

  std::string matrix = csv_line({"group", "variable", "result", "level_a", "level_b", "significant_actions"});
  std::string detail = csv_line({"group", "variable", "id", "delta", "ci_low", "ci_high", "significant", "formatted"});
  for (const auto& [g, rs] : groups) {
    std::vector<TreatmentEffectRow> rows;
    try {
      rows = treatment_effect_table(rs, opts.bootstrap);
    } catch (const Error& e) {
      b.warnings.push_back("treatment matrix for " + opts.group_by + "=" + g + " skipped: " + e.what());
      continue;
    }
    for (const auto& row : rows) {
      std::string sig;
      for (const auto& e : row.actions) {
        if (e.significant()) sig += (sig.empty() ? "" : ";") + e.id;
        detail += csv_line({g, std::string(to_string(row.variable)), e.id, num(e.delta), num(e.ci.low), num(e.ci.high),
                            e.significant() ? "yes" : "no", format_effect(e)});
      }
      matrix += csv_line({g, std::string(to_string(row.variable)), row.effect ? "Effect" : "No Effect", row.level_a,
                          row.level_b, sig});
    }
  }
  b.files.push_back({"treatment-matrix.csv", matrix});
  b.files.push_back({"treatment-effects.csv", detail});

  std::string cons = csv_line({"group", "p_agg2_given_agg1", "ci_low", "ci_high", "agg1_games", "agg1_then_agg2",
                               "p_agg2_given_des1", "ci_low", "ci_high", "des1_games", "des1_then_agg2",
                               "neutral_excluded", "flags"});
  std::vector<ConsistencyRow> consistency_rows;
  auto pcells = [](const ConditionalProbability& p) -> std::vector<std::string> {
    if (!p.p) return {"", "", "", std::to_string(p.given), std::to_string(p.aggressive)};
    return {num(*p.p), num(p.ci.low), num(p.ci.high), std::to_string(p.given), std::to_string(p.aggressive)};
  };
  for (const auto& [g, rs] : groups) {
    const auto t = consistency_table(rs, opts.bootstrap);
    std::vector<std::string> cells{g};
    for (auto& c : pcells(t.agg_given_agg)) cells.push_back(std::move(c));
    for (auto& c : pcells(t.agg_given_des)) cells.push_back(std::move(c));
    cells.push_back(std::to_string(t.neutral_excluded));
    cells.push_back(util::join(t.flags, "; "));
    cons += csv_line(cells);
    consistency_rows.push_back({g, t});
  }
  b.files.push_back({"consistency.csv", cons});
  b.files.push_back({"consistency.txt", render_consistency_table(consistency_rows)});

  std::string curves;
  for (const auto& [g, rs] : groups) {
    const auto c = aggressiveness_curve(rs, opts.bootstrap, opts.expected_lengths);
    for (const auto& w : c.warnings) b.warnings.push_back(opts.group_by + "=" + g + ": " + w);
    for (const auto& p : c.points)
      curves += nlohmann::json{{"group", g},
                               {"move", static_cast<int>(p.move)},
                               {"dialog_chunks", p.dialog_chunks},
                               {"n", p.n},
                               {"mean_index", p.mean_index},
                               {"index_ci", {p.index_ci.low, p.index_ci.high}},
                               {"mean_count", p.mean_count},
                               {"count_ci", {p.count_ci.low, p.count_ci.high}}}
                    .dump() +
                "\n";
  }
  b.files.push_back({"curves.jsonl", curves});

  std::vector<LabeledVector> lda_in;
  for (const auto& [g, rs] : groups)
    if (rs.size() >= 2)
      for (const auto& r : rs) lda_in.push_back({g, to_features(r.response->selections)});
  try {
    LdaOptions lo;
    lo.include_random_baseline = opts.lda_random_baseline;
    lo.ridge_scale = opts.lda_ridge_scale;
    util::Rng rng(opts.lda_seed);
    const auto p = lda_project(lda_in, lo, rng);
    std::string pts, cls = csv_line({"label", "n", "mean_x", "mean_y", "cov_xx", "cov_xy", "cov_yy"});
    for (const auto& q : p.points) pts += nlohmann::json{{"label", q.label}, {"x", q.y(0)}, {"y", q.y(1)}}.dump() + "\n";
    for (const auto& c : p.classes)
      cls += csv_line({c.label, std::to_string(c.n), num(c.mean(0)), num(c.mean(1)), num(c.covariance(0, 0)),
                       num(c.covariance(0, 1)), num(c.covariance(1, 1))});
    std::string basis = csv_line({"id", "axis_1", "axis_2"});
    for (std::size_t i = 0; i < kActionCount; ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      basis += csv_line({std::string(catalog().at(i).key), num(p.basis[0](k)), num(p.basis[1](k))});
    }
    b.files.push_back({"lda-points.jsonl", pts});
    b.files.push_back({"lda-classes.csv", cls});
    b.files.push_back({"lda-basis.csv", basis});
  } catch (const Error& e) {
    b.warnings.push_back(std::string("LDA skipped: ") + e.what());
  }

  nlohmann::json files = nlohmann::json::array();
  for (const auto& f : b.files) files.push_back({{"name", f.name}, {"sha256", util::sha256_hex(f.content)}});
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [g, rs] : groups) counts[g] = rs.size();
  const nlohmann::json manifest{{"schema", "wargame-report-v1"},
                                {"record_schema", kRecordSchemaVersion},
                                {"record_set_sha256", record_set_hash(input)},
                                {"config_sha256", analysis_config_hash(opts)},
                                {"config", options_json(opts)},
                                {"records", input.size()},
                                {"analyzed", records.size()},
                                {"groups", counts},
                                {"files", files},
                                {"warnings", b.warnings}};
  b.files.push_back({"manifest.json", manifest.dump(2) + "\n"});
  return b;
}

void write_bundle(const ReportBundle& bundle, const std::filesystem::path& dir) {
  for (const auto& f : bundle.files) {
    const auto p = dir / f.name;
    std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + p.string());
    out << f.content;
    if (!out) throw Error("write failed: " + p.string());
  }
}

}  // namespace wargame
