#include <doctest.h>

#include <algorithm>
#include <random>

#include <nlohmann/json.hpp>

#include "wargame/experiment/human.hpp"
#include "wargame/gateway/synthetic.hpp"
#include "wargame/report/bundle.hpp"
#include "wargame/util/hash.hpp"

using namespace wargame;

namespace {

std::vector<GameRecord> two_experiments() {
  std::vector<SyntheticArm> arms;
  for (const auto& t : all_treatments()) arms.push_back({t, 3});
  auto a = synthetic_records(ResponseModel::human_pattern(), arms, 1, "alpha");
  const auto b = synthetic_records(ResponseModel::null_model(), arms, 2, "beta");
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

ReportOptions quick() {
  ReportOptions o;
  o.bootstrap.resamples = 300;
  o.contrasts.push_back(parse_contrast("experiment:alpha,beta"));
  return o;
}

const ReportFile& file(const ReportBundle& b, const std::string& name) {
  const auto it = std::find_if(b.files.begin(), b.files.end(), [&](const ReportFile& f) { return f.name == name; });
  REQUIRE(it != b.files.end());
  return *it;
}

}  // namespace

TEST_CASE("contrast specs") {
  const auto c = parse_contrast(" model : gpt-4 , gpt-3.5 ");
  CHECK(c.field == "model");
  CHECK(c.a == "gpt-4");
  CHECK(c.b == "gpt-3.5");
  CHECK(c.name() == "model-gpt-4-vs-gpt-3.5");
  CHECK_THROWS_AS(parse_contrast("model"), ConfigError);
  CHECK_THROWS_AS(parse_contrast("colour:a,b"), ConfigError);
  CHECK_THROWS_AS(parse_contrast("model:a,a"), ConfigError);
  CHECK_THROWS_AS(parse_contrast("model:,b"), ConfigError);
}

TEST_CASE("group values cover every field") {
  GameRecord r;
  r.experiment = "e";
  r.backend.model = "m";
  r.backend.kind = "http";
  r.variant.dialog_chunks = 5;
  r.treatment.china_posture = ChinaPosture::StatusQuo;
  CHECK(group_value(r, "experiment") == "e");
  CHECK(group_value(r, "source") == "llm");
  CHECK(group_value(r, "model") == "m");
  CHECK(group_value(r, "backend") == "http");
  CHECK(group_value(r, "dialog_chunks") == "5");
  CHECK(group_value(r, "china_posture") == "status-quo");
  for (auto f : group_fields()) CHECK_NOTHROW(group_value(r, f));
  CHECK_THROWS_AS(group_value(r, "nope"), ConfigError);
}

TEST_CASE("bundle is independent of record order and its manifest recomputes") {
  auto recs = two_experiments();
  const auto b1 = build_report(recs, quick());
  std::shuffle(recs.begin(), recs.end(), std::mt19937_64(4));
  const auto b2 = build_report(recs, quick());
  REQUIRE(b1.files.size() == b2.files.size());
  for (std::size_t i = 0; i < b1.files.size(); ++i) {
    CHECK(b1.files[i].name == b2.files[i].name);
    CHECK(b1.files[i].content == b2.files[i].content);
  }
  CHECK(b1.files.back().name == "manifest.json");
  const auto m = nlohmann::json::parse(b1.files.back().content);
  CHECK(m["record_set_sha256"] == record_set_hash(recs));
  CHECK(m["config_sha256"] == analysis_config_hash(quick()));
  for (const auto& f : m["files"]) CHECK(f["sha256"] == util::sha256_hex(file(b1, f["name"]).content));
  CHECK(m["groups"]["alpha"] == 24);
}

TEST_CASE("bundle contents") {
  const auto b = build_report(two_experiments(), quick());
  const auto& eff = file(b, "effects/experiment-alpha-vs-beta.csv").content;
  CHECK(std::count(eff.begin(), eff.end(), '\n') == 1 + 21 + 4);
  CHECK(eff.find("chosen_count_m1") != std::string::npos);
  const auto& lda = file(b, "lda-classes.csv").content;
  CHECK(lda.find("random,24,") != std::string::npos);
  CHECK(file(b, "consistency.txt").content.find("p(agg2 | agg1)") != std::string::npos);
  // every group with both levels of each factor gets three rows
  const auto& matrix = file(b, "treatment-matrix.csv").content;
  CHECK(std::count(matrix.begin(), matrix.end(), '\n') == 1 + 6);
}

TEST_CASE("unknown contrast labels are rejected") {
  auto o = quick();
  o.contrasts = {parse_contrast("experiment:alpha,gamma")};
  CHECK_THROWS_WITH_AS(build_report(two_experiments(), o), doctest::Contains("unknown label 'gamma'"), Error);
  CHECK_THROWS_AS(build_report({}, quick()), Error);
}
