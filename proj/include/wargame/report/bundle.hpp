#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "wargame/session/record.hpp"
#include "wargame/stats/bootstrap.hpp"

namespace wargame {

// Record attributes usable for grouping and contrasts.
// experiment | source | model | backend | persona | dialog_chunks | ai_accuracy | crew_training | china_posture
std::string group_value(const GameRecord& r, std::string_view field);
const std::vector<std::string_view>& group_fields();

// "<field>:<A>,<B>", e.g. "model:gpt-4,gpt-3.5" or "source:llm,human".
struct ContrastSpec {
  std::string field;
  std::string a;
  std::string b;

  std::string name() const;  // file-name safe
  std::string text() const;  // as written
};
ContrastSpec parse_contrast(std::string_view spec);  // throws ConfigError

struct ReportOptions {
  std::vector<ContrastSpec> contrasts;
  std::string group_by = "experiment";  // per-group tables and LDA classes
  BootstrapOptions bootstrap;
  bool lda_random_baseline = true;
  std::uint64_t lda_seed = 1;
  double lda_ridge_scale = 1e-6;
  std::vector<int> expected_lengths;  // dialog lengths the curves should cover
};

struct ReportFile {
  std::string name;  // relative path inside the bundle
  std::string content;
};

struct ReportBundle {
  std::vector<ReportFile> files;  // manifest.json last
  std::vector<std::string> warnings;
};

// SHA-256 over the serialized records sorted by game id.
std::string record_set_hash(const std::vector<GameRecord>& records);
// SHA-256 of the canonical JSON of the analysis options.
std::string analysis_config_hash(const ReportOptions& opts);

// Every table and plot data file for the records. Output depends only on
// (records as a multiset, options). Throws Error for unknown contrast labels.
ReportBundle build_report(const std::vector<GameRecord>& records, const ReportOptions& opts);

void write_bundle(const ReportBundle& bundle, const std::filesystem::path& dir);

}  // namespace wargame
