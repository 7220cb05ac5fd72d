#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "wargame/core/treatment.hpp"
#include "wargame/experiment/profiles.hpp"
#include "wargame/gateway/http.hpp"
#include "wargame/scenario/prompts.hpp"

namespace wargame {

struct BackendSpec {
  std::string kind = "scripted";  // scripted | synthetic | http
  std::filesystem::path fixture;   // scripted
  std::string response_model = "human-pattern";  // synthetic: human-pattern | null
  double malformed_rate = 0.0;                   // synthetic
  EndpointConfig endpoint;                       // http
};

struct ExperimentConfig {
  std::string name = "experiment";
  int n_teams = 10;
  int team_size = static_cast<int>(kTeamSize);
  std::vector<Treatment> treatments;  // empty means all eight
  PromptVariant variant;
  SamplingSpec sampling;
  std::filesystem::path profiles;  // dataset for bootstrap sampling
  std::uint64_t master_seed = 1;
  int parallelism = 1;
  BackendSpec backend;
  std::filesystem::path records = "records.jsonl";
  std::filesystem::path transcripts = "transcripts.jsonl";

  std::vector<Treatment> treatment_list() const;
  // Throws ConfigError naming the field.
  void validate() const;
};

// YAML experiment file. Relative input paths (profiles, fixture) resolve
// against the file's directory; output paths are left as written.
// Errors carry "file:line:column".
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
ExperimentConfig parse_experiment_config(const std::string& yaml, const std::filesystem::path& base_dir,
                                         const std::string& source_name = "<config>");

// Canonical text of every field that influences results; hashed into report manifests.
std::string canonical_config(const ExperimentConfig& cfg);

class Backend;
std::unique_ptr<Backend> make_backend(const BackendSpec& spec);

}  // namespace wargame
