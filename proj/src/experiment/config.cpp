#include "wargame/experiment/config.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>
#include <yaml-cpp/yaml.h>

#include "wargame/gateway/scripted.hpp"
#include "wargame/gateway/synthetic.hpp"
#include "wargame/util/error.hpp"

namespace wargame {

std::vector<Treatment> ExperimentConfig::treatment_list() const {
  if (!treatments.empty()) return treatments;
  const auto all = all_treatments();
  return {all.begin(), all.end()};
}

void ExperimentConfig::validate() const {
  if (name.empty()) throw ConfigError("name must not be empty");
  for (char c : name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.'))
      throw ConfigError("name may only contain letters, digits, '-', '_' and '.'");
  if (n_teams <= 0) throw ConfigError("teams must be > 0");
  if (team_size != static_cast<int>(kTeamSize))
    throw ConfigError("team_size must be " + std::to_string(kTeamSize) + " (one player per scenario role)");
  std::set<std::size_t> seen;
  for (const auto& t : treatments)
    if (!seen.insert(t.index()).second) throw ConfigError("treatment " + t.code() + " listed twice");
  if (variant.dialog_chunks < 0) throw ConfigError("variant.dialog_chunks must be >= 0");
  if (variant.words_per_chunk <= 0) throw ConfigError("variant.words_per_chunk must be > 0");
  if (sampling.mode == SamplingMode::BootstrapFromDataset && profiles.empty())
    throw ConfigError("sampling.profiles is required for bootstrap sampling");
  if (sampling.mode == SamplingMode::FixedPersona && sampling.persona == Persona::None)
    throw ConfigError("sampling.persona is required for fixed-persona sampling");
  if (parallelism <= 0) throw ConfigError("parallelism must be > 0");
  if (backend.kind == "scripted") {
    if (backend.fixture.empty()) throw ConfigError("backend.fixture is required for the scripted backend");
  } else if (backend.kind == "synthetic") {
    if (backend.response_model != "human-pattern" && backend.response_model != "null")
      throw ConfigError("backend.response_model must be human-pattern or null");
    if (backend.malformed_rate < 0 || backend.malformed_rate > 1)
      throw ConfigError("backend.malformed_rate must be in [0, 1]");
  } else if (backend.kind == "http") {
    backend.endpoint.validate();
  } else {
    throw ConfigError("backend.kind must be scripted, synthetic or http");
  }
}

namespace {

// Already carries file:line:column.
class LocatedError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& n, const std::string& msg) const {
    const auto m = n.Mark();
    std::string at = source_;
    if (!m.is_null()) at += ":" + std::to_string(m.line + 1) + ":" + std::to_string(m.column + 1);
    throw LocatedError(at + ": " + msg);
  }

  void expect_map(const YAML::Node& n, const std::string& what, const std::set<std::string>& keys) const {
    if (!n.IsMap()) fail(n, what + " must be a mapping");
    for (const auto& kv : n) {
      const auto key = kv.first.as<std::string>();
      if (!keys.count(key)) fail(kv.first, "unknown key '" + key + "' in " + what);
    }
  }

  template <typename T>
  void get(const YAML::Node& parent, const char* key, T& out) const {
    const YAML::Node n = parent[key];
    if (!n) return;
    try {
      out = n.as<T>();
    } catch (const YAML::Exception&) {
      fail(n, std::string("'") + key + "' has the wrong type");
    }
  }

  template <typename F>
  void with(const YAML::Node& parent, const char* key, F&& f) const {
    const YAML::Node n = parent[key];
    if (!n) return;
    try {
      f(n);
    } catch (const LocatedError&) {
      throw;
    } catch (const Error& e) {
      fail(n, e.what());
    }
  }

 private:
  std::string source_;
};

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  if (p.empty()) return {};
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& yaml, const std::filesystem::path& base_dir,
                                         const std::string& source_name) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source_name + ":" + std::to_string(e.mark.line + 1) + ":" + std::to_string(e.mark.column + 1) +
                      ": " + e.msg);
  }
  const Reader rd(source_name);
  ExperimentConfig cfg;
  if (!root || root.IsNull()) return cfg;
  rd.expect_map(root, "config",
                {"name", "teams", "team_size", "treatments", "seed", "parallelism", "variant", "sampling", "backend",
                 "output"});
  rd.get(root, "name", cfg.name);
  rd.get(root, "teams", cfg.n_teams);
  rd.get(root, "team_size", cfg.team_size);
  rd.get(root, "seed", cfg.master_seed);
  rd.get(root, "parallelism", cfg.parallelism);
  rd.with(root, "treatments", [&](const YAML::Node& n) {
    if (n.IsScalar()) {
      if (n.as<std::string>() != "all") rd.fail(n, "treatments must be 'all' or a list of codes");
      return;
    }
    if (!n.IsSequence()) rd.fail(n, "treatments must be 'all' or a list of codes");
    for (const auto& t : n) {
      try {
        cfg.treatments.push_back(Treatment::parse_code(t.as<std::string>()));
      } catch (const Error& e) {
        rd.fail(t, e.what());
      }
    }
  });
  if (const auto v = root["variant"]) {
    rd.expect_map(v, "variant",
                  {"include_priorities", "roleplay_emphasis", "disagreement_emphasis", "persona", "dialog_chunks",
                   "words_per_chunk"});
    rd.get(v, "include_priorities", cfg.variant.include_priorities);
    rd.get(v, "roleplay_emphasis", cfg.variant.roleplay_emphasis);
    rd.get(v, "disagreement_emphasis", cfg.variant.disagreement_emphasis);
    rd.get(v, "dialog_chunks", cfg.variant.dialog_chunks);
    rd.get(v, "words_per_chunk", cfg.variant.words_per_chunk);
    rd.with(v, "persona", [&](const YAML::Node& n) { cfg.variant.persona = parse_persona(n.as<std::string>()); });
  }
  if (const auto s = root["sampling"]) {
    rd.expect_map(s, "sampling", {"mode", "profiles", "persona"});
    rd.with(s, "mode", [&](const YAML::Node& n) { cfg.sampling.mode = parse_sampling_mode(n.as<std::string>()); });
    rd.with(s, "persona", [&](const YAML::Node& n) { cfg.sampling.persona = parse_persona(n.as<std::string>()); });
    std::string profiles;
    rd.get(s, "profiles", profiles);
    cfg.profiles = resolve(base_dir, profiles);
    // A fixed persona is also what the players are told to be.
    if (cfg.sampling.mode == SamplingMode::FixedPersona) cfg.variant.persona = cfg.sampling.persona;
  }
  if (const auto b = root["backend"]) {
    rd.expect_map(b, "backend",
                  {"kind", "fixture", "response_model", "malformed_rate", "base_url", "model", "api_key_env",
                   "max_retries", "request_timeout_ms", "per_minute_request_cap", "temperature"});
    rd.get(b, "kind", cfg.backend.kind);
    std::string fixture;
    rd.get(b, "fixture", fixture);
    cfg.backend.fixture = resolve(base_dir, fixture);
    rd.get(b, "response_model", cfg.backend.response_model);
    rd.get(b, "malformed_rate", cfg.backend.malformed_rate);
    auto& e = cfg.backend.endpoint;
    rd.get(b, "base_url", e.base_url);
    rd.get(b, "model", e.model_name);
    rd.get(b, "api_key_env", e.api_key_ref);
    rd.get(b, "max_retries", e.max_retries);
    long timeout_ms = e.request_timeout.count();
    rd.get(b, "request_timeout_ms", timeout_ms);
    e.request_timeout = std::chrono::milliseconds(timeout_ms);
    rd.get(b, "per_minute_request_cap", e.per_minute_request_cap);
    rd.get(b, "temperature", e.sampling_temperature);
  }
  if (const auto o = root["output"]) {
    rd.expect_map(o, "output", {"records", "transcripts"});
    std::string records = cfg.records.string(), transcripts = cfg.transcripts.string();
    rd.get(o, "records", records);
    rd.get(o, "transcripts", transcripts);
    cfg.records = records;
    cfg.transcripts = transcripts;
  }
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(source_name + ": " + e.what());
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str(), path.parent_path(), path.string());
}

std::string canonical_config(const ExperimentConfig& cfg) {
  nlohmann::json treatments = nlohmann::json::array();
  for (const auto& t : cfg.treatment_list()) treatments.push_back(t.code());
  const auto& e = cfg.backend.endpoint;
  nlohmann::json backend{{"kind", cfg.backend.kind}};
  if (cfg.backend.kind == "scripted") backend["fixture"] = cfg.backend.fixture.filename().string();
  if (cfg.backend.kind == "synthetic") {
    backend["response_model"] = cfg.backend.response_model;
    backend["malformed_rate"] = cfg.backend.malformed_rate;
  }
  if (cfg.backend.kind == "http") {
    backend["base_url"] = e.base_url;
    backend["model"] = e.model_name;
    backend["temperature"] = e.sampling_temperature;
  }
  const auto& v = cfg.variant;
  return nlohmann::json{{"name", cfg.name},
                        {"teams", cfg.n_teams},
                        {"team_size", cfg.team_size},
                        {"treatments", treatments},
                        {"seed", cfg.master_seed},
                        {"variant",
                         {{"include_priorities", v.include_priorities},
                          {"roleplay_emphasis", v.roleplay_emphasis},
                          {"disagreement_emphasis", v.disagreement_emphasis},
                          {"persona", to_string(v.persona)},
                          {"dialog_chunks", v.dialog_chunks},
                          {"words_per_chunk", v.words_per_chunk}}},
                        {"sampling",
                         {{"mode", to_string(cfg.sampling.mode)},
                          {"persona", to_string(cfg.sampling.persona)},
                          {"profiles", cfg.profiles.filename().string()}}},
                        {"backend", backend}}
      .dump();
}

std::unique_ptr<Backend> make_backend(const BackendSpec& spec) {
  if (spec.kind == "scripted") return std::make_unique<ScriptedBackend>(ScriptedBackend::load(spec.fixture));
  if (spec.kind == "synthetic")
    return std::make_unique<SyntheticPolicyBackend>(
        spec.response_model == "null" ? ResponseModel::null_model() : ResponseModel::human_pattern(),
        spec.malformed_rate);
  if (spec.kind == "http") return HttpChatBackend::create(spec.endpoint);
  throw ConfigError("unknown backend kind '" + spec.kind + "'");
}

}  // namespace wargame
