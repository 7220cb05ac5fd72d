#include "wargame/scenario/scenario.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "wargame/util/hash.hpp"
#include "wargame/util/text.hpp"

#ifndef WARGAME_DEFAULT_SCENARIO_DIR
#define WARGAME_DEFAULT_SCENARIO_DIR "data/scenario-v1"
#endif

namespace wargame {
namespace {

constexpr std::array<std::string_view, 39> kRequired{
    "llm-preamble",
    "introduction",
    "incident",
    "roles",
    "forces",
    "new-technology",
    "priorities",
    "recommendation",
    "move1-heading",
    "accuracy-insert",
    "training-basic",
    "training-extensive",
    "dialog-instruction",
    "move1-questions",
    "move1-end-state-question",
    "move1-selection-form",
    "move2-transition",
    "move2-confirm",
    "move2-global-response",
    "move2-reporting-revisionist",
    "move2-reporting-status-quo",
    "move2-questions",
    "move2-course-question",
    "move2-selection-form",
    "move2-end-state-question",
    "closing",
    "direct-answer-instruction",
    "dialog-length",
    "dialog-continue",
    "answer-request",
    "answer-format-move1",
    "answer-format-move2",
    "reelicit-reminder",
    "confirm-direct",
    "roleplay-emphasis",
    "disagreement-emphasis",
    "players-heading",
    "persona-strict-pacifists",
    "persona-aggressive-sociopaths",
};

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ScenarioError("cannot read scenario file " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ScenarioBlock parse_block_file(const std::filesystem::path& p, const std::string& content) {
  constexpr std::string_view kFence = "---\n";
  if (content.rfind(kFence, 0) != 0) throw ScenarioError(p.string() + ": missing front matter");
  const std::size_t close = content.find("\n---\n", kFence.size() - 1);
  if (close == std::string::npos) throw ScenarioError(p.string() + ": unterminated front matter");
  ScenarioBlock block;
  std::istringstream header(content.substr(kFence.size(), close + 1 - kFence.size()));
  std::string line;
  while (std::getline(header, line)) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    const std::string key(util::trim(std::string_view(line).substr(0, colon)));
    const std::string value(util::trim(std::string_view(line).substr(colon + 1)));
    if (key == "id") block.id = value;
    if (key == "source") block.source = value;
  }
  if (block.id.empty()) throw ScenarioError(p.string() + ": front matter has no id");
  block.text = content.substr(close + 5);
  if (!block.text.empty() && block.text.back() == '\n') block.text.pop_back();
  return block;
}

}  // namespace

std::span<const std::string_view> required_block_ids() noexcept { return kRequired; }

std::filesystem::path ScenarioScript::default_dir() {
  if (const char* env = std::getenv("WARGAME_SCENARIO_DIR"); env && *env) return env;
  return WARGAME_DEFAULT_SCENARIO_DIR;
}

ScenarioScript ScenarioScript::load_default() { return load(default_dir()); }

ScenarioScript ScenarioScript::load(const std::filesystem::path& dir, bool verify_checksums) {
  if (!std::filesystem::is_directory(dir)) throw ScenarioError("scenario directory not found: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::map<std::string, std::string> expected;
  if (verify_checksums) {
    std::istringstream sums(read_file(dir / "checksums.sha256"));
    std::string line;
    while (std::getline(sums, line)) {
      if (util::trim(line).empty()) continue;
      const auto sp = line.find("  ");
      if (sp == std::string::npos) throw ScenarioError("malformed checksums.sha256 line: " + line);
      expected[line.substr(sp + 2)] = line.substr(0, sp);
    }
  }

  ScenarioScript script;
  script.version_ = dir.filename().string();
  if (script.version_.empty()) script.version_ = dir.parent_path().filename().string();
  for (const auto& f : files) {
    const std::string content = read_file(f);
    if (verify_checksums) {
      const auto it = expected.find(f.filename().string());
      if (it == expected.end()) throw ScenarioError("no checksum recorded for " + f.filename().string());
      if (it->second != util::sha256_hex(content))
        throw ScenarioError("checksum mismatch for " + f.filename().string() + " in " + script.version_);
      expected.erase(it);
    }
    ScenarioBlock block = parse_block_file(f, content);
    if (script.has_block(block.id)) throw ScenarioError("duplicate scenario block id: " + block.id);
    script.blocks_.push_back(std::move(block));
  }
  if (verify_checksums && !expected.empty())
    throw ScenarioError("checksummed file missing from scenario: " + expected.begin()->first);
  for (std::string_view id : kRequired)
    if (!script.has_block(id)) throw ScenarioError("scenario is missing required block: " + std::string(id));
  return script;
}

const std::string& ScenarioScript::block(std::string_view id) const {
  for (const auto& b : blocks_)
    if (b.id == id) return b.text;
  throw ScenarioError("unknown scenario block: " + std::string(id));
}

bool ScenarioScript::has_block(std::string_view id) const noexcept {
  return std::any_of(blocks_.begin(), blocks_.end(), [&](const ScenarioBlock& b) { return b.id == id; });
}

}  // namespace wargame
