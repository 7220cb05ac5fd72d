#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wargame/util/error.hpp"

namespace wargame {

struct ScenarioBlock {
  std::string id;
  std::string source;  // "scenario" for briefing text, "artifact" for tool instructions
  std::string text;
};

class ScenarioError : public Error {
 public:
  using Error::Error;
};

// Versioned scenario text loaded from a directory of block files.
//
// Each file is UTF-8 with a front-matter header:
//
//     ---
//     id: introduction
//     source: scenario
//     ---
//     <block text>
//
// The block text is everything after the header minus one trailing newline.
// `checksums.sha256` in the same directory (sha256sum format) pins every file.
class ScenarioScript {
 public:
  static ScenarioScript load(const std::filesystem::path& dir, bool verify_checksums = true);
  // WARGAME_SCENARIO_DIR if set, otherwise the directory compiled in at build time.
  static ScenarioScript load_default();
  static std::filesystem::path default_dir();

  const std::string& block(std::string_view id) const;
  bool has_block(std::string_view id) const noexcept;
  std::span<const ScenarioBlock> blocks() const noexcept { return blocks_; }
  const std::string& version() const noexcept { return version_; }

 private:
  std::string version_;
  std::vector<ScenarioBlock> blocks_;
};

// Every block id the prompt builder needs; load() rejects scripts missing any.
std::span<const std::string_view> required_block_ids() noexcept;

}  // namespace wargame
