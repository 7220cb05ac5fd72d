#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "wargame/gateway/chat.hpp"

namespace wargame {

// Replays canned replies keyed by (game key, assistant turn index).
//
// Fixture format, one JSON object per line:
//   {"game": "default-team03-high-basic-revisionist", "turn": 0, "reply": "..."}
// A lookup miss raises FixtureMiss. Immutable after load.
class ScriptedBackend : public Backend {
 public:
  using Key = std::pair<std::string, int>;

  explicit ScriptedBackend(std::map<Key, std::string> replies, std::string fixture_sha256 = {});
  static ScriptedBackend load(const std::filesystem::path& path);

  BackendReply complete(const CompletionRequest& request, const GenerationParams& params) override;
  BackendDescriptor descriptor() const override;

  std::size_t size() const noexcept { return replies_.size(); }

 private:
  std::map<Key, std::string> replies_;
  std::string fixture_sha256_;
};

// Passes requests through to another backend and keeps every reply so the
// run can be replayed later by a ScriptedBackend.
class RecordingBackend : public Backend {
 public:
  explicit RecordingBackend(Backend& inner) : inner_(&inner) {}

  BackendReply complete(const CompletionRequest& request, const GenerationParams& params) override;
  BackendDescriptor descriptor() const override { return inner_->descriptor(); }

  // Writes the fixture sorted by (game, turn).
  void write(const std::filesystem::path& path) const;
  std::size_t size() const;

 private:
  Backend* inner_;
  mutable std::mutex mu_;
  std::map<ScriptedBackend::Key, std::string> replies_;
};

}  // namespace wargame
