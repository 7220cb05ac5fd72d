#include "wargame/gateway/scripted.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wargame/util/hash.hpp"

namespace wargame {

ScriptedBackend::ScriptedBackend(std::map<Key, std::string> replies, std::string fixture_sha256)
    : replies_(std::move(replies)), fixture_sha256_(std::move(fixture_sha256)) {}

ScriptedBackend ScriptedBackend::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read scripted fixture " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string content = ss.str();

  std::map<Key, std::string> replies;
  std::istringstream lines(content);
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    ++n;
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(n);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError(where + ": " + e.what());
    }
    if (!j.contains("game") || !j.contains("turn") || !j.contains("reply"))
      throw SchemaError(where + ": fixture entry needs game, turn and reply");
    Key key{j["game"].get<std::string>(), j["turn"].get<int>()};
    if (!replies.emplace(key, j["reply"].get<std::string>()).second)
      throw SchemaError(where + ": duplicate fixture entry for " + key.first + " turn " + std::to_string(key.second));
  }
  return ScriptedBackend(std::move(replies), util::sha256_hex(content));
}

BackendReply ScriptedBackend::complete(const CompletionRequest& request, const GenerationParams&) {
  const auto it = replies_.find({request.game_key, request.turn_index});
  if (it == replies_.end())
    throw FixtureMiss("no scripted reply for game '" + request.game_key + "' turn " +
                      std::to_string(request.turn_index));
  return {it->second, 1};
}

BackendDescriptor ScriptedBackend::descriptor() const {
  BackendDescriptor d;
  d.kind = "scripted";
  d.model = "scripted";
  d.temperature = 0.0;
  d.fixture_sha256 = fixture_sha256_;
  return d;
}


BackendReply RecordingBackend::complete(const CompletionRequest& request, const GenerationParams& params) {
  BackendReply reply = inner_->complete(request, params);
  std::lock_guard lock(mu_);
  replies_[{request.game_key, request.turn_index}] = reply.text;
  return reply;
}

void RecordingBackend::write(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write scripted fixture " + path.string());
  std::lock_guard lock(mu_);
  for (const auto& [key, text] : replies_)
    out << nlohmann::json{{"game", key.first}, {"turn", key.second}, {"reply", text}}.dump(
               -1, ' ', false, nlohmann::json::error_handler_t::replace)
        << "\n";
  if (!out) throw Error("write to scripted fixture failed: " + path.string());
}

std::size_t RecordingBackend::size() const {
  std::lock_guard lock(mu_);
  return replies_.size();
}

}  // namespace wargame
