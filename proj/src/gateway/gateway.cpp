#include "wargame/gateway/gateway.hpp"

#include <nlohmann/json.hpp>

#include "wargame/util/time.hpp"

namespace wargame {

TranscriptLog::TranscriptLog(std::filesystem::path path) : path_(std::move(path)) {
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  out_.open(path_, std::ios::app | std::ios::binary);
  if (!out_) throw ConfigError("cannot open transcript log " + path_.string());
}

void TranscriptLog::append(const nlohmann::json& entry) {
  const std::string line = entry.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
  std::lock_guard lock(mu_);
  out_.write(line.data(), static_cast<std::streamsize>(line.size()));
  out_.flush();
  if (!out_) throw Error("write to transcript log failed: " + path_.string());
}

std::vector<nlohmann::json> TranscriptLog::read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read transcript log " + path.string());
  std::vector<nlohmann::json> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      out.push_back(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError(path.string() + ":" + std::to_string(n) + ": malformed transcript entry: " + e.what());
    }
  }
  return out;
}

CompletionResult Gateway::complete(const CompletionRequest& request) {
  if (request.history.empty() || request.history.front().role != Role::System)
    throw ConfigError("chat history must start with a system turn");
  for (const auto& t : request.history)
    if (t.role != Role::Assistant && t.content.empty())
      throw ConfigError("system and user turns must have content");

  const GenerationParams params = word_budget_hint(request.budget_words);
  const BackendDescriptor desc = backend_->descriptor();
  CompletionResult result;
  result.request_hash = request_hash(desc, request.history, params);

  nlohmann::json entry;
  if (log_) {
    nlohmann::json messages = nlohmann::json::array();
    for (const auto& t : request.history) messages.push_back({{"role", to_string(t.role)}, {"content", t.content}});
    entry = {{"ts_request", util::iso8601_now()},
             {"game", request.game_key},
             {"turn", request.turn_index},
             {"kind", to_string(request.kind)},
             {"move", static_cast<int>(request.move)},
             {"backend", {{"kind", desc.kind}, {"model", desc.model}, {"endpoint", desc.endpoint}}},
             {"request_hash", result.request_hash},
             {"max_tokens", params.max_tokens},
             {"messages", std::move(messages)}};
  }
  try {
    const BackendReply reply = backend_->complete(request, params);
    result.text = reply.text;
    result.attempts = reply.attempts;
  } catch (const GatewayError& e) {
    if (log_) {
      entry["ts_response"] = util::iso8601_now();
      entry["status"] = "error";
      entry["error"] = {{"type", e.type()}, {"message", e.what()}};
      log_->append(entry);
    }
    throw;
  }
  if (log_) {
    entry["ts_response"] = util::iso8601_now();
    entry["status"] = "ok";
    entry["attempts"] = result.attempts;
    entry["response"] = result.text;
    log_->append(entry);
  }
  return result;
}

}  // namespace wargame
