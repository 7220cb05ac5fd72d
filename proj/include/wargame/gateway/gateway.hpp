#pragma once

#include <filesystem>
#include <fstream>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wargame/gateway/chat.hpp"

namespace wargame {

// Append-only JSONL log with one entry per request/response pair.
//
// Entry fields: ts_request, ts_response, game, turn, kind, move, backend,
// request_hash, max_tokens, messages, status ("ok" | "error"), and either
// response or error {type, message}. Each entry is written with a single
// write under a mutex and flushed, so concurrent sessions never interleave.
class TranscriptLog {
 public:
  explicit TranscriptLog(std::filesystem::path path);
  void append(const nlohmann::json& entry);
  const std::filesystem::path& path() const noexcept { return path_; }

  // Parses every line; throws SchemaError naming the first bad line.
  static std::vector<nlohmann::json> read(const std::filesystem::path& path);

 private:
  std::filesystem::path path_;
  std::mutex mu_;
  std::ofstream out_;
};

struct CompletionResult {
  std::string text;
  std::string request_hash;
  int attempts = 1;
};

// Front door for sessions: validates the history, derives generation
// parameters from the word budget, calls the backend and logs the exchange.
class Gateway {
 public:
  Gateway(Backend& backend, TranscriptLog* log) : backend_(&backend), log_(log) {}

  CompletionResult complete(const CompletionRequest& request);
  BackendDescriptor descriptor() const { return backend_->descriptor(); }

 private:
  Backend* backend_;
  TranscriptLog* log_;
};

}  // namespace wargame
