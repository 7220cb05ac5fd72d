#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "wargame/gateway/chat.hpp"

namespace wargame {

struct EndpointConfig {
  std::string base_url;     // e.g. "https://api.openai.com/v1"
  std::string model_name;   // e.g. "gpt-4o"
  std::string api_key_ref;  // name of the environment variable holding the key
  int max_retries = 3;
  std::chrono::milliseconds request_timeout{120000};
  int per_minute_request_cap = 60;
  double sampling_temperature = 1.0;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;
using SteadyClock = std::function<std::chrono::steady_clock::time_point()>;

Sleeper real_sleeper();
SteadyClock real_clock();

// Exponential backoff: attempt k waits min(base * 2^k, max_delay); no retry is
// scheduled once the accumulated wait would pass total_cap.
struct RetryPolicy {
  int max_retries = 3;
  std::chrono::milliseconds base_delay{500};
  std::chrono::milliseconds max_delay{8000};
  std::chrono::milliseconds total_cap{30000};

  std::chrono::milliseconds delay(int retry) const;
};

// Token bucket holding up to `per_minute` tokens, refilled continuously.
class TokenBucket {
 public:
  TokenBucket(int per_minute, SteadyClock clock = real_clock(), Sleeper sleeper = real_sleeper());
  // Blocks until a token is available.
  void acquire();
  // Non-blocking variant.
  bool try_acquire();

 private:
  void refill_locked();

  double capacity_;
  double tokens_;
  double per_ms_;
  std::chrono::steady_clock::time_point last_;
  SteadyClock clock_;
  Sleeper sleeper_;
  std::mutex mu_;
};

// One bucket per (base_url, model) shared by every backend in the process.
std::shared_ptr<TokenBucket> shared_rate_limiter(const EndpointConfig& cfg);

struct HttpResponse {
  int status = 0;  // 0 when the connection failed
  std::string body;
  std::string transport_error;
};

class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResponse post_json(const std::string& path, const std::string& body,
                                 const std::vector<std::pair<std::string, std::string>>& headers) = 0;
};

// cpp-httplib client for http:// and https:// base URLs.
std::unique_ptr<HttpTransport> make_http_transport(const std::string& base_url, std::chrono::milliseconds timeout);

// OpenAI-compatible chat completions client:
// POST {base}/chat/completions {model, messages, max_tokens, temperature}.
//
// 401/403 -> AuthError (no retry); 429 -> retried, then RateLimited;
// context-length errors -> ContextOverflow; 5xx and connection failures ->
// retried, then TransportError.
class HttpChatBackend : public Backend {
 public:
  HttpChatBackend(EndpointConfig cfg, std::unique_ptr<HttpTransport> transport,
                  std::shared_ptr<TokenBucket> limiter, RetryPolicy policy, Sleeper sleeper = real_sleeper());
  // Real transport, shared limiter, policy from cfg.max_retries.
  static std::unique_ptr<HttpChatBackend> create(const EndpointConfig& cfg);

  BackendReply complete(const CompletionRequest& request, const GenerationParams& params) override;
  BackendDescriptor descriptor() const override;

  // Total time slept in backoff by this backend.
  std::chrono::milliseconds total_backoff() const;

 private:
  EndpointConfig cfg_;
  std::unique_ptr<HttpTransport> transport_;
  std::shared_ptr<TokenBucket> limiter_;
  RetryPolicy policy_;
  Sleeper sleeper_;
  std::string path_prefix_;
  mutable std::mutex stats_mu_;
  std::chrono::milliseconds backoff_total_{0};
};

}  // namespace wargame
