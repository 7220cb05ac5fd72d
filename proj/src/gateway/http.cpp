#include "wargame/gateway/http.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace wargame {

void EndpointConfig::validate() const {
  if (base_url.empty()) throw ConfigError("endpoint.base_url is required");
  if (model_name.empty()) throw ConfigError("endpoint.model is required");
  if (api_key_ref.empty()) throw ConfigError("endpoint.api_key_env is required");
  if (max_retries < 0) throw ConfigError("endpoint.max_retries must be >= 0");
  if (per_minute_request_cap <= 0) throw ConfigError("endpoint.per_minute_request_cap must be > 0");
  if (request_timeout.count() <= 0) throw ConfigError("endpoint.request_timeout_ms must be > 0");
  if (sampling_temperature < 0) throw ConfigError("endpoint.temperature must be >= 0");
}

Sleeper real_sleeper() {
  return [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

SteadyClock real_clock() {
  return [] { return std::chrono::steady_clock::now(); };
}

std::chrono::milliseconds RetryPolicy::delay(int retry) const {
  auto d = base_delay;
  for (int i = 0; i < retry && d < max_delay; ++i) d *= 2;
  return std::min(d, max_delay);
}

TokenBucket::TokenBucket(int per_minute, SteadyClock clock, Sleeper sleeper)
    : capacity_(per_minute),
      tokens_(per_minute),
      per_ms_(per_minute / 60000.0),
      clock_(std::move(clock)),
      sleeper_(std::move(sleeper)) {
  if (per_minute <= 0) throw ConfigError("rate limit must be positive");
  last_ = clock_();
}

void TokenBucket::refill_locked() {
  const auto now = clock_();
  const double elapsed = std::chrono::duration<double, std::milli>(now - last_).count();
  if (elapsed > 0) {
    tokens_ = std::min(capacity_, tokens_ + elapsed * per_ms_);
    last_ = now;
  }
}

bool TokenBucket::try_acquire() {
  std::lock_guard lock(mu_);
  refill_locked();
  if (tokens_ < 1.0) return false;
  tokens_ -= 1.0;
  return true;
}

void TokenBucket::acquire() {
  for (;;) {
    std::chrono::milliseconds wait{0};
    {
      std::lock_guard lock(mu_);
      refill_locked();
      if (tokens_ >= 1.0) {
        tokens_ -= 1.0;
        return;
      }
      wait = std::chrono::milliseconds(static_cast<long>((1.0 - tokens_) / per_ms_) + 1);
    }
    sleeper_(wait);
  }
}

std::shared_ptr<TokenBucket> shared_rate_limiter(const EndpointConfig& cfg) {
  static std::mutex mu;
  static std::map<std::string, std::weak_ptr<TokenBucket>> buckets;
  const std::string key = cfg.base_url + "|" + cfg.model_name;
  std::lock_guard lock(mu);
  if (auto existing = buckets[key].lock()) return existing;
  auto bucket = std::make_shared<TokenBucket>(cfg.per_minute_request_cap);
  buckets[key] = bucket;
  return bucket;
}

namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;    // without trailing slash
};

SplitUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("base URL needs a scheme: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  SplitUrl out;
  out.origin = url.substr(0, path_start);
  out.path = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!out.path.empty() && out.path.back() == '/') out.path.pop_back();
  return out;
}

class HttplibTransport : public HttpTransport {
 public:
  HttplibTransport(const std::string& origin, std::chrono::milliseconds timeout) : client_(origin) {
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout).count();
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout).count() % 1000000;
    client_.set_connection_timeout(secs, usecs);
    client_.set_read_timeout(secs, usecs);
    client_.set_write_timeout(secs, usecs);
  }

  HttpResponse post_json(const std::string& path, const std::string& body,
                         const std::vector<std::pair<std::string, std::string>>& headers) override {
    httplib::Headers h;
    for (const auto& [k, v] : headers) h.emplace(k, v);
    std::lock_guard lock(mu_);
    auto res = client_.Post(path, h, body, "application/json");
    HttpResponse out;
    if (!res) {
      out.transport_error = httplib::to_string(res.error());
      return out;
    }
    out.status = res->status;
    out.body = res->body;
    return out;
  }

 private:
  std::mutex mu_;
  httplib::Client client_;
};

std::string error_message(const std::string& body) {
  try {
    const auto j = nlohmann::json::parse(body);
    if (j.contains("error") && j["error"].is_object() && j["error"].contains("message"))
      return j["error"]["message"].get<std::string>();
  } catch (const nlohmann::json::exception&) {
  }
  return body.substr(0, 200);
}

bool is_context_overflow(const HttpResponse& r) {
  return (r.status == 400 || r.status == 413) && (r.body.find("context_length_exceeded") != std::string::npos ||
                                                  r.body.find("maximum context length") != std::string::npos);
}

}  // namespace

std::unique_ptr<HttpTransport> make_http_transport(const std::string& base_url, std::chrono::milliseconds timeout) {
  return std::make_unique<HttplibTransport>(split_url(base_url).origin, timeout);
}

HttpChatBackend::HttpChatBackend(EndpointConfig cfg, std::unique_ptr<HttpTransport> transport,
                                 std::shared_ptr<TokenBucket> limiter, RetryPolicy policy, Sleeper sleeper)
    : cfg_(std::move(cfg)),
      transport_(std::move(transport)),
      limiter_(std::move(limiter)),
      policy_(policy),
      sleeper_(std::move(sleeper)) {
  cfg_.validate();
  path_prefix_ = split_url(cfg_.base_url).path;
}

std::unique_ptr<HttpChatBackend> HttpChatBackend::create(const EndpointConfig& cfg) {
  cfg.validate();
  RetryPolicy policy;
  policy.max_retries = cfg.max_retries;
  return std::make_unique<HttpChatBackend>(cfg, make_http_transport(cfg.base_url, cfg.request_timeout),
                                           shared_rate_limiter(cfg), policy);
}

BackendReply HttpChatBackend::complete(const CompletionRequest& request, const GenerationParams& params) {
  const char* key = std::getenv(cfg_.api_key_ref.c_str());
  if (!key || !*key) throw AuthError("environment variable " + cfg_.api_key_ref + " is not set");

  nlohmann::json messages = nlohmann::json::array();
  for (const auto& t : request.history) messages.push_back({{"role", to_string(t.role)}, {"content", t.content}});
  const std::string body = nlohmann::json{{"model", cfg_.model_name},
                                          {"messages", std::move(messages)},
                                          {"max_tokens", params.max_tokens},
                                          {"temperature", cfg_.sampling_temperature}}
                               .dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
  const std::vector<std::pair<std::string, std::string>> headers{{"Authorization", std::string("Bearer ") + key}};

  std::chrono::milliseconds slept{0};
  for (int attempt = 0;; ++attempt) {
    limiter_->acquire();
    const HttpResponse r = transport_->post_json(path_prefix_ + "/chat/completions", body, headers);
    std::string failure;
    bool rate_limited = false;
    if (r.status == 200) {
      try {
        const auto j = nlohmann::json::parse(r.body);
        const auto& content = j.at("choices").at(0).at("message").at("content");
        if (!content.is_string()) throw TransportError("completion content is not a string");
        return {content.get<std::string>(), attempt + 1};
      } catch (const nlohmann::json::exception& e) {
        throw TransportError(std::string("malformed completion response: ") + e.what());
      }
    } else if (r.status == 401 || r.status == 403) {
      throw AuthError("endpoint rejected credentials (HTTP " + std::to_string(r.status) + "): " + error_message(r.body));
    } else if (is_context_overflow(r)) {
      throw ContextOverflow("history exceeds the model context: " + error_message(r.body));
    } else if (r.status == 429) {
      rate_limited = true;
      failure = "HTTP 429: " + error_message(r.body);
    } else if (r.status == 0) {
      failure = "connection failed: " + r.transport_error;
    } else if (r.status >= 500 || r.status == 408) {
      failure = "HTTP " + std::to_string(r.status) + ": " + error_message(r.body);
    } else {
      throw TransportError("unexpected HTTP " + std::to_string(r.status) + ": " + error_message(r.body));
    }

    const auto wait = policy_.delay(attempt);
    if (attempt >= policy_.max_retries || slept + wait > policy_.total_cap) {
      const std::string msg = failure + " (after " + std::to_string(attempt + 1) + " attempts)";
      if (rate_limited) throw RateLimited(msg);
      throw TransportError(msg);
    }
    sleeper_(wait);
    slept += wait;
    std::lock_guard lock(stats_mu_);
    backoff_total_ += wait;
  }
}

std::chrono::milliseconds HttpChatBackend::total_backoff() const {
  std::lock_guard lock(stats_mu_);
  return backoff_total_;
}

BackendDescriptor HttpChatBackend::descriptor() const {
  BackendDescriptor d;
  d.kind = "http";
  d.model = cfg_.model_name;
  d.endpoint = cfg_.base_url;
  d.temperature = cfg_.sampling_temperature;
  return d;
}

}  // namespace wargame
