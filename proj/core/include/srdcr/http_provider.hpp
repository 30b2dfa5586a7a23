#pragma once

#include <chrono>
#include <memory>
#include <mutex>
#include <string>

#include "srdcr/provider.hpp"

namespace srdcr {

// Injectable clock so rate limiting and backoff are testable without
// real sleeps.
class Clock {
  public:
    virtual ~Clock() = default;
    virtual std::chrono::steady_clock::time_point now() = 0;
    virtual void sleep_for(std::chrono::milliseconds d) = 0;
};

class SystemClock final : public Clock {
  public:
    std::chrono::steady_clock::time_point now() override;
    void sleep_for(std::chrono::milliseconds d) override;
};

// Enforces a minimum spacing of 1/rps between acquisitions. Shared per
// provider instance; safe under concurrent callers.
class RateLimiter {
  public:
    RateLimiter(double requests_per_second, std::shared_ptr<Clock> clock);

    // Blocks (via the clock) until the next request slot is available.
    void acquire();

  private:
    std::chrono::milliseconds interval_;
    std::shared_ptr<Clock> clock_;
    std::mutex mutex_;
    std::chrono::steady_clock::time_point next_slot_{};
    bool first_ = true;
};

struct HttpProviderOptions {
    std::string endpoint;   // e.g. https://api.openai.com/v1/chat/completions
    std::string model;
    std::string api_key;    // resolved from env by the config loader
    double requests_per_second = 1.0;
    int retry_count = 3;
    std::chrono::milliseconds backoff_base{500};
};

// OpenAI-style chat-completions client with capped exponential backoff on
// transient failures and a shared rate limiter.
class HttpProvider : public ChatProvider {
  public:
    HttpProvider(HttpProviderOptions options,
                 std::shared_ptr<Clock> clock = std::make_shared<SystemClock>());

    CompletionResponse complete(const CompletionRequest& request) override;

  protected:
    // One network round trip; overridable in tests to fake the transport.
    virtual CompletionResponse attempt_once(const CompletionRequest& request);

  private:
    HttpProviderOptions options_;
    std::shared_ptr<Clock> clock_;
    RateLimiter limiter_;
    std::string scheme_host_;
    std::string path_;
};

}  // namespace srdcr
