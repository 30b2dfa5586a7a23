#include "srdcr/http_provider.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <json.hpp>

namespace srdcr {

std::chrono::steady_clock::time_point SystemClock::now() {
    return std::chrono::steady_clock::now();
}

void SystemClock::sleep_for(std::chrono::milliseconds d) {
    std::this_thread::sleep_for(d);
}

RateLimiter::RateLimiter(double requests_per_second,
                         std::shared_ptr<Clock> clock)
    : interval_(requests_per_second > 0.0
                    ? std::chrono::milliseconds(
                          static_cast<long>(std::ceil(1000.0 / requests_per_second)))
                    : std::chrono::milliseconds(0)),
      clock_(std::move(clock)) {}

void RateLimiter::acquire() {
    if (interval_.count() == 0) return;
    std::chrono::milliseconds wait{0};
    {
        std::lock_guard<std::mutex> lock(mutex_);
        const auto now = clock_->now();
        if (first_) {
            first_ = false;
            next_slot_ = now + interval_;
            return;
        }
        if (now >= next_slot_) {
            next_slot_ = now + interval_;
            return;
        }
        wait = std::chrono::duration_cast<std::chrono::milliseconds>(
            next_slot_ - now);
        next_slot_ += interval_;
    }
    clock_->sleep_for(wait);
}

namespace {

// Splits "https://host[:port]/path" into base URL and path.
std::pair<std::string, std::string> split_endpoint(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw PreconditionViolation("endpoint URL missing scheme: " + url);
    }
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

HttpProvider::HttpProvider(HttpProviderOptions options,
                           std::shared_ptr<Clock> clock)
    : options_(std::move(options)),
      clock_(clock),
      limiter_(options_.requests_per_second, clock) {
    std::tie(scheme_host_, path_) = split_endpoint(options_.endpoint);
}

CompletionResponse HttpProvider::attempt_once(const CompletionRequest& request) {
    nlohmann::json body;
    body["model"] = options_.model;
    body["temperature"] = request.temperature;
    body["max_tokens"] = request.max_tokens;
    if (request.want_logprobs) body["logprobs"] = true;
    auto& msgs = body["messages"] = nlohmann::json::array();
    for (const auto& m : request.messages) {
        const char* role = m.role == Role::System ? "system"
                           : m.role == Role::User ? "user"
                                                  : "assistant";
        msgs.push_back({{"role", role}, {"content", m.content}});
    }

    httplib::Client client(scheme_host_);
    client.set_connection_timeout(30);
    client.set_read_timeout(120);
    httplib::Headers headers = {
        {"Authorization", "Bearer " + options_.api_key}};

    auto result = client.Post(path_, headers, body.dump(), "application/json");
    if (!result) {
        throw TransportError("HTTP request failed: " +
                             httplib::to_string(result.error()));
    }
    if (result->status == 429 || result->status >= 500) {
        throw TransportError("HTTP status " + std::to_string(result->status));
    }
    if (result->status != 200) {
        // Client errors are not retryable; surface the body for debugging.
        throw TransportError("HTTP status " + std::to_string(result->status) +
                             ": " + result->body);
    }

    nlohmann::json j;
    try {
        j = nlohmann::json::parse(result->body);
    } catch (const nlohmann::json::exception& e) {
        throw TransportError(std::string("malformed response body: ") +
                             e.what());
    }

    CompletionResponse response;
    const auto& choice = j.at("choices").at(0);
    response.text = choice.at("message").at("content").get<std::string>();
    if (request.want_logprobs) {
        if (!choice.contains("logprobs") || choice["logprobs"].is_null()) {
            throw UnsupportedLogprobs(
                "backend returned no logprobs for model " + options_.model);
        }
        std::vector<TokenLogprob> lps;
        for (const auto& tok : choice["logprobs"]["content"]) {
            lps.push_back({tok.at("token").get<std::string>(),
                           tok.at("logprob").get<double>()});
        }
        response.token_logprobs = std::move(lps);
    }
    return response;
}

CompletionResponse HttpProvider::complete(const CompletionRequest& request) {
    validate_request(request);
    for (int attempt = 0;; ++attempt) {
        limiter_.acquire();
        try {
            return attempt_once(request);
        } catch (const UnsupportedLogprobs&) {
            throw;
        } catch (const TransportError&) {
            if (attempt >= options_.retry_count) throw;
            const auto backoff = options_.backoff_base * (1L << attempt);
            clock_->sleep_for(std::min(
                std::chrono::duration_cast<std::chrono::milliseconds>(backoff),
                std::chrono::milliseconds(60'000)));
        }
    }
}

}  // namespace srdcr
