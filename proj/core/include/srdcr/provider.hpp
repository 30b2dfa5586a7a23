#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "srdcr/errors.hpp"

namespace srdcr {

enum class Role { System, User, Assistant };

std::string role_tag(Role role);

struct Message {
    Role role = Role::User;
    std::string content;
};

struct CompletionRequest {
    std::vector<Message> messages;
    double temperature = 0.0;
    int max_tokens = 256;
    bool want_logprobs = false;
    // Disambiguates repeated stochastic draws on the scripted backend, so
    // sampled statistics are replayable.
    std::uint32_t sample_index = 0;
};

struct TokenLogprob {
    std::string token;
    double logprob = 0.0;  // always <= 0
};

struct CompletionResponse {
    std::string text;
    std::optional<std::vector<TokenLogprob>> token_logprobs;
};

// Uniform chat-completion interface. Implementations must be safe for
// concurrent complete() calls.
class ChatProvider {
  public:
    virtual ~ChatProvider() = default;
    virtual CompletionResponse complete(const CompletionRequest& request) = 0;
};

// Canonical flattening used by the scripted matcher: one "TAG: content" line
// per message, byte-identical across runs for identical input.
std::string render_prompt(const std::vector<Message>& messages);

// Throws PreconditionViolation if messages are empty, any content is blank,
// or the last message is not a User turn.
void validate_request(const CompletionRequest& request);

}  // namespace srdcr
