#include "srdcr/provider.hpp"

#include <algorithm>
#include <cctype>

namespace srdcr {

std::string role_tag(Role role) {
    switch (role) {
        case Role::System: return "SYSTEM";
        case Role::User: return "USER";
        case Role::Assistant: return "ASSISTANT";
    }
    return "UNKNOWN";
}

namespace {

bool blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

std::string render_prompt(const std::vector<Message>& messages) {
    if (messages.empty()) {
        throw PreconditionViolation("render_prompt: empty message list");
    }
    std::string out;
    for (std::size_t i = 0; i < messages.size(); ++i) {
        if (i > 0) out += '\n';
        out += role_tag(messages[i].role);
        out += ": ";
        out += messages[i].content;
    }
    return out;
}

void validate_request(const CompletionRequest& request) {
    if (request.messages.empty()) {
        throw PreconditionViolation("request has no messages");
    }
    for (const auto& m : request.messages) {
        if (blank(m.content)) {
            throw PreconditionViolation("message content is blank");
        }
    }
    if (request.messages.back().role != Role::User) {
        throw PreconditionViolation("last message must have role User");
    }
    if (request.temperature < 0.0) {
        throw PreconditionViolation("temperature must be >= 0");
    }
    if (request.max_tokens <= 0) {
        throw PreconditionViolation("max_tokens must be positive");
    }
}

}  // namespace srdcr
