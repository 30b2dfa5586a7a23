#pragma once

#include <optional>
#include <string>
#include <vector>

#include "srdcr/provider.hpp"

namespace srdcr {

struct ScriptedResponse {
    std::string text;
    std::optional<std::vector<TokenLogprob>> token_logprobs;
};

// One deterministic stimulus/response rule. The matcher is a plain substring
// pattern over the rendered prompt. Response selection is a pure function of
// (temperature, sample_index): index 0 when temperature == 0, otherwise
// sample_index mod responses.size().
struct ScriptedRule {
    std::string matcher;
    std::vector<ScriptedResponse> responses;
};

// Deterministic offline backend. Immutable after construction; rules are
// tried in order and the first substring match wins.
class ScriptedProvider final : public ChatProvider {
  public:
    explicit ScriptedProvider(std::vector<ScriptedRule> rules);

    CompletionResponse complete(const CompletionRequest& request) override;

  private:
    std::vector<ScriptedRule> rules_;
};

// JSON Lines, one ScriptedRule per line:
//   {"matcher": "...", "responses": [{"text": "...",
//       "token_logprobs": [["tok", -0.1], ...]}, ...]}
std::vector<ScriptedRule> load_script(const std::string& path);
std::vector<ScriptedRule> parse_script(const std::string& jsonl);

}  // namespace srdcr
