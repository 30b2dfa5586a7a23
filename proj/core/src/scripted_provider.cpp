#include "srdcr/scripted_provider.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace srdcr {

namespace {

void validate_rule(const ScriptedRule& rule) {
    if (rule.matcher.empty()) {
        throw InvariantViolation("scripted rule has empty matcher");
    }
    if (rule.responses.empty()) {
        throw InvariantViolation("scripted rule has no responses");
    }
    for (const auto& r : rule.responses) {
        if (!r.token_logprobs) continue;
        std::string concat;
        for (const auto& tl : *r.token_logprobs) {
            if (tl.logprob > 0.0) {
                throw InvariantViolation("scripted logprob > 0");
            }
            concat += tl.token;
        }
        if (concat != r.text) {
            throw InvariantViolation(
                "scripted token_logprobs do not concatenate to text");
        }
    }
}

}  // namespace

ScriptedProvider::ScriptedProvider(std::vector<ScriptedRule> rules)
    : rules_(std::move(rules)) {
    for (const auto& rule : rules_) validate_rule(rule);
}

CompletionResponse ScriptedProvider::complete(const CompletionRequest& request) {
    validate_request(request);
    const std::string prompt = render_prompt(request.messages);

    for (const auto& rule : rules_) {
        if (prompt.find(rule.matcher) == std::string::npos) continue;

        const std::size_t index =
            request.temperature == 0.0
                ? 0
                : request.sample_index % rule.responses.size();
        const ScriptedResponse& chosen = rule.responses[index];

        CompletionResponse response;
        response.text = chosen.text;
        if (request.want_logprobs) {
            if (!chosen.token_logprobs) {
                throw UnsupportedLogprobs(
                    "scripted rule '" + rule.matcher +
                    "' has no token logprobs for response " +
                    std::to_string(index));
            }
            response.token_logprobs = chosen.token_logprobs;
        }
        return response;
    }
    throw ScriptMiss("no scripted rule matches prompt:\n" + prompt);
}

std::vector<ScriptedRule> parse_script(const std::string& jsonl) {
    std::vector<ScriptedRule> rules;
    std::istringstream in(jsonl);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("script line " + std::to_string(lineno) + ": " +
                             e.what());
        }
        ScriptedRule rule;
        rule.matcher = j.at("matcher").get<std::string>();
        for (const auto& rj : j.at("responses")) {
            ScriptedResponse r;
            r.text = rj.at("text").get<std::string>();
            if (rj.contains("token_logprobs")) {
                std::vector<TokenLogprob> lps;
                for (const auto& pair : rj.at("token_logprobs")) {
                    lps.push_back({pair.at(0).get<std::string>(),
                                   pair.at(1).get<double>()});
                }
                r.token_logprobs = std::move(lps);
            }
            rule.responses.push_back(std::move(r));
        }
        validate_rule(rule);
        rules.push_back(std::move(rule));
    }
    return rules;
}

std::vector<ScriptedRule> load_script(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open script file: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_script(buf.str());
}

}  // namespace srdcr
