#include "srdcr/confidence.hpp"

#include <cmath>

#include "srdcr/harness.hpp"

namespace srdcr {

std::pair<std::string, ConfidenceScore> answer_confidence(
    ChatProvider& provider, const std::string& question,
    const FewShotSet& shots) {
    CompletionRequest request;
    request.messages = build_fewshot_prompt(question, shots);
    request.temperature = 0.0;
    request.max_tokens = 64;
    request.want_logprobs = true;

    const CompletionResponse response = provider.complete(request);
    if (!response.token_logprobs) {
        throw UnsupportedLogprobs("backend returned no token logprobs");
    }

    // Answer tokens = all generated tokens after stripping trailing
    // whitespace / stop sequences; no span extraction inside the output.
    const auto& tokens = *response.token_logprobs;
    std::size_t end = tokens.size();
    while (end > 0) {
        const std::string& tok = tokens[end - 1].token;
        const bool ws = tok.find_first_not_of(" \t\r\n") == std::string::npos;
        if (!ws) break;
        --end;
    }
    std::size_t begin = 0;
    while (begin < end) {
        const std::string& tok = tokens[begin].token;
        const bool ws = tok.find_first_not_of(" \t\r\n") == std::string::npos;
        if (!ws) break;
        ++begin;
    }
    if (begin >= end) {
        throw EmptyAnswer("no answer tokens after stripping");
    }

    double sum = 0.0;
    for (std::size_t i = begin; i < end; ++i) sum += tokens[i].logprob;
    const int n = static_cast<int>(end - begin);

    ConfidenceScore score;
    score.source = ConfidenceSource::Logprob;
    score.n_tokens = n;
    score.mean_logprob = sum / n;
    score.probability = std::exp(*score.mean_logprob);
    return {response.text, score};
}

std::pair<std::string, ConfidenceScore> self_consistency(
    ChatProvider& provider, const std::string& question,
    const FewShotSet& shots, int m, double temperature) {
    if (m < 1) throw PreconditionViolation("self_consistency: m must be >= 1");

    CompletionRequest greedy;
    greedy.messages = build_fewshot_prompt(question, shots);
    greedy.temperature = 0.0;
    greedy.max_tokens = 64;
    const std::string answer = provider.complete(greedy).text;

    CompletionRequest sampled = greedy;
    sampled.temperature = temperature;
    int matches = 0;
    for (int i = 0; i < m; ++i) {
        sampled.sample_index = static_cast<std::uint32_t>(i);
        if (exact_match(provider.complete(sampled).text, answer)) ++matches;
    }

    ConfidenceScore score;
    score.source = ConfidenceSource::SelfConsistency;
    score.probability = double(matches) / double(m);
    score.n_tokens = 0;
    return {answer, score};
}

ConfidenceLabel label(const ConfidenceScore& score, double tau) {
    if (tau <= 0.0 || tau >= 1.0) {
        throw PreconditionViolation("tau must lie in (0,1)");
    }
    return score.probability >= tau ? ConfidenceLabel::High
                                    : ConfidenceLabel::Low;
}

ConfidenceCache::ConfidenceCache(double tau) : tau_(tau) {}

CachedConfidence ConfidenceCache::get(ChatProvider& provider,
                                      const std::string& instance_id,
                                      const std::string& question,
                                      const FewShotSet& shots,
                                      int consistency_samples) {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(instance_id);
        if (it != cache_.end()) return it->second;
    }

    CachedConfidence entry;
    try {
        std::tie(entry.answer, entry.score) =
            answer_confidence(provider, question, shots);
    } catch (const UnsupportedLogprobs&) {
        std::tie(entry.answer, entry.score) =
            self_consistency(provider, question, shots, consistency_samples);
    }
    entry.label = label(entry.score, tau_);

    std::lock_guard<std::mutex> lock(mutex_);
    // last-write-wins; concurrent writers produce identical entries
    cache_[instance_id] = entry;
    return entry;
}

}  // namespace srdcr
