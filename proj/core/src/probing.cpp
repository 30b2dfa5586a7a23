#include "srdcr/probing.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "srdcr/harness.hpp"

namespace srdcr {

std::string tier_name(KnowledgeTier tier) {
    switch (tier) {
        case KnowledgeTier::HighlyKnown: return "HighlyKnown";
        case KnowledgeTier::MaybeKnown: return "MaybeKnown";
        case KnowledgeTier::WeaklyKnown: return "WeaklyKnown";
        case KnowledgeTier::Unknown: return "Unknown";
    }
    return "?";
}

FewShotSet select_exemplars(const std::vector<QAInstance>& pool,
                            const std::string& query_id, unsigned seed) {
    std::vector<const QAInstance*> eligible;
    for (const auto& inst : pool) {
        if (inst.id != query_id) eligible.push_back(&inst);
    }
    if (eligible.size() < kFewShotCount) {
        throw PreconditionViolation(
            "exemplar pool too small: need " + std::to_string(kFewShotCount) +
            ", have " + std::to_string(eligible.size()));
    }
    std::seed_seq seq{seed,
                      static_cast<unsigned>(std::hash<std::string>{}(query_id))};
    std::mt19937 rng(seq);
    std::vector<std::size_t> indices(eligible.size());
    std::iota(indices.begin(), indices.end(), 0);
    std::shuffle(indices.begin(), indices.end(), rng);

    FewShotSet shots;
    shots.seed = seed;
    for (int i = 0; i < kFewShotCount; ++i) {
        const QAInstance* inst = eligible[indices[i]];
        shots.exemplars.push_back({inst->question, inst->answer});
    }
    return shots;
}

namespace {

void validate_shots(const FewShotSet& shots) {
    if (shots.exemplars.size() != kFewShotCount) {
        throw PreconditionViolation(
            "FewShotSet must hold exactly " + std::to_string(kFewShotCount) +
            " exemplars, got " + std::to_string(shots.exemplars.size()));
    }
}

}  // namespace

std::vector<Message> build_fewshot_prompt(const std::string& question,
                                          const FewShotSet& shots,
                                          const std::string& context) {
    validate_shots(shots);
    if (question.empty()) {
        throw PreconditionViolation("build_fewshot_prompt: empty question");
    }
    return prompts::few_shot(question, shots.exemplars, context);
}

SampledRecall sample_recall(ChatProvider& provider, const std::string& question,
                            const std::string& gold, const FewShotSet& shots,
                            int n, double temperature) {
    if (n < 1) throw PreconditionViolation("sample_recall: n must be >= 1");
    validate_shots(shots);

    CompletionRequest request;
    request.messages = build_fewshot_prompt(question, shots);
    request.temperature = temperature;
    request.max_tokens = 64;

    SampledRecall recall;
    recall.n_samples = n;
    // Any draw failing aborts the whole estimate; a shrunken denominator
    // would silently bias the tier.
    for (int i = 0; i < n; ++i) {
        request.sample_index = static_cast<std::uint32_t>(i);
        const CompletionResponse response = provider.complete(request);
        if (exact_match(response.text, gold)) ++recall.n_correct;
    }
    recall.accuracy = double(recall.n_correct) / double(recall.n_samples);
    return recall;
}

KnowledgeTier categorize(const SampledRecall& recall) {
    const double acc = recall.accuracy;
    if (acc >= 0.85) return KnowledgeTier::HighlyKnown;
    if (acc >= 0.30) return KnowledgeTier::MaybeKnown;
    if (acc > 0.0) return KnowledgeTier::WeaklyKnown;
    return KnowledgeTier::Unknown;
}

}  // namespace srdcr
