#pragma once

#include <string>
#include <vector>

#include "srdcr/dataset.hpp"
#include "srdcr/prompts.hpp"
#include "srdcr/provider.hpp"

namespace srdcr {

inline constexpr int kFewShotCount = 4;

// Exactly four exemplars; none may share an instance id with the query it
// conditions.
struct FewShotSet {
    std::vector<prompts::Exemplar> exemplars;
    unsigned seed = 0;
};

struct SampledRecall {
    int n_samples = 0;
    int n_correct = 0;
    double accuracy = 0.0;  // n_correct / n_samples exactly
};

enum class KnowledgeTier { HighlyKnown, MaybeKnown, WeaklyKnown, Unknown };

std::string tier_name(KnowledgeTier tier);

// Seeded uniform draw from the pool, excluding the query instance.
FewShotSet select_exemplars(const std::vector<QAInstance>& pool,
                            const std::string& query_id, unsigned seed);

std::vector<Message> build_fewshot_prompt(const std::string& question,
                                          const FewShotSet& shots,
                                          const std::string& context = "");

// n completions at the given temperature with sample_index 0..n-1, no
// context; correctness is harness exact-match. Partial failure aborts the
// whole estimate.
SampledRecall sample_recall(ChatProvider& provider, const std::string& question,
                            const std::string& gold, const FewShotSet& shots,
                            int n = 32, double temperature = 0.5);

// HighlyKnown >= 0.85 > MaybeKnown >= 0.30 > WeaklyKnown > 0 = Unknown.
KnowledgeTier categorize(const SampledRecall& recall);

}  // namespace srdcr
