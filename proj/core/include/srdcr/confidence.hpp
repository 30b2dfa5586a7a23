#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "srdcr/probing.hpp"
#include "srdcr/provider.hpp"

namespace srdcr {

enum class ConfidenceSource { Logprob, SelfConsistency };

struct ConfidenceScore {
    // Unset for SelfConsistency, where probability is a match fraction.
    std::optional<double> mean_logprob;
    double probability = 0.0;
    int n_tokens = 0;
    ConfidenceSource source = ConfidenceSource::Logprob;
};

enum class ConfidenceLabel { High, Low };

inline constexpr double kDefaultTau = 0.90;

// Greedy zero-context answer with geometric-mean token probability.
// Throws UnsupportedLogprobs when the backend cannot supply logprobs;
// callers route to self_consistency instead.
std::pair<std::string, ConfidenceScore> answer_confidence(
    ChatProvider& provider, const std::string& question,
    const FewShotSet& shots);

// Fraction of m temperature-0.5 draws whose normalized text matches the
// deterministic greedy answer.
std::pair<std::string, ConfidenceScore> self_consistency(
    ChatProvider& provider, const std::string& question,
    const FewShotSet& shots, int m = 16, double temperature = 0.5);

// High iff probability >= tau (boundary inclusive).
ConfidenceLabel label(const ConfidenceScore& score, double tau = kDefaultTau);

struct CachedConfidence {
    std::string answer;
    ConfidenceScore score;
    ConfidenceLabel label = ConfidenceLabel::Low;
};

// Per-instance cache so repeated gating never re-queries the backend.
// Safe under concurrent read/write; writes for the same key are identical
// by determinism of the scripted backend.
class ConfidenceCache {
  public:
    explicit ConfidenceCache(double tau = kDefaultTau);

    // Computes once per instance id: logprob path first, self-consistency
    // fallback when the backend lacks logprobs.
    CachedConfidence get(ChatProvider& provider, const std::string& instance_id,
                         const std::string& question, const FewShotSet& shots,
                         int consistency_samples = 16);

  private:
    double tau_;
    std::mutex mutex_;
    std::map<std::string, CachedConfidence> cache_;
};

}  // namespace srdcr
