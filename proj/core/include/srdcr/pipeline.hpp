#pragma once

#include <optional>
#include <string>

#include "srdcr/confidence.hpp"
#include "srdcr/dataset.hpp"
#include "srdcr/debate.hpp"
#include "srdcr/probing.hpp"
#include "srdcr/provider.hpp"

namespace srdcr {

enum class Outcome { Context, Prior, Abstain };

std::string outcome_name(Outcome outcome);

// Three-way result of the SR-DCR gate:
//   Context  iff verdict Reasonable
//   Prior    iff verdict Unreasonable and confidence High
//   Abstain  iff verdict Unreasonable and confidence Low
struct FinalAnswer {
    Outcome outcome = Outcome::Abstain;
    std::optional<std::string> answer;  // absent on Abstain
    Verdict verdict = Verdict::Unreasonable;
    ConfidenceLabel confidence = ConfidenceLabel::Low;
};

// Pure gate over (verdict, label, a_ctx, a_prior); no provider calls.
FinalAnswer decide(Verdict verdict, ConfidenceLabel confidence,
                   const std::string& context_answer,
                   const std::string& prior_answer);

// Temperature-0 few-shot completion conditioned on (q, c).
std::string answer_with_context(ChatProvider& provider,
                                const std::string& question,
                                const std::string& context,
                                const FewShotSet& shots);

// Temperature-0 few-shot completion with no context block.
std::string answer_prior(ChatProvider& provider, const std::string& question,
                         const FewShotSet& shots);

struct SrDcrResult {
    FinalAnswer final_answer;
    std::string context_answer;
    std::string prior_answer;
    Transcript transcript;
};

// Full three-stage pipeline: both answers, cached confidence on the prior
// answer, ACVD debate, then the gate. The debate always runs, even at high
// confidence, since the rule consults the verdict first.
SrDcrResult sr_dcr(ChatProvider& provider, const QAInstance& instance,
                   const FewShotSet& shots, ConfidenceCache& confidence,
                   const DebateConfig& config = {});

// Fixed three-line Sub-question / Sub-answer / Final-answer template;
// the answer is the text on the final-answer line.
std::string self_ask(ChatProvider& provider, const std::string& question,
                     const std::string& context);

// Initial answer, bulleted critique, then a revision that is the output.
std::string rci(ChatProvider& provider, const std::string& question,
                const std::string& context);

std::string few_shot(ChatProvider& provider, const std::string& question,
                     const std::string& context, const FewShotSet& shots);

}  // namespace srdcr
