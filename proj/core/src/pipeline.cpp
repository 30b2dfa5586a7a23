#include "srdcr/pipeline.hpp"

#include <cctype>
#include <sstream>

#include "srdcr/prompts.hpp"

namespace srdcr {

std::string outcome_name(Outcome outcome) {
    switch (outcome) {
        case Outcome::Context: return "context";
        case Outcome::Prior: return "prior";
        case Outcome::Abstain: return "abstain";
    }
    return "?";
}

FinalAnswer decide(Verdict verdict, ConfidenceLabel confidence,
                   const std::string& context_answer,
                   const std::string& prior_answer) {
    FinalAnswer final_answer;
    final_answer.verdict = verdict;
    final_answer.confidence = confidence;
    if (verdict == Verdict::Reasonable) {
        final_answer.outcome = Outcome::Context;
        final_answer.answer = context_answer;
    } else if (confidence == ConfidenceLabel::High) {
        final_answer.outcome = Outcome::Prior;
        final_answer.answer = prior_answer;
    } else {
        final_answer.outcome = Outcome::Abstain;
    }
    return final_answer;
}

namespace {

std::string trimmed_completion(ChatProvider& provider,
                               std::vector<Message> messages, int max_tokens) {
    CompletionRequest request;
    request.messages = std::move(messages);
    request.temperature = 0.0;
    request.max_tokens = max_tokens;
    std::string text = provider.complete(request).text;
    const auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

}  // namespace

std::string answer_with_context(ChatProvider& provider,
                                const std::string& question,
                                const std::string& context,
                                const FewShotSet& shots) {
    if (context.empty()) {
        throw PreconditionViolation("answer_with_context: empty context");
    }
    return trimmed_completion(provider,
                              build_fewshot_prompt(question, shots, context), 64);
}

std::string answer_prior(ChatProvider& provider, const std::string& question,
                         const FewShotSet& shots) {
    return trimmed_completion(provider, build_fewshot_prompt(question, shots),
                              64);
}

SrDcrResult sr_dcr(ChatProvider& provider, const QAInstance& instance,
                   const FewShotSet& shots, ConfidenceCache& confidence,
                   const DebateConfig& config) {
    if (instance.context.empty()) {
        throw PreconditionViolation("sr_dcr: instance has empty context");
    }

    SrDcrResult result;
    result.context_answer =
        answer_with_context(provider, instance.question, instance.context, shots);
    const CachedConfidence cached =
        confidence.get(provider, instance.id, instance.question, shots);
    result.prior_answer = cached.answer;

    result.transcript =
        acvd_debate(provider, instance.question, instance.context,
                    result.context_answer, result.prior_answer, config);

    result.final_answer = decide(result.transcript.final_verdict, cached.label,
                                 result.context_answer, result.prior_answer);
    return result;
}

std::string self_ask(ChatProvider& provider, const std::string& question,
                     const std::string& context) {
    for (bool strict : {false, true}) {
        CompletionRequest request;
        request.messages = prompts::self_ask(question, context, strict);
        request.temperature = 0.0;
        request.max_tokens = 400;
        const std::string reply = provider.complete(request).text;

        // line-scoped extraction: trailing prose after the marker line is
        // ignored
        std::istringstream in(reply);
        std::string line;
        std::optional<std::string> answer;
        while (std::getline(in, line)) {
            std::string lowered = line;
            for (auto& c : lowered) c = static_cast<char>(std::tolower(c));
            const auto pos = lowered.find("final answer:");
            if (pos != std::string::npos) {
                answer = line.substr(pos + std::string("final answer:").size());
                const auto b = answer->find_first_not_of(" \t");
                *answer = b == std::string::npos ? "" : answer->substr(b);
            }
        }
        if (answer && !answer->empty()) return *answer;
    }
    throw TemplateParseFailure("self_ask: no final-answer line after re-ask");
}

std::string rci(ChatProvider& provider, const std::string& question,
                const std::string& context) {
    const std::string initial = trimmed_completion(
        provider, prompts::rci_initial(question, context), 300);
    const std::string critique = trimmed_completion(
        provider, prompts::rci_critique(question, context, initial), 300);
    const std::string revised = trimmed_completion(
        provider, prompts::rci_revise(question, context, initial, critique),
        300);
    if (revised.empty()) throw EmptyAnswer("rci: empty revised answer");
    return revised;
}

std::string few_shot(ChatProvider& provider, const std::string& question,
                     const std::string& context, const FewShotSet& shots) {
    return answer_with_context(provider, question, context, shots);
}

}  // namespace srdcr
