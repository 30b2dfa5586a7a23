#include "srdcr/prompts.hpp"

namespace srdcr::prompts {

namespace {

std::string tagged(const char* tag, const std::string& body) {
    return std::string(tag) + " " + body;
}

}  // namespace

std::vector<Message> few_shot(const std::string& question,
                              const std::vector<Exemplar>& exemplars,
                              const std::string& context) {
    std::string user;
    user += "Answer the question with a short, exact answer. "
            "Give only the answer, no explanation.\n\n";
    for (const auto& ex : exemplars) {
        user += "Q: " + ex.question + "\nA: " + ex.answer + "\n\n";
    }
    if (!context.empty()) {
        user += "Context: " + context + "\n\n";
    }
    user += "Q: " + question + "\nA:";
    return {{Role::System, tagged(kFewShotTag, "You answer factual questions "
                                              "concisely.")},
            {Role::User, user}};
}

std::vector<Message> acvd_defender(const std::string& question,
                                   const std::string& context,
                                   const std::string& context_answer,
                                   const std::string& transcript,
                                   int round) {
    std::string sys = tagged(
        kDefenderTag,
        "You are the Defender in a debate about whether a context passage is "
        "trustworthy. You have read the passage and you defend the answer it "
        "supports: \"" + context_answer + "\". Argue that the passage is "
        "coherent and helpful. You may quote or challenge prior arguments.");
    std::string user = "Question: " + question + "\nContext: " + context + "\n";
    if (!transcript.empty()) {
        user += "\nDebate so far:\n" + transcript + "\n";
    }
    user += "\nRound " + std::to_string(round) +
            ". Give your argument for the context-based answer.";
    return {{Role::System, std::move(sys)}, {Role::User, std::move(user)}};
}

std::vector<Message> acvd_critic(const std::string& question,
                                 const std::string& prior_answer,
                                 const std::string& transcript,
                                 int round) {
    std::string sys = tagged(
        kCriticTag,
        "You are the Critic in a debate about whether an unseen context "
        "passage is trustworthy. You have NOT been shown the passage. You "
        "defend the answer from prior knowledge: \"" + prior_answer + "\". "
        "Argue that the passage may be misleading or fabricated. You may "
        "quote or challenge prior arguments.");
    std::string user = "Question: " + question + "\n";
    if (!transcript.empty()) {
        user += "\nDebate so far:\n" + transcript + "\n";
    }
    user += "\nRound " + std::to_string(round) +
            ". Give your argument for the prior-knowledge answer.";
    return {{Role::System, std::move(sys)}, {Role::User, std::move(user)}};
}

std::vector<Message> acvd_judge(const std::string& question,
                                const std::string& context,
                                const std::string& transcript,
                                bool strict_retry) {
    std::string sys = tagged(
        kAcvdJudgeTag,
        "You are the Judge. Given the question, the context passage, and the "
        "debate transcript, decide whether the context is a reasonable "
        "source for answering the question.");
    std::string user = "Question: " + question + "\nContext: " + context +
                       "\n\nDebate transcript:\n" + transcript + "\n\n";
    if (strict_retry) {
        user += "Your previous reply could not be parsed. Respond with "
                "EXACTLY one line and nothing else: either "
                "\"VERDICT: REASONABLE\" or \"VERDICT: UNREASONABLE\".";
    } else {
        user += "State your reasoning briefly, then end with a final line of "
                "exactly \"VERDICT: REASONABLE\" or \"VERDICT: UNREASONABLE\".";
    }
    return {{Role::System, std::move(sys)}, {Role::User, std::move(user)}};
}

std::vector<Message> judge_debater(bool is_agent_a,
                                   const std::string& question,
                                   const std::string& context,
                                   const std::string& own_answer,
                                   const std::string& transcript,
                                   int round) {
    const char* tag = is_agent_a ? kDebaterATag : kDebaterBTag;
    std::string stance = is_agent_a
                             ? "You support and defend the answer grounded in "
                               "the context passage: \"" + own_answer + "\"."
                             : "You support the answer based on prior "
                               "knowledge: \"" + own_answer + "\".";
    std::string sys = tagged(tag, "You are a debater. " + stance +
                                      " Present arguments, challenge your "
                                      "opponent, and defend your answer.");
    std::string user = "Question: " + question + "\nContext: " + context + "\n";
    if (!transcript.empty()) {
        user += "\nDebate so far:\n" + transcript + "\n";
    }
    user += "\nRound " + std::to_string(round) + ". Present your argument.";
    return {{Role::System, std::move(sys)}, {Role::User, std::move(user)}};
}

std::vector<Message> judge_debate_judge(const std::string& question,
                                        const std::string& context,
                                        const std::string& transcript,
                                        bool strict_retry) {
    std::string sys = tagged(
        kDebateJudgeTag,
        "You are a neutral judge. Read the question, the context, and the "
        "full debate transcript, then select the winning answer.");
    std::string user = "Question: " + question + "\nContext: " + context +
                       "\n\nDebate transcript:\n" + transcript + "\n\n";
    if (strict_retry) {
        user += "Your previous reply could not be parsed. Respond with a "
                "single line of exactly \"ANSWER: <winning answer>\" and "
                "nothing else.";
    } else {
        user += "Give a line of exactly \"ANSWER: <winning answer>\" followed "
                "by a concise justification.";
    }
    return {{Role::System, std::move(sys)}, {Role::User, std::move(user)}};
}

std::vector<Message> naive_agent(int agent_index,
                                 const std::string& question,
                                 const std::string& context,
                                 const std::vector<std::string>& peer_answers,
                                 int round) {
    std::string sys = tagged(
        kNaiveAgentTag,
        "You are debate agent " + std::to_string(agent_index) + ". Read the "
        "context and question and give your best answer. Avoid vague "
        "responses; always produce a single answer as a final line of "
        "\"ANSWER: <answer>\".");
    std::string user = "Context: " + context + "\nQuestion: " + question + "\n";
    if (!peer_answers.empty()) {
        user += "\nYour peers' answers from the previous round:\n";
        for (std::size_t i = 0; i < peer_answers.size(); ++i) {
            user += "Agent " + std::to_string(i) + ": " + peer_answers[i] + "\n";
        }
        user += "\nEvaluate their plausibility, reflect on your reasoning, "
                "and either revise your answer or keep it.";
    }
    user += "\nRound " + std::to_string(round) + ". Answer now.";
    return {{Role::System, std::move(sys)}, {Role::User, std::move(user)}};
}

std::vector<Message> self_ask(const std::string& question,
                              const std::string& context,
                              bool strict_retry) {
    std::string sys = tagged(
        kSelfAskTag,
        "Answer by first asking yourself one clarifying sub-question. "
        "Respond in exactly three lines:\n"
        "Sub-question: <a clarifying sub-question>\n"
        "Sub-answer: <its answer>\n"
        "Final answer: <your best-guess answer, even when uncertain>\n"
        "Produce no additional output.");
    std::string user = "Context: " + context + "\nQuestion: " + question;
    if (strict_retry) {
        user += "\n\nYour previous reply was missing the \"Final answer:\" "
                "line. Follow the three-line format exactly.";
    }
    return {{Role::System, std::move(sys)}, {Role::User, std::move(user)}};
}

std::vector<Message> rci_initial(const std::string& question,
                                 const std::string& context) {
    return {{Role::System, tagged(kRciAnswerTag,
                                  "Answer the question using the context. "
                                  "Give your best guess, concisely.")},
            {Role::User, "Context: " + context + "\nQuestion: " + question}};
}

std::vector<Message> rci_critique(const std::string& question,
                                  const std::string& context,
                                  const std::string& initial_answer) {
    return {{Role::System, tagged(kRciCritiqueTag,
                                  "Identify any factual or logical issues in "
                                  "the given answer as a short, bulleted "
                                  "critique.")},
            {Role::User, "Context: " + context + "\nQuestion: " + question +
                             "\nAnswer to critique: " + initial_answer}};
}

std::vector<Message> rci_revise(const std::string& question,
                                const std::string& context,
                                const std::string& initial_answer,
                                const std::string& critique) {
    return {{Role::System, tagged(kRciReviseTag,
                                  "Revise the answer using the critique. "
                                  "Output only the updated final answer.")},
            {Role::User, "Context: " + context + "\nQuestion: " + question +
                             "\nPrevious answer: " + initial_answer +
                             "\nCritique: " + critique}};
}

}  // namespace srdcr::prompts
