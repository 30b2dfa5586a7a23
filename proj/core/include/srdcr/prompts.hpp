#pragma once

#include <string>
#include <vector>

#include "srdcr/provider.hpp"

namespace srdcr::prompts {

// Bracketed tags embedded in the system prompt of each role. Scripted
// fixtures key on these, and the asymmetry audit identifies Critic-visible
// messages by them.
inline constexpr const char* kFewShotTag = "[FEWSHOT]";
inline constexpr const char* kDefenderTag = "[ACVD DEFENDER]";
inline constexpr const char* kCriticTag = "[ACVD CRITIC]";
inline constexpr const char* kAcvdJudgeTag = "[ACVD JUDGE]";
inline constexpr const char* kDebaterATag = "[DEBATER A]";
inline constexpr const char* kDebaterBTag = "[DEBATER B]";
inline constexpr const char* kDebateJudgeTag = "[DEBATE JUDGE]";
inline constexpr const char* kNaiveAgentTag = "[NAIVE AGENT]";
inline constexpr const char* kSelfAskTag = "[SELF-ASK]";
inline constexpr const char* kRciAnswerTag = "[RCI ANSWER]";
inline constexpr const char* kRciCritiqueTag = "[RCI CRITIQUE]";
inline constexpr const char* kRciReviseTag = "[RCI REVISE]";

struct Exemplar {
    std::string question;
    std::string answer;
};

// Instruction + k exemplar Q/A pairs + optional context block + query.
// Deterministic: identical inputs give byte-identical prompts.
std::vector<Message> few_shot(const std::string& question,
                              const std::vector<Exemplar>& exemplars,
                              const std::string& context = "");

std::vector<Message> acvd_defender(const std::string& question,
                                   const std::string& context,
                                   const std::string& context_answer,
                                   const std::string& transcript,
                                   int round);

// Never receives the context passage.
std::vector<Message> acvd_critic(const std::string& question,
                                 const std::string& prior_answer,
                                 const std::string& transcript,
                                 int round);

std::vector<Message> acvd_judge(const std::string& question,
                                const std::string& context,
                                const std::string& transcript,
                                bool strict_retry);

std::vector<Message> judge_debater(bool is_agent_a,
                                   const std::string& question,
                                   const std::string& context,
                                   const std::string& own_answer,
                                   const std::string& transcript,
                                   int round);

std::vector<Message> judge_debate_judge(const std::string& question,
                                        const std::string& context,
                                        const std::string& transcript,
                                        bool strict_retry);

std::vector<Message> naive_agent(int agent_index,
                                 const std::string& question,
                                 const std::string& context,
                                 const std::vector<std::string>& peer_answers,
                                 int round);

std::vector<Message> self_ask(const std::string& question,
                              const std::string& context,
                              bool strict_retry);

std::vector<Message> rci_initial(const std::string& question,
                                 const std::string& context);
std::vector<Message> rci_critique(const std::string& question,
                                  const std::string& context,
                                  const std::string& initial_answer);
std::vector<Message> rci_revise(const std::string& question,
                                const std::string& context,
                                const std::string& initial_answer,
                                const std::string& critique);

}  // namespace srdcr::prompts
