#pragma once

#include <map>
#include <string>
#include <vector>

#include "srdcr/provider.hpp"

namespace srdcr {

enum class DebateRole { Defender, Critic, Judge };

enum class Verdict { Reasonable, Unreasonable };

std::string debate_role_name(DebateRole role);
std::string verdict_name(Verdict verdict);

struct DebateTurn {
    int round = 0;
    DebateRole role = DebateRole::Defender;
    std::string content;
};

// Full audit record of one ACVD run. `turns` holds the Defender/Critic
// sequence; judge output text is kept separately alongside the parsed
// verdicts, one per round.
struct Transcript {
    std::vector<DebateTurn> turns;
    std::vector<Verdict> round_verdicts;
    std::vector<std::string> judge_outputs;
    Verdict final_verdict = Verdict::Unreasonable;
    int stabilized_at = 0;
    // Set when a judge reply failed to parse twice and the conservative
    // Unreasonable default was recorded.
    bool parse_fallback = false;
};

struct DebateConfig {
    int rounds = 6;
    int max_tokens_per_turn = 300;
    double temperature = 0.0;
};

// Smallest index r* such that all verdicts from r* to the end are equal;
// always defined since the last element is a constant suffix.
std::pair<Verdict, int> stabilized_verdict(
    const std::vector<Verdict>& round_verdicts);

// Asymmetric context-verification debate. The Defender argues a_ctx from
// (q, c); the Critic argues a_prior from q alone and never sees c; the
// Judge reviews (q, c) plus the transcript after every round.
Transcript acvd_debate(ChatProvider& provider, const std::string& question,
                       const std::string& context,
                       const std::string& context_answer,
                       const std::string& prior_answer,
                       const DebateConfig& config = {});

// Classical two-debater protocol: one five-round (or shorter) debate with
// judge consultations on the transcript prefix at each requested
// checkpoint, so the settings share turns.
std::map<int, std::string> judge_debate_checkpoints(
    ChatProvider& provider, const std::string& question,
    const std::string& context, const std::vector<int>& checkpoints,
    const std::string& context_answer, const std::string& prior_answer);

// Single-checkpoint convenience; rounds must be 1, 3, or 5.
std::string judge_debate(ChatProvider& provider, const std::string& question,
                         const std::string& context, int rounds,
                         const std::string& context_answer,
                         const std::string& prior_answer);

struct NaiveDebateResult {
    std::string answer;
    int rounds_used = 0;
    long calls = 0;
};

// Independent agents converge by consensus or majority vote; ties break to
// the lowest agent index. No provider calls are issued after consensus.
NaiveDebateResult naive_debate(ChatProvider& provider,
                               const std::string& question,
                               const std::string& context, int agents = 3,
                               int max_rounds = 5);

// Extracts the final "ANSWER: ..." line, falling back to the whole trimmed
// text when no marker is present.
std::string extract_answer_line(const std::string& text);

}  // namespace srdcr
