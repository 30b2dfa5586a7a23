#include "srdcr/debate.hpp"

#include <algorithm>
#include <sstream>

#include "srdcr/harness.hpp"
#include "srdcr/prompts.hpp"

namespace srdcr {

std::string debate_role_name(DebateRole role) {
    switch (role) {
        case DebateRole::Defender: return "Defender";
        case DebateRole::Critic: return "Critic";
        case DebateRole::Judge: return "Judge";
    }
    return "?";
}

std::string verdict_name(Verdict verdict) {
    return verdict == Verdict::Reasonable ? "Reasonable" : "Unreasonable";
}

std::pair<Verdict, int> stabilized_verdict(
    const std::vector<Verdict>& round_verdicts) {
    if (round_verdicts.empty()) {
        throw PreconditionViolation("stabilized_verdict: empty sequence");
    }
    int r_star = static_cast<int>(round_verdicts.size()) - 1;
    while (r_star > 0 && round_verdicts[r_star - 1] == round_verdicts[r_star]) {
        --r_star;
    }
    return {round_verdicts[r_star], r_star};
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    return s;
}

// Last line carrying the marker wins.
std::optional<std::string> find_marked_line(const std::string& text,
                                            const std::string& marker) {
    std::optional<std::string> found;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto pos = upper(line).find(marker);
        if (pos != std::string::npos) {
            found = trim(line.substr(pos + marker.size()));
        }
    }
    return found;
}

std::optional<Verdict> parse_verdict(const std::string& text) {
    const auto value = find_marked_line(text, "VERDICT:");
    if (!value) return std::nullopt;
    const std::string v = upper(*value);
    if (v.rfind("REASONABLE", 0) == 0) return Verdict::Reasonable;
    if (v.rfind("UNREASONABLE", 0) == 0) return Verdict::Unreasonable;
    return std::nullopt;
}

std::string render_transcript(const std::vector<DebateTurn>& turns) {
    std::string out;
    for (const auto& turn : turns) {
        out += debate_role_name(turn.role) + " (round " +
               std::to_string(turn.round) + "): " + turn.content + "\n";
    }
    return out;
}

std::string take_turn(ChatProvider& provider, std::vector<Message> messages,
                      const DebateConfig& config) {
    CompletionRequest request;
    request.messages = std::move(messages);
    request.temperature = config.temperature;
    request.max_tokens = config.max_tokens_per_turn;
    return provider.complete(request).text;
}

}  // namespace

std::string extract_answer_line(const std::string& text) {
    if (auto marked = find_marked_line(text, "ANSWER:")) return *marked;
    return trim(text);
}

Transcript acvd_debate(ChatProvider& provider, const std::string& question,
                       const std::string& context,
                       const std::string& context_answer,
                       const std::string& prior_answer,
                       const DebateConfig& config) {
    if (question.empty() || context.empty()) {
        throw PreconditionViolation("acvd_debate: question and context required");
    }
    if (config.rounds < 1) {
        throw PreconditionViolation("acvd_debate: rounds must be >= 1");
    }

    Transcript transcript;
    for (int round = 0; round < config.rounds; ++round) {
        const std::string so_far = render_transcript(transcript.turns);

        auto defender_turn = [&](const std::string& prior_text) {
            transcript.turns.push_back(
                {round, DebateRole::Defender,
                 take_turn(provider,
                           prompts::acvd_defender(question, context,
                                                  context_answer, prior_text,
                                                  round),
                           config)});
        };
        auto critic_turn = [&](const std::string& prior_text) {
            transcript.turns.push_back(
                {round, DebateRole::Critic,
                 take_turn(provider,
                           prompts::acvd_critic(question, prior_answer,
                                                prior_text, round),
                           config)});
        };

        // Round 0: Defender opens, Critic replies. Later rounds: Critic
        // speaks first, Defender replies.
        if (round == 0) {
            defender_turn(so_far);
            critic_turn(render_transcript(transcript.turns));
        } else {
            critic_turn(so_far);
            defender_turn(render_transcript(transcript.turns));
        }

        const std::string full = render_transcript(transcript.turns);
        std::string judge_text = take_turn(
            provider, prompts::acvd_judge(question, context, full, false),
            config);
        auto verdict = parse_verdict(judge_text);
        if (!verdict) {
            judge_text = take_turn(
                provider, prompts::acvd_judge(question, context, full, true),
                config);
            verdict = parse_verdict(judge_text);
        }
        if (!verdict) {
            // conservative default, flagged for audit
            verdict = Verdict::Unreasonable;
            transcript.parse_fallback = true;
        }
        transcript.judge_outputs.push_back(std::move(judge_text));
        transcript.round_verdicts.push_back(*verdict);
    }

    std::tie(transcript.final_verdict, transcript.stabilized_at) =
        stabilized_verdict(transcript.round_verdicts);
    return transcript;
}

std::map<int, std::string> judge_debate_checkpoints(
    ChatProvider& provider, const std::string& question,
    const std::string& context, const std::vector<int>& checkpoints,
    const std::string& context_answer, const std::string& prior_answer) {
    for (int r : checkpoints) {
        if (r != 1 && r != 3 && r != 5) {
            throw PreconditionViolation("judge debate rounds must be 1, 3, or 5");
        }
    }
    if (checkpoints.empty()) {
        throw PreconditionViolation("judge debate needs at least one checkpoint");
    }
    const int max_round = *std::max_element(checkpoints.begin(), checkpoints.end());

    DebateConfig config;
    config.max_tokens_per_turn = 300;
    config.temperature = 0.0;

    std::map<int, std::string> answers;
    std::vector<DebateTurn> turns;
    for (int round = 1; round <= max_round; ++round) {
        turns.push_back(
            {round, DebateRole::Defender,
             take_turn(provider,
                       prompts::judge_debater(true, question, context,
                                              context_answer,
                                              render_transcript(turns), round),
                       config)});
        turns.push_back(
            {round, DebateRole::Critic,
             take_turn(provider,
                       prompts::judge_debater(false, question, context,
                                              prior_answer,
                                              render_transcript(turns), round),
                       config)});

        if (std::find(checkpoints.begin(), checkpoints.end(), round) ==
            checkpoints.end()) {
            continue;
        }
        const std::string prefix = render_transcript(turns);
        std::string judge_text = take_turn(
            provider,
            prompts::judge_debate_judge(question, context, prefix, false),
            config);
        auto answer = find_marked_line(judge_text, "ANSWER:");
        if (!answer) {
            judge_text = take_turn(
                provider,
                prompts::judge_debate_judge(question, context, prefix, true),
                config);
            answer = find_marked_line(judge_text, "ANSWER:");
        }
        if (!answer) {
            throw AnswerParseFailure("judge reply lacks ANSWER line at round " +
                                     std::to_string(round));
        }
        answers[round] = *answer;
    }
    return answers;
}

std::string judge_debate(ChatProvider& provider, const std::string& question,
                         const std::string& context, int rounds,
                         const std::string& context_answer,
                         const std::string& prior_answer) {
    return judge_debate_checkpoints(provider, question, context, {rounds},
                                    context_answer, prior_answer)
        .at(rounds);
}

NaiveDebateResult naive_debate(ChatProvider& provider,
                               const std::string& question,
                               const std::string& context, int agents,
                               int max_rounds) {
    if (agents < 2) {
        throw PreconditionViolation("naive_debate: need at least 2 agents");
    }
    DebateConfig config;
    config.max_tokens_per_turn = 250;
    config.temperature = 0.0;

    NaiveDebateResult result;
    std::vector<std::string> answers(agents);
    std::vector<std::string> previous;
    for (int round = 1; round <= max_rounds; ++round) {
        for (int a = 0; a < agents; ++a) {
            const std::string reply = take_turn(
                provider,
                prompts::naive_agent(a, question, context, previous, round),
                config);
            answers[a] = extract_answer_line(reply);
            ++result.calls;
        }
        result.rounds_used = round;
        const bool consensus = std::all_of(
            answers.begin() + 1, answers.end(),
            [&](const std::string& ans) { return exact_match(ans, answers[0]); });
        if (consensus) {
            result.answer = answers[0];
            return result;
        }
        previous = answers;
    }

    // Majority vote over final answers; ties break to the lowest agent index.
    int best = 0;
    int best_count = 0;
    for (int a = 0; a < agents; ++a) {
        int count = 0;
        for (int b = 0; b < agents; ++b) {
            if (exact_match(answers[b], answers[a])) ++count;
        }
        if (count > best_count) {
            best_count = count;
            best = a;
        }
    }
    result.answer = answers[best];
    return result;
}

}  // namespace srdcr
