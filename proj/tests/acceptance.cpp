// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Runs entirely offline against scripted providers.

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "srdcr/confidence.hpp"
#include "srdcr/dataset.hpp"
#include "srdcr/debate.hpp"
#include "srdcr/eval_runner.hpp"
#include "srdcr/harness.hpp"
#include "srdcr/pipeline.hpp"
#include "srdcr/probing.hpp"
#include "srdcr/prompts.hpp"
#include "test_helpers.hpp"

using namespace srdcr;
using namespace srdcr::testing;

namespace {

struct Check {
    std::string name;
    std::function<bool(std::string&)> run;
};

bool require(bool cond, const std::string& detail, std::string& why) {
    if (!cond && why.empty()) why = detail;
    return cond;
}

// 1. Decision-rule truth table over {Reasonable,Unreasonable} x {High,Low}.
bool c1(std::string& why) {
    bool ok = true;
    const FinalAnswer rh =
        decide(Verdict::Reasonable, ConfidenceLabel::High, "ctx", "prior");
    const FinalAnswer rl =
        decide(Verdict::Reasonable, ConfidenceLabel::Low, "ctx", "prior");
    const FinalAnswer uh =
        decide(Verdict::Unreasonable, ConfidenceLabel::High, "ctx", "prior");
    const FinalAnswer ul =
        decide(Verdict::Unreasonable, ConfidenceLabel::Low, "ctx", "prior");
    ok &= require(rh.outcome == Outcome::Context && rh.answer == "ctx",
                  "Reasonable/High must yield the context answer", why);
    ok &= require(rl.outcome == Outcome::Context && rl.answer == "ctx",
                  "Reasonable/Low must yield the context answer", why);
    ok &= require(uh.outcome == Outcome::Prior && uh.answer == "prior",
                  "Unreasonable/High must yield the prior answer", why);
    ok &= require(ul.outcome == Outcome::Abstain && !ul.answer,
                  "Unreasonable/Low must abstain with no answer", why);
    return ok;
}

// 2. Knowledge-tier boundary table.
bool c2(std::string& why) {
    const std::vector<std::pair<double, KnowledgeTier>> table = {
        {0.0, KnowledgeTier::Unknown},     {0.01, KnowledgeTier::WeaklyKnown},
        {0.299, KnowledgeTier::WeaklyKnown}, {0.30, KnowledgeTier::MaybeKnown},
        {0.849, KnowledgeTier::MaybeKnown},  {0.85, KnowledgeTier::HighlyKnown},
        {1.0, KnowledgeTier::HighlyKnown}};
    bool ok = true;
    for (const auto& [acc, tier] : table) {
        SampledRecall r;
        r.n_samples = 1000;
        r.n_correct = static_cast<int>(std::lround(acc * 1000));
        r.accuracy = acc;
        ok &= require(categorize(r) == tier,
                      "accuracy " + std::to_string(acc) + " mapped to " +
                          tier_name(categorize(r)),
                      why);
    }
    return ok;
}

// 3. Sampled-recall reproduction: 28/32 and 6/32.
bool c3(std::string& why) {
    const FewShotSet shots = fixture_shots();
    bool ok = true;
    {
        ScriptedProvider provider(
            {recall_rule("census", "2006", "1971", 28, 32)});
        const SampledRecall r =
            sample_recall(provider, "census year?", "2006", shots);
        ok &= require(r.n_correct == 28 && r.accuracy == 0.875,
                      "28/32 must give accuracy 0.875", why);
        ok &= require(categorize(r) == KnowledgeTier::HighlyKnown,
                      "0.875 must be HighlyKnown", why);
    }
    {
        ScriptedProvider provider({recall_rule("census", "2006", "1971", 6, 32)});
        const SampledRecall r =
            sample_recall(provider, "census year?", "2006", shots);
        ok &= require(r.n_correct == 6 && r.accuracy == 0.1875,
                      "6/32 must give accuracy 0.1875", why);
        ok &= require(categorize(r) == KnowledgeTier::WeaklyKnown,
                      "0.1875 must be WeaklyKnown", why);
    }
    return ok;
}

// 4. Geometric-mean confidence math and the tau boundary.
bool c4(std::string& why) {
    const FewShotSet shots = fixture_shots();
    ScriptedProvider provider({logprob_rule(
        "census", {{"foo", std::log(0.8)}, {"bar", std::log(0.2)}})});
    const auto [answer, score] = answer_confidence(provider, "census", shots);
    const double expected = std::sqrt(0.8 * 0.2);
    bool ok = require(
        std::abs(score.probability - expected) <= 1e-12 * expected,
        "probability must equal sqrt(0.8*0.2) within 1e-12 relative error",
        why);
    auto at = [](double p) {
        ConfidenceScore s;
        s.probability = p;
        return s;
    };
    ok &= require(label(at(0.90), 0.90) == ConfidenceLabel::High,
                  "probability 0.90 at tau 0.90 must be High", why);
    ok &= require(label(at(0.8999999999), 0.90) == ConfidenceLabel::Low,
                  "probability just below tau must be Low", why);
    return ok;
}

// 5. Self-consistency proxy: 12 of 16 matching draws -> exactly 0.75.
bool c5(std::string& why) {
    const FewShotSet shots = fixture_shots();
    ScriptedProvider provider({recall_rule("census", "2006", "1971", 12, 16)});
    const auto [answer, score] = self_consistency(provider, "census", shots);
    bool ok = require(answer == "2006", "greedy answer must be the majority",
                      why);
    ok &= require(score.probability == 0.75,
                  "12/16 matches must give probability 0.75 exactly", why);
    return ok;
}

// 6. Stabilized verdict vs. brute-force suffix scan over all 2^8 sequences.
bool c6(std::string& why) {
    auto brute = [](const std::vector<Verdict>& v) -> std::pair<Verdict, int> {
        for (std::size_t start = 0; start < v.size(); ++start) {
            bool constant = true;
            for (std::size_t i = start + 1; i < v.size(); ++i) {
                if (v[i] != v[start]) {
                    constant = false;
                    break;
                }
            }
            if (constant) return {v[start], static_cast<int>(start)};
        }
        return {v.back(), static_cast<int>(v.size()) - 1};
    };
    for (unsigned bits = 0; bits < 256u; ++bits) {
        std::vector<Verdict> seq;
        for (int i = 0; i < 8; ++i) {
            seq.push_back(((bits >> i) & 1u) != 0 ? Verdict::Reasonable
                                                  : Verdict::Unreasonable);
        }
        if (stabilized_verdict(seq) != brute(seq)) {
            why = "mismatch on sequence bitmask " + std::to_string(bits);
            return false;
        }
    }
    return true;
}

// 7. ACVD protocol conformance on a recorded 6-round transcript.
bool c7(std::string& why) {
    const char* ctx = "SECRET_CONTEXT_PASSAGE: the census was held in 1966.";
    ScriptedProvider scripted(
        {rule(prompts::kDefenderTag, {"The passage is consistent."}),
         rule(prompts::kCriticTag, {"The claim is dubious."}),
         rule(prompts::kAcvdJudgeTag, {"VERDICT: REASONABLE"})});
    RecordingProvider provider(scripted);
    const Transcript t = acvd_debate(provider, "census year?", ctx, "1966",
                                     "2006");
    bool ok = require(t.turns.size() == 12, "expected 12 debater turns", why);
    ok &= require(t.round_verdicts.size() == 6, "expected 6 judge verdicts",
                  why);
    if (t.turns.size() == 12) {
        ok &= require(t.turns[0].role == DebateRole::Defender &&
                          t.turns[1].role == DebateRole::Critic,
                      "round 0 must run Defender then Critic", why);
        for (int r = 1; r < 6; ++r) {
            ok &= require(t.turns[2 * r].role == DebateRole::Critic &&
                              t.turns[2 * r].round == r &&
                              t.turns[2 * r + 1].role == DebateRole::Defender,
                          "round " + std::to_string(r) +
                              " must run Critic then Defender",
                          why);
        }
    }
    int critic_prompts = 0;
    for (const auto& prompt : provider.prompts()) {
        if (prompt.find(prompts::kCriticTag) == std::string::npos) continue;
        ++critic_prompts;
        ok &= require(prompt.find("SECRET_CONTEXT_PASSAGE") == std::string::npos,
                      "a Critic-visible prompt leaked the context", why);
    }
    ok &= require(critic_prompts == 6, "expected 6 Critic prompts", why);
    return ok;
}

// 8. Perturbation worked examples and the offset -> level table.
bool c8(std::string& why) {
    bool ok = require(perturb_numeric(2006, 100, Direction::Plus) == 2106,
                      "2006 + 100 must be 2106", why);
    ok &= require(perturb_numeric(2006, 40, Direction::Minus) == 1966,
                  "2006 - 40 must be 1966", why);
    ok &= require(level_for_offset(20) == PerturbationLevel::Subtle &&
                      level_for_offset(40) == PerturbationLevel::Mild &&
                      level_for_offset(60) == PerturbationLevel::Moderate &&
                      level_for_offset(100) == PerturbationLevel::Blatant &&
                      level_for_offset(200) == PerturbationLevel::Blatant,
                  "offset-to-level mapping is wrong", why);
    return ok;
}

// 9. Naive-debate behaviors with asserted call counts.
bool c9(std::string& why) {
    const char* q = "census year?";
    const char* ctx = "the census year was 1966";
    bool ok = true;
    {
        ScriptedProvider scripted(
            {rule(prompts::kNaiveAgentTag, {"ANSWER: 2006"})});
        CountingProvider counter(scripted);
        const NaiveDebateResult r = naive_debate(counter, q, ctx);
        ok &= require(r.answer == "2006" && r.rounds_used == 1 &&
                          counter.calls() == 3,
                      "unanimous consensus must stop after 1 round (3 calls)",
                      why);
    }
    {
        ScriptedProvider scripted({rule("debate agent 0", {"ANSWER: 2006"}),
                                   rule("debate agent 1", {"ANSWER: 2006"}),
                                   rule("debate agent 2", {"ANSWER: 1966"})});
        CountingProvider counter(scripted);
        const NaiveDebateResult r = naive_debate(counter, q, ctx, 3, 5);
        ok &= require(r.answer == "2006" && counter.calls() == 15,
                      "2-vs-1 split must yield the majority after 15 calls",
                      why);
    }
    {
        ScriptedProvider scripted({rule("debate agent 0", {"ANSWER: alpha"}),
                                   rule("debate agent 1", {"ANSWER: beta"}),
                                   rule("debate agent 2", {"ANSWER: gamma"})});
        const NaiveDebateResult r = naive_debate(scripted, q, ctx, 3, 5);
        ok &= require(r.answer == "alpha",
                      "3-way split must break ties toward agent 0", why);
    }
    return ok;
}

// 10. Golden baseline on a 10-instance hand-labeled fixture.
bool c10(std::string& why) {
    std::vector<QAInstance> instances;
    std::vector<EvalRecord> ctx, prior;
    for (int i = 0; i < 10; ++i) {
        const std::string id = "g" + std::to_string(i);
        if (i < 5) {
            instances.push_back(make_instance(id, "q", "gold", "gold here"));
        } else {
            Perturbation p;
            p.level = PerturbationLevel::Subtle;
            p.offset = 20;
            p.original_value = "7";
            p.perturbed_value = "27";
            instances.push_back(make_instance(id, "q", "7", "27 here", p));
        }
        EvalRecord c;
        c.instance_id = id;
        c.strategy = "few_shot";
        c.correct = (i % 2 == 0);  // standard instances 0,2,4 correct
        ctx.push_back(c);
        EvalRecord pr;
        pr.instance_id = id;
        pr.strategy = "prior_only";
        pr.correct = (i >= 5 && i < 8);  // perturbed 5,6,7 correct
        prior.push_back(pr);
    }
    const auto records = golden_baseline(ctx, prior, instances);
    const StrategySummary s = summarize(records, instances);
    // hand count: standard 3/5 + perturbed 3/5 -> overall 6/10
    bool ok = require(records.size() == 10, "expected 10 combined records", why);
    ok &= require(s.standard_accuracy == 0.6 && s.perturbed_accuracy == 0.6 &&
                      s.overall_accuracy == 0.6,
                  "hand-computed accuracies must be 0.6 / 0.6 / 0.6", why);
    for (const auto& r : records) {
        ok &= require(r.calls == 0, "golden baseline must issue zero calls",
                      why);
    }
    return ok;
}

// Scripted world rich enough for every strategy; used by criterion 11.
std::vector<ScriptedRule> full_world_rules() {
    std::vector<ScriptedRule> rules;
    rules.push_back(rule(prompts::kDefenderTag, {"The context holds up."}));
    rules.push_back(rule(prompts::kCriticTag, {"The context may be wrong."}));
    rules.push_back(rule(prompts::kAcvdJudgeTag, {"VERDICT: UNREASONABLE"}));
    rules.push_back(rule(prompts::kDebaterATag, {"For the context answer."}));
    rules.push_back(rule(prompts::kDebaterBTag, {"For the prior answer."}));
    rules.push_back(rule(prompts::kDebateJudgeTag, {"ANSWER: 42"}));
    rules.push_back(rule(prompts::kNaiveAgentTag, {"ANSWER: 2006"}));
    rules.push_back(rule(
        prompts::kSelfAskTag,
        {"Sub-question: when?\nSub-answer: 2006\nFinal answer: 2006"}));
    rules.push_back(rule(prompts::kRciAnswerTag, {"2006"}));
    rules.push_back(rule(prompts::kRciCritiqueTag, {"- no issues"}));
    rules.push_back(rule(prompts::kRciReviseTag, {"2006"}));
    // context-conditioned few-shot prompts (role prompts already matched)
    rules.push_back(rule("Context:", {"1966"}));
    // prior / confidence / probe prompts: plain few-shot, logprobs available
    rules.push_back(logprob_rule("A:", {{"2006", std::log(0.95)}}));
    return rules;
}

std::vector<QAInstance> full_world_instances() {
    std::vector<QAInstance> out;
    out.push_back(make_instance("s1", "first census year?", "2006",
                                "the census year was 2006"));
    out.push_back(make_instance("s2", "second census year?", "2006",
                                "the census year was 2006"));
    out.push_back(make_instance("s3", "third census year?", "2006",
                                "the census year was 2006"));
    for (int i = 0; i < 3; ++i) {
        const int offsets[] = {40, 100, 200};
        QAInstance base = make_instance(
            "p" + std::to_string(i + 1),
            "perturbed census year " + std::to_string(i) + "?", "2006",
            "the census year was 2006");
        out.push_back(apply_perturbation(base, offsets[i], 7));
    }
    return out;
}

bool dirs_byte_identical(const std::filesystem::path& a,
                         const std::filesystem::path& b, std::string& why) {
    std::vector<std::string> names_a, names_b;
    for (const auto& e : std::filesystem::directory_iterator(a))
        names_a.push_back(e.path().filename().string());
    for (const auto& e : std::filesystem::directory_iterator(b))
        names_b.push_back(e.path().filename().string());
    std::sort(names_a.begin(), names_a.end());
    std::sort(names_b.begin(), names_b.end());
    if (names_a != names_b) {
        why = "the two runs produced different file sets";
        return false;
    }
    if (names_a.empty()) {
        why = "no output files were produced";
        return false;
    }
    for (const auto& name : names_a) {
        std::ifstream fa(a / name, std::ios::binary);
        std::ifstream fb(b / name, std::ios::binary);
        std::stringstream sa, sb;
        sa << fa.rdbuf();
        sb << fb.rdbuf();
        if (sa.str() != sb.str()) {
            why = "file " + name + " differs between runs";
            return false;
        }
    }
    return true;
}

// 11. End-to-end determinism: two identical run-eval executions produce
// byte-identical records and reports.
bool c11(std::string& why) {
    const auto instances = full_world_instances();
    EvalConfig config;
    config.strategies = kKnownStrategies;  // every strategy, incl. golden
    config.seed = 17;
    config.probe_tiers = true;

    const auto base = std::filesystem::temp_directory_path() /
                      ("srdcr-acceptance-" + std::to_string(::getpid()));
    std::filesystem::remove_all(base);
    const auto dir_a = base / "run_a";
    const auto dir_b = base / "run_b";

    for (const auto& dir : {dir_a, dir_b}) {
        ScriptedProvider provider(full_world_rules());
        const EvalRunOutput output = run_eval(provider, instances, config);
        if (output.invariant_failure) {
            why = "run_eval reported an invariant failure";
            return false;
        }
        write_eval_output(output, dir.string());
    }
    const bool ok = dirs_byte_identical(dir_a, dir_b, why);
    std::filesystem::remove_all(base);
    return ok;
}

// 12. Aggregation over a synthetic 600-record set: standard 287/300 and
// perturbed 89/300 must print 95.7 / 29.7 / 62.7 in the CSV.
bool c12(std::string& why) {
    std::vector<QAInstance> instances;
    std::vector<EvalRecord> records;
    for (int i = 0; i < 600; ++i) {
        const std::string id = "n" + std::to_string(i);
        const bool perturbed = i >= 300;
        if (perturbed) {
            Perturbation p;
            p.level = PerturbationLevel::Mild;
            p.offset = 40;
            p.original_value = "2006";
            p.perturbed_value = "1966";
            instances.push_back(make_instance(id, "q", "2006", "in 1966", p));
        } else {
            instances.push_back(make_instance(id, "q", "2006", "in 2006"));
        }
        EvalRecord r;
        r.instance_id = id;
        r.strategy = "sr_dcr";
        r.correct = perturbed ? (i - 300) < 89 : i < 287;
        if (perturbed) r.offset = 40;
        records.push_back(r);
    }
    Report report;
    report.strategy_order = {"sr_dcr"};
    report.per_strategy["sr_dcr"] = summarize(records, instances);
    const std::string csv = emit_report(report, ReportFormat::CSV);
    return require(csv.find("sr_dcr,95.7,29.7,62.7,") != std::string::npos,
                   "CSV row must read 95.7 / 29.7 / 62.7, got:\n" + csv, why);
}

}  // namespace

int main() {
    const std::vector<Check> checks = {
        {"decision-rule truth table", c1},
        {"knowledge-tier boundaries", c2},
        {"sampled-recall reproduction (28/32, 6/32)", c3},
        {"geometric-mean confidence math", c4},
        {"self-consistency proxy (12/16 = 0.75)", c5},
        {"stabilized-verdict oracle (all 2^8 sequences)", c6},
        {"ACVD protocol conformance", c7},
        {"numeric perturbation worked examples", c8},
        {"naive-debate behavior and call counts", c9},
        {"golden baseline on hand-labeled fixture", c10},
        {"end-to-end run determinism", c11},
        {"harness aggregation (95.7 / 29.7 / 62.7)", c12},
    };

    int failures = 0;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        std::string why;
        bool ok = false;
        try {
            ok = checks[i].run(why);
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": "
                  << checks[i].name;
        if (!ok && !why.empty()) std::cout << " — " << why;
        std::cout << '\n';
        if (!ok) ++failures;
    }
    if (failures > 0) {
        std::cout << failures << " of " << checks.size()
                  << " criteria failed\n";
        return 1;
    }
    std::cout << "all " << checks.size() << " criteria passed\n";
    return 0;
}
