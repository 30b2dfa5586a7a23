#include "srdcr/eval_runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "srdcr/confidence.hpp"
#include "srdcr/probing.hpp"

namespace srdcr {

CompletionResponse CountingProvider::complete(const CompletionRequest& request) {
    ++calls_;
    CompletionResponse response = inner_.complete(request);
    std::istringstream in(response.text);
    std::string word;
    while (in >> word) ++tokens_;
    return response;
}

const std::vector<std::string> kKnownStrategies = {
    "few_shot",       "self_ask",       "rci",
    "judge_debate_1", "judge_debate_3", "judge_debate_5",
    "naive_debate",   "sr_dcr",         "golden_baseline"};

namespace {

bool is_judge_debate(const std::string& name, int& rounds) {
    if (name.rfind("judge_debate_", 0) != 0) return false;
    rounds = std::stoi(name.substr(std::string("judge_debate_").size()));
    return true;
}

StrategyOutcome outcome_from(const CountingProvider& counter,
                             std::string answer) {
    StrategyOutcome outcome;
    outcome.predicted = std::move(answer);
    outcome.calls = counter.calls();
    outcome.tokens = counter.tokens();
    return outcome;
}

}  // namespace

EvalRunOutput run_eval(ChatProvider& provider,
                       const std::vector<QAInstance>& instances,
                       const EvalConfig& config) {
    for (const auto& name : config.strategies) {
        if (std::find(kKnownStrategies.begin(), kKnownStrategies.end(), name) ==
            kKnownStrategies.end()) {
            throw PreconditionViolation("unknown strategy: " + name);
        }
    }

    EvalRunOutput output;
    output.strategy_order = config.strategies;

    // One FewShotSet per instance, reused across all strategies.
    std::map<std::string, FewShotSet> shots_by_id;
    for (const auto& inst : instances) {
        shots_by_id[inst.id] = select_exemplars(instances, inst.id, config.seed);
    }

    ConfidenceCache confidence(config.tau);
    std::map<std::string, std::string> prior_answers;

    auto prior_answer_for = [&](ChatProvider& prov, const QAInstance& inst) {
        auto it = prior_answers.find(inst.id);
        if (it != prior_answers.end()) return it->second;
        const std::string ans =
            answer_prior(prov, inst.question, shots_by_id.at(inst.id));
        prior_answers[inst.id] = ans;
        return ans;
    };

    // Collect all requested judge-debate checkpoints so one debate per
    // instance serves every setting.
    std::vector<int> jd_checkpoints;
    for (const auto& name : config.strategies) {
        int rounds = 0;
        if (is_judge_debate(name, rounds)) jd_checkpoints.push_back(rounds);
    }
    std::map<std::string, std::map<int, std::string>> jd_answers_by_id;
    if (!jd_checkpoints.empty()) {
        for (const auto& inst : instances) {
            CountingProvider counter(provider);
            const auto& shots = shots_by_id.at(inst.id);
            const std::string a_ctx =
                answer_with_context(counter, inst.question, inst.context, shots);
            const std::string a_prior = prior_answer_for(counter, inst);
            jd_answers_by_id[inst.id] = judge_debate_checkpoints(
                counter, inst.question, inst.context, jd_checkpoints, a_ctx,
                a_prior);
        }
    }

    std::vector<EvalRecord> ctx_records, prior_records;

    auto run_strategy = [&](const std::string& name) -> std::vector<EvalRecord> {
        int jd_rounds = 0;
        if (is_judge_debate(name, jd_rounds)) {
            auto records = evaluate(
                name,
                [&](const QAInstance& inst) {
                    StrategyOutcome outcome;
                    outcome.predicted = jd_answers_by_id.at(inst.id).at(jd_rounds);
                    outcome.calls = 1;
                    return outcome;
                },
                instances);
            for (auto& rec : records) rec.round_checkpoint = jd_rounds;
            return records;
        }
        if (name == "few_shot") {
            return evaluate(
                name,
                [&](const QAInstance& inst) {
                    CountingProvider counter(provider);
                    return outcome_from(
                        counter, few_shot(counter, inst.question, inst.context,
                                          shots_by_id.at(inst.id)));
                },
                instances);
        }
        if (name == "self_ask") {
            return evaluate(
                name,
                [&](const QAInstance& inst) {
                    CountingProvider counter(provider);
                    return outcome_from(
                        counter, self_ask(counter, inst.question, inst.context));
                },
                instances);
        }
        if (name == "rci") {
            return evaluate(
                name,
                [&](const QAInstance& inst) {
                    CountingProvider counter(provider);
                    return outcome_from(counter,
                                        rci(counter, inst.question, inst.context));
                },
                instances);
        }
        if (name == "naive_debate") {
            return evaluate(
                name,
                [&](const QAInstance& inst) {
                    CountingProvider counter(provider);
                    const NaiveDebateResult result =
                        naive_debate(counter, inst.question, inst.context,
                                     config.naive_agents, config.naive_max_rounds);
                    return outcome_from(counter, result.answer);
                },
                instances);
        }
        if (name == "sr_dcr") {
            return evaluate(
                name,
                [&](const QAInstance& inst) {
                    CountingProvider counter(provider);
                    const SrDcrResult result =
                        sr_dcr(counter, inst, shots_by_id.at(inst.id), confidence,
                               config.debate);
                    StrategyOutcome outcome;
                    if (result.final_answer.outcome != Outcome::Abstain) {
                        outcome.predicted = result.final_answer.answer;
                    } else {
                        outcome.abstained = true;
                    }
                    outcome.calls = counter.calls();
                    outcome.tokens = counter.tokens();
                    return outcome;
                },
                instances);
        }
        if (name == "golden_baseline") {
            if (ctx_records.empty()) {
                ctx_records = evaluate(
                    "few_shot",
                    [&](const QAInstance& inst) {
                        CountingProvider counter(provider);
                        return outcome_from(
                            counter,
                            few_shot(counter, inst.question, inst.context,
                                     shots_by_id.at(inst.id)));
                    },
                    instances);
            }
            if (prior_records.empty()) {
                prior_records = evaluate(
                    "prior_only",
                    [&](const QAInstance& inst) {
                        CountingProvider counter(provider);
                        return outcome_from(counter,
                                            prior_answer_for(counter, inst));
                    },
                    instances);
            }
            return golden_baseline(ctx_records, prior_records, instances);
        }
        throw PreconditionViolation("unknown strategy: " + name);
    };

    for (const auto& name : config.strategies) {
        auto records = run_strategy(name);
        if (name == "few_shot") ctx_records = records;
        output.records_by_strategy[name] = std::move(records);
    }

    if (config.probe_tiers) {
        for (const auto& inst : instances) {
            const SampledRecall recall = sample_recall(
                provider, inst.question, inst.answer, shots_by_id.at(inst.id),
                config.probe_samples, config.probe_temperature);
            output.tiers_by_instance[inst.id] = tier_name(categorize(recall));
        }
    }

    // Aggregate
    output.report.strategy_order = config.strategies;
    for (const auto& name : config.strategies) {
        const auto& records = output.records_by_strategy.at(name);
        const StrategySummary summary = summarize(records, instances);
        output.report.per_strategy[name] = summary;

        std::map<int, std::pair<long, long>> per_offset;
        for (const auto& rec : records) {
            if (!rec.offset) continue;
            auto& cell = per_offset[*rec.offset];
            ++cell.second;
            if (rec.correct) ++cell.first;
        }
        for (const auto& [offset, counts] : per_offset) {
            output.report.per_offset_accuracy[name][offset] =
                double(counts.first) / double(counts.second);
        }

        // decomposition recount; a mismatch fails the run
        long correct = 0;
        for (const auto& rec : records) {
            if (rec.correct) ++correct;
        }
        const long total = summary.n_standard + summary.n_perturbed;
        if (total > 0 &&
            std::abs(summary.overall_accuracy - double(correct) / double(total)) >
                1e-12) {
            output.invariant_failure = true;
        }
    }

    if (config.probe_tiers) {
        auto it = output.records_by_strategy.find("few_shot");
        if (it != output.records_by_strategy.end()) {
            output.report.context_preference =
                context_preference_curve(it->second, output.tiers_by_instance);
        }
    }
    if (!jd_checkpoints.empty()) {
        std::vector<EvalRecord> jd_records;
        for (const auto& name : config.strategies) {
            int rounds = 0;
            if (!is_judge_debate(name, rounds)) continue;
            const auto& records = output.records_by_strategy.at(name);
            jd_records.insert(jd_records.end(), records.begin(), records.end());
        }
        output.report.prior_preference =
            prior_preference_curve(jd_records, prior_answers);
    }

    return output;
}

void write_eval_output(const EvalRunOutput& output, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    for (const auto& name : output.strategy_order) {
        save_records(output.records_by_strategy.at(name),
                     (dir / ("records_" + name + ".jsonl")).string());
    }
    {
        std::ofstream f(dir / "report.json");
        f << emit_report(output.report, ReportFormat::JSON);
    }
    {
        std::ofstream f(dir / "report.csv");
        f << emit_report(output.report, ReportFormat::CSV);
    }
    if (!output.report.context_preference.empty()) {
        std::ofstream f(dir / "context_preference.csv");
        f << "offset,tier,value\n";
        for (const auto& [key, value] : output.report.context_preference) {
            f << key.first << ',' << key.second << ',' << value << '\n';
        }
    }
    if (!output.report.prior_preference.empty()) {
        std::ofstream f(dir / "prior_preference.csv");
        f << "round,offset,value\n";
        for (const auto& [key, value] : output.report.prior_preference) {
            f << key.first << ',' << key.second << ',' << value << '\n';
        }
    }
    if (!output.tiers_by_instance.empty()) {
        std::ofstream f(dir / "tiers.jsonl");
        for (const auto& [id, tier] : output.tiers_by_instance) {
            f << "{\"instance_id\":\"" << id << "\",\"tier\":\"" << tier
              << "\"}\n";
        }
    }
}

}  // namespace srdcr
