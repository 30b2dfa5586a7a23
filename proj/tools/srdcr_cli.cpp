#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <json.hpp>

#include "srdcr/confidence.hpp"
#include "srdcr/dataset.hpp"
#include "srdcr/debate.hpp"
#include "srdcr/eval_runner.hpp"
#include "srdcr/probing.hpp"
#include "srdcr/provider_config.hpp"

namespace {

using namespace srdcr;

std::shared_ptr<ChatProvider> provider_from(const std::string& config_path) {
    return ProviderSet(load_provider_config(config_path)).base();
}

nlohmann::json transcript_to_json(const Transcript& transcript) {
    nlohmann::json j;
    auto& turns = j["turns"] = nlohmann::json::array();
    for (const auto& turn : transcript.turns) {
        turns.push_back({{"round", turn.round},
                         {"role", debate_role_name(turn.role)},
                         {"content", turn.content}});
    }
    auto& verdicts = j["round_verdicts"] = nlohmann::json::array();
    for (const auto& v : transcript.round_verdicts) {
        verdicts.push_back(verdict_name(v));
    }
    j["judge_outputs"] = transcript.judge_outputs;
    j["final_verdict"] = verdict_name(transcript.final_verdict);
    j["stabilized_at"] = transcript.stabilized_at;
    j["parse_fallback"] = transcript.parse_fallback;
    return j;
}

int cmd_probe(const std::string& dataset_path, const std::string& config_path,
              int n, double temperature, unsigned seed,
              const std::string& out_path) {
    auto provider = provider_from(config_path);
    const auto instances = load_dataset(dataset_path);
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot open output: " + out_path);
    for (const auto& inst : instances) {
        const FewShotSet shots = select_exemplars(instances, inst.id, seed);
        const SampledRecall recall = sample_recall(
            *provider, inst.question, inst.answer, shots, n, temperature);
        nlohmann::json j = {{"instance_id", inst.id},
                            {"accuracy", recall.accuracy},
                            {"tier", tier_name(categorize(recall))}};
        out << j.dump() << '\n';
    }
    return 0;
}

int cmd_confide(const std::string& dataset_path, const std::string& config_path,
                const std::string& mode, double tau, int m, unsigned seed,
                const std::string& out_path) {
    auto provider = provider_from(config_path);
    const auto instances = load_dataset(dataset_path);
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot open output: " + out_path);
    for (const auto& inst : instances) {
        const FewShotSet shots = select_exemplars(instances, inst.id, seed);
        std::string answer;
        ConfidenceScore score;
        if (mode == "logprob") {
            std::tie(answer, score) =
                answer_confidence(*provider, inst.question, shots);
        } else {
            std::tie(answer, score) =
                self_consistency(*provider, inst.question, shots, m);
        }
        nlohmann::json j = {
            {"instance_id", inst.id},
            {"answer", answer},
            {"probability", score.probability},
            {"label",
             label(score, tau) == ConfidenceLabel::High ? "High" : "Low"}};
        out << j.dump() << '\n';
    }
    return 0;
}

int cmd_debate(const std::string& config_path, const std::string& protocol,
               const std::string& dataset_path, const std::string& instance_id,
               std::string question, std::string context, int rounds,
               unsigned seed, const std::string& out_path) {
    auto provider = provider_from(config_path);

    std::vector<QAInstance> pool;
    FewShotSet shots;
    if (!dataset_path.empty()) {
        pool = load_dataset(dataset_path);
        const auto it = std::find_if(
            pool.begin(), pool.end(),
            [&](const QAInstance& i) { return i.id == instance_id; });
        if (it == pool.end()) {
            throw ParseError("instance id not found: " + instance_id);
        }
        question = it->question;
        context = it->context;
        shots = select_exemplars(pool, instance_id, seed);
    } else if (question.empty() || context.empty()) {
        throw CLI::ValidationError(
            "provide either --dataset with --id, or --question and --context");
    }

    nlohmann::json result;
    if (protocol == "acvd" || protocol == "judge") {
        std::string a_ctx, a_prior;
        if (!pool.empty()) {
            a_ctx = answer_with_context(*provider, question, context, shots);
            a_prior = answer_prior(*provider, question, shots);
        } else {
            // Without a few-shot pool, fall back to bare single-turn prompts.
            CompletionRequest req;
            req.messages = {{Role::User, "Context: " + context +
                                             "\nQuestion: " + question +
                                             "\nAnswer concisely."}};
            a_ctx = provider->complete(req).text;
            req.messages = {{Role::User,
                             "Question: " + question + "\nAnswer concisely."}};
            a_prior = provider->complete(req).text;
        }
        if (protocol == "acvd") {
            DebateConfig config;
            config.rounds = rounds;
            const Transcript transcript = acvd_debate(
                *provider, question, context, a_ctx, a_prior, config);
            result = transcript_to_json(transcript);
        } else {
            result["answer"] = judge_debate(*provider, question, context,
                                            rounds, a_ctx, a_prior);
            result["rounds"] = rounds;
        }
    } else if (protocol == "naive") {
        const NaiveDebateResult r =
            naive_debate(*provider, question, context, 3, rounds);
        result = {{"answer", r.answer},
                  {"rounds_used", r.rounds_used},
                  {"calls", r.calls}};
    } else {
        throw CLI::ValidationError("protocol must be acvd, judge, or naive");
    }

    if (out_path.empty()) {
        std::cout << result.dump(2) << '\n';
    } else {
        std::ofstream out(out_path);
        out << result.dump(2) << '\n';
    }
    return 0;
}

int cmd_perturb(const std::string& input_path, const std::vector<int>& offsets,
                unsigned seed, const std::string& out_path) {
    const auto instances = load_dataset(input_path);
    std::vector<QAInstance> out;
    for (const auto& inst : instances) {
        for (std::size_t k = 0; k < offsets.size(); ++k) {
            QAInstance perturbed = apply_perturbation(inst, offsets[k], seed);
            perturbed.id = inst.id + "-off" + std::to_string(offsets[k]);
            out.push_back(std::move(perturbed));
        }
    }
    save_dataset(out, out_path);
    return 0;
}

int cmd_run_eval(const std::string& dataset_path,
                 const std::string& config_path,
                 const std::vector<std::string>& strategies, unsigned seed,
                 double tau, bool probe_tiers, const std::string& out_dir) {
    auto provider = provider_from(config_path);
    const auto instances = load_dataset(dataset_path);
    EvalConfig config;
    config.strategies = strategies;
    config.seed = seed;
    config.tau = tau;
    config.probe_tiers = probe_tiers;
    const EvalRunOutput output = run_eval(*provider, instances, config);
    write_eval_output(output, out_dir);
    if (output.invariant_failure) {
        std::cerr << "invariant check failed during aggregation\n";
        return 1;
    }
    return 0;
}

int cmd_report(const std::string& records_dir, const std::string& dataset_path,
               const std::string& out_dir) {
    const auto instances = load_dataset(dataset_path);
    Report report;
    std::map<std::string, std::vector<EvalRecord>> by_strategy;
    for (const auto& entry :
         std::filesystem::directory_iterator(records_dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("records_", 0) != 0 ||
            entry.path().extension() != ".jsonl") {
            continue;
        }
        auto records = load_records(entry.path().string());
        if (records.empty()) continue;
        const std::string strategy = records.front().strategy;
        by_strategy[strategy] = std::move(records);
    }
    for (const auto& [strategy, records] : by_strategy) {
        report.strategy_order.push_back(strategy);
        report.per_strategy[strategy] = summarize(records, instances);
        std::map<int, std::pair<long, long>> per_offset;
        for (const auto& rec : records) {
            if (!rec.offset) continue;
            auto& cell = per_offset[*rec.offset];
            ++cell.second;
            if (rec.correct) ++cell.first;
        }
        for (const auto& [offset, counts] : per_offset) {
            report.per_offset_accuracy[strategy][offset] =
                double(counts.first) / double(counts.second);
        }
    }
    std::filesystem::create_directories(out_dir);
    {
        std::ofstream f(std::filesystem::path(out_dir) / "report.json");
        f << emit_report(report, ReportFormat::JSON);
    }
    {
        std::ofstream f(std::filesystem::path(out_dir) / "report.csv");
        f << emit_report(report, ReportFormat::CSV);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SR-DCR: confidence-gated asymmetric debate for "
                 "context-reliability arbitration"};
    app.require_subcommand(1);

    std::string dataset, config, output, mode = "logprob", protocol = "acvd";
    std::string instance_id, question, context, records_dir;
    std::vector<std::string> strategies = {"few_shot", "sr_dcr"};
    std::vector<int> offsets = {20, 40, 60, 100, 200};
    int n = 32, m = 16, rounds = 6;
    unsigned seed = 0;
    double temperature = 0.5, tau = 0.90;
    bool probe_tiers = false;

    auto* probe = app.add_subcommand("probe", "Sample zero-context recall and "
                                              "assign knowledge tiers");
    probe->add_option("--dataset", dataset)->required();
    probe->add_option("--config", config)->required();
    probe->add_option("--n", n);
    probe->add_option("--temperature", temperature);
    probe->add_option("--seed", seed);
    probe->add_option("--output", output)->required();

    auto* confide = app.add_subcommand(
        "confide", "Score self-confidence of zero-context answers");
    confide->add_option("--dataset", dataset)->required();
    confide->add_option("--config", config)->required();
    confide->add_option("--mode", mode)
        ->check(CLI::IsMember({"logprob", "consistency"}));
    confide->add_option("--tau", tau);
    confide->add_option("--m", m);
    confide->add_option("--seed", seed);
    confide->add_option("--output", output)->required();

    auto* debate = app.add_subcommand("debate", "Run one debate and print the "
                                                "transcript");
    debate->add_option("--config", config)->required();
    debate->add_option("--protocol", protocol)
        ->check(CLI::IsMember({"acvd", "judge", "naive"}));
    debate->add_option("--dataset", dataset);
    debate->add_option("--id", instance_id);
    debate->add_option("--question", question);
    debate->add_option("--context", context);
    debate->add_option("--rounds", rounds);
    debate->add_option("--seed", seed);
    debate->add_option("--output", output);

    auto* perturb = app.add_subcommand(
        "perturb", "Generate graded numeric context perturbations");
    perturb->add_option("--input", dataset)->required();
    perturb->add_option("--offsets", offsets);
    perturb->add_option("--seed", seed);
    perturb->add_option("--output", output)->required();

    auto* run_eval_cmd = app.add_subcommand(
        "run-eval", "Evaluate strategies over a dataset");
    run_eval_cmd->add_option("--dataset", dataset)->required();
    run_eval_cmd->add_option("--config", config)->required();
    run_eval_cmd->add_option("--strategies", strategies);
    run_eval_cmd->add_option("--seed", seed);
    run_eval_cmd->add_option("--tau", tau);
    run_eval_cmd->add_flag("--probe-tiers", probe_tiers);
    run_eval_cmd->add_option("--output-dir", output)->required();

    auto* report = app.add_subcommand(
        "report", "Aggregate saved record files into tables");
    report->add_option("--records-dir", records_dir)->required();
    report->add_option("--dataset", dataset)->required();
    report->add_option("--output-dir", output)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (probe->parsed()) {
            return cmd_probe(dataset, config, n, temperature, seed, output);
        }
        if (confide->parsed()) {
            return cmd_confide(dataset, config, mode, tau, m, seed, output);
        }
        if (debate->parsed()) {
            return cmd_debate(config, protocol, dataset, instance_id, question,
                              context, rounds, seed, output);
        }
        if (perturb->parsed()) {
            return cmd_perturb(dataset, offsets, seed, output);
        }
        if (run_eval_cmd->parsed()) {
            return cmd_run_eval(dataset, config, strategies, seed, tau,
                                probe_tiers, output);
        }
        if (report->parsed()) {
            return cmd_report(records_dir, dataset, output);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
