#pragma once

#include <map>
#include <string>
#include <vector>

#include "srdcr/debate.hpp"
#include "srdcr/harness.hpp"
#include "srdcr/pipeline.hpp"
#include "srdcr/provider.hpp"

namespace srdcr {

// Counts calls and approximate token usage of everything passing through.
class CountingProvider final : public ChatProvider {
  public:
    explicit CountingProvider(ChatProvider& inner) : inner_(inner) {}

    CompletionResponse complete(const CompletionRequest& request) override;

    long calls() const { return calls_; }
    long tokens() const { return tokens_; }
    void reset() { calls_ = 0; tokens_ = 0; }

  private:
    ChatProvider& inner_;
    long calls_ = 0;
    long tokens_ = 0;
};

struct EvalConfig {
    std::vector<std::string> strategies;
    unsigned seed = 0;
    double tau = 0.90;
    int consistency_samples = 16;
    DebateConfig debate;
    int naive_agents = 3;
    int naive_max_rounds = 5;
    // When set, runs the 32-sample knowledge probe per instance and emits
    // the context-preference curve for the few-shot baseline.
    bool probe_tiers = false;
    int probe_samples = 32;
    double probe_temperature = 0.5;
};

// Names accepted in EvalConfig::strategies.
extern const std::vector<std::string> kKnownStrategies;

struct EvalRunOutput {
    std::vector<std::string> strategy_order;
    std::map<std::string, std::vector<EvalRecord>> records_by_strategy;
    Report report;
    std::map<std::string, std::string> tiers_by_instance;
    bool invariant_failure = false;
};

EvalRunOutput run_eval(ChatProvider& provider,
                       const std::vector<QAInstance>& instances,
                       const EvalConfig& config);

// Deterministic byte-stable files: records_<strategy>.jsonl per strategy,
// report.json, report.csv, and one CSV per curve.
void write_eval_output(const EvalRunOutput& output, const std::string& out_dir);

}  // namespace srdcr
