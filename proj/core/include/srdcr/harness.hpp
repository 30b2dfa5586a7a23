#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "srdcr/dataset.hpp"

namespace srdcr {

// Normalization applied to both sides of every exact-match comparison:
// case-fold, trim, collapse internal whitespace, strip surrounding
// punctuation. No article stripping.
std::string normalize_answer(const std::string& text);

// Numeric comparison when both normalized strings parse as numbers,
// string comparison otherwise.
bool exact_match(const std::string& pred, const std::string& gold);

struct EvalRecord {
    std::string instance_id;
    std::string strategy;
    std::optional<std::string> predicted;
    bool correct = false;
    bool abstained = false;
    bool failed = false;  // provider/strategy error; counts as incorrect
    std::optional<bool> context_preferred;  // perturbed instances only
    std::optional<int> offset;
    std::optional<int> round_checkpoint;  // judge-debate curves
    long calls = 0;
    long tokens = 0;
};

struct StrategySummary {
    double standard_accuracy = 0.0;
    double perturbed_accuracy = 0.0;
    double overall_accuracy = 0.0;
    double abstention_rate = 0.0;
    double failure_rate = 0.0;
    long n_standard = 0;
    long n_perturbed = 0;
};

// Cell keys are pairs; absent cells mean no perturbed records fell there
// (reported as absent, never as zero).
struct Report {
    std::vector<std::string> strategy_order;
    std::map<std::string, StrategySummary> per_strategy;
    std::map<std::string, std::map<int, double>> per_offset_accuracy;
    std::map<std::pair<int, std::string>, double> context_preference;
    std::map<std::pair<int, int>, double> prior_preference;  // (round, offset)
};

// One strategy invocation over one instance. Throwing marks the record as
// failed; it never aborts the run.
struct StrategyOutcome {
    std::optional<std::string> predicted;  // absent on Abstain
    bool abstained = false;
    long calls = 0;
    long tokens = 0;
};
using StrategyFn = std::function<StrategyOutcome(const QAInstance&)>;

std::vector<EvalRecord> evaluate(const std::string& strategy_name,
                                 const StrategyFn& strategy,
                                 const std::vector<QAInstance>& instances);

// Pure combiner: per instance, the context-conditioned record when the
// context is unperturbed and the prior-only record otherwise. Zero provider
// calls.
std::vector<EvalRecord> golden_baseline(
    const std::vector<EvalRecord>& ctx_records,
    const std::vector<EvalRecord>& prior_records,
    const std::vector<QAInstance>& instances);

StrategySummary summarize(const std::vector<EvalRecord>& records,
                          const std::vector<QAInstance>& instances);

// Fraction of perturbed instances with context_preferred = true, per
// (offset, knowledge tier) cell. Tiers are keyed by instance id.
std::map<std::pair<int, std::string>, double> context_preference_curve(
    const std::vector<EvalRecord>& records,
    const std::map<std::string, std::string>& tiers);

// Fraction of perturbed instances whose checkpoint answer equals the prior
// answer, per (round, offset) cell.
std::map<std::pair<int, int>, double> prior_preference_curve(
    const std::vector<EvalRecord>& judge_debate_records,
    const std::map<std::string, std::string>& prior_answers);

enum class ReportFormat { JSON, CSV };

// Deterministic serialization with stable column order. CSV tables follow
// the method x {standard, perturbed, overall} and method x offsets shapes.
std::string emit_report(const Report& report, ReportFormat format);
Report parse_report_json(const std::string& text);

std::string serialize_record(const EvalRecord& record);
EvalRecord parse_record(const std::string& json_line);
void save_records(const std::vector<EvalRecord>& records,
                  const std::string& path);
std::vector<EvalRecord> load_records(const std::string& path);

}  // namespace srdcr
