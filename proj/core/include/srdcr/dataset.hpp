#pragma once

#include <optional>
#include <string>
#include <vector>

#include "srdcr/errors.hpp"

namespace srdcr {

enum class PerturbationLevel { Subtle, Mild, Moderate, Blatant };

enum class Direction { Plus, Minus };

// Subtle=20, Mild=40, Moderate=60, Blatant=100 or 200.
PerturbationLevel level_for_offset(int offset);
std::string level_name(PerturbationLevel level);

struct Perturbation {
    PerturbationLevel level = PerturbationLevel::Subtle;
    int offset = 20;
    std::string original_value;
    std::string perturbed_value;
};

// One (question, gold answer, context) triple; the unit of evaluation.
struct QAInstance {
    std::string id;
    std::string domain;
    std::string question;
    std::string answer;
    std::string context;
    std::optional<Perturbation> perturbation;

    bool perturbed() const { return perturbation.has_value(); }
};

struct DatasetSplit {
    std::vector<QAInstance> standard;
    std::vector<QAInstance> perturbed;
};

// JSON Lines, one instance per line, snake-cased keys. Validates all
// invariants; rejects duplicate ids; preserves file order.
std::vector<QAInstance> load_dataset(const std::string& path);
std::vector<QAInstance> parse_dataset(const std::string& jsonl);
std::string serialize_instance(const QAInstance& instance);
void save_dataset(const std::vector<QAInstance>& instances,
                  const std::string& path);

// Splits into standard/perturbed halves; with balanced=true the two halves
// must have equal size.
DatasetSplit split_dataset(const std::vector<QAInstance>& instances,
                           bool balanced = false);

int perturb_numeric(int original, int offset, Direction direction);

// Replaces the answer-bearing numeric span in the context with a perturbed
// value; question and answer stay fixed, the rest of the passage is
// untouched. Direction is drawn from a generator seeded by (seed, id).
QAInstance apply_perturbation(const QAInstance& instance, int offset,
                              unsigned seed);

}  // namespace srdcr
