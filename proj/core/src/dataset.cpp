#include "srdcr/dataset.hpp"

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

namespace srdcr {

PerturbationLevel level_for_offset(int offset) {
    switch (offset) {
        case 20: return PerturbationLevel::Subtle;
        case 40: return PerturbationLevel::Mild;
        case 60: return PerturbationLevel::Moderate;
        case 100:
        case 200: return PerturbationLevel::Blatant;
    }
    throw InvariantViolation("unsupported offset: " + std::to_string(offset));
}

std::string level_name(PerturbationLevel level) {
    switch (level) {
        case PerturbationLevel::Subtle: return "subtle";
        case PerturbationLevel::Mild: return "mild";
        case PerturbationLevel::Moderate: return "moderate";
        case PerturbationLevel::Blatant: return "blatant";
    }
    return "?";
}

namespace {

PerturbationLevel level_from_name(const std::string& name) {
    if (name == "subtle") return PerturbationLevel::Subtle;
    if (name == "mild") return PerturbationLevel::Mild;
    if (name == "moderate") return PerturbationLevel::Moderate;
    if (name == "blatant") return PerturbationLevel::Blatant;
    throw InvariantViolation("unknown perturbation level: " + name);
}

void validate_instance(const QAInstance& inst) {
    if (inst.id.empty()) throw InvariantViolation("instance id is empty");
    if (inst.question.empty())
        throw InvariantViolation("question is empty: " + inst.id);
    if (inst.answer.empty())
        throw InvariantViolation("answer is empty: " + inst.id);
    if (inst.context.empty())
        throw InvariantViolation("context is empty: " + inst.id);
    if (inst.perturbation) {
        const auto& p = *inst.perturbation;
        if (level_for_offset(p.offset) != p.level) {
            throw InvariantViolation("perturbation level does not match offset: " +
                                     inst.id);
        }
        if (inst.context.find(p.perturbed_value) == std::string::npos) {
            throw InvariantViolation(
                "context lacks perturbed_value: " + inst.id);
        }
    }
}

QAInstance instance_from_json(const nlohmann::json& j) {
    QAInstance inst;
    inst.id = j.at("id").get<std::string>();
    inst.domain = j.value("domain", std::string{});
    inst.question = j.at("question").get<std::string>();
    inst.answer = j.at("answer").get<std::string>();
    inst.context = j.at("context").get<std::string>();
    if (j.contains("perturbation") && !j.at("perturbation").is_null()) {
        const auto& pj = j.at("perturbation");
        Perturbation p;
        p.offset = pj.at("offset").get<int>();
        p.level = pj.contains("level")
                      ? level_from_name(pj.at("level").get<std::string>())
                      : level_for_offset(p.offset);
        p.original_value = pj.at("original_value").get<std::string>();
        p.perturbed_value = pj.at("perturbed_value").get<std::string>();
        inst.perturbation = std::move(p);
    }
    return inst;
}

}  // namespace

std::vector<QAInstance> parse_dataset(const std::string& jsonl) {
    std::vector<QAInstance> out;
    std::set<std::string> seen;
    std::istringstream in(jsonl);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        QAInstance inst;
        try {
            inst = instance_from_json(nlohmann::json::parse(line));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("dataset line " + std::to_string(lineno) + ": " +
                             e.what());
        }
        validate_instance(inst);
        if (!seen.insert(inst.id).second) {
            throw InvariantViolation("duplicate instance id: " + inst.id);
        }
        out.push_back(std::move(inst));
    }
    return out;
}

std::vector<QAInstance> load_dataset(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open dataset file: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_dataset(buf.str());
}

std::string serialize_instance(const QAInstance& inst) {
    nlohmann::json j;
    j["id"] = inst.id;
    j["domain"] = inst.domain;
    j["question"] = inst.question;
    j["answer"] = inst.answer;
    j["context"] = inst.context;
    if (inst.perturbation) {
        const auto& p = *inst.perturbation;
        j["perturbation"] = {{"level", level_name(p.level)},
                             {"offset", p.offset},
                             {"original_value", p.original_value},
                             {"perturbed_value", p.perturbed_value}};
    }
    return j.dump();
}

void save_dataset(const std::vector<QAInstance>& instances,
                  const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ParseError("cannot open output file: " + path);
    for (const auto& inst : instances) f << serialize_instance(inst) << '\n';
}

DatasetSplit split_dataset(const std::vector<QAInstance>& instances,
                           bool balanced) {
    DatasetSplit split;
    for (const auto& inst : instances) {
        (inst.perturbed() ? split.perturbed : split.standard).push_back(inst);
    }
    if (balanced && split.standard.size() != split.perturbed.size()) {
        throw InvariantViolation(
            "balanced testbed requires equal halves, got " +
            std::to_string(split.standard.size()) + " standard / " +
            std::to_string(split.perturbed.size()) + " perturbed");
    }
    return split;
}

int perturb_numeric(int original, int offset, Direction direction) {
    level_for_offset(offset);  // rejects unsupported offsets
    return direction == Direction::Plus ? original + offset : original - offset;
}

QAInstance apply_perturbation(const QAInstance& instance, int offset,
                              unsigned seed) {
    if (instance.perturbed()) {
        throw PreconditionViolation("instance already perturbed: " + instance.id);
    }
    int value = 0;
    try {
        std::size_t consumed = 0;
        value = std::stoi(instance.answer, &consumed);
        if (consumed != instance.answer.size()) {
            throw NonNumericAnswer("answer is not an integer: " + instance.id);
        }
    } catch (const std::invalid_argument&) {
        throw NonNumericAnswer("answer is not an integer: " + instance.id);
    } catch (const std::out_of_range&) {
        throw NonNumericAnswer("answer out of integer range: " + instance.id);
    }

    const auto span = instance.context.find(instance.answer);
    if (span == std::string::npos) {
        throw SpanNotFound("answer value absent from context: " + instance.id);
    }

    std::seed_seq seq{seed, static_cast<unsigned>(
                                std::hash<std::string>{}(instance.id))};
    std::mt19937 rng(seq);
    const Direction dir = (rng() & 1u) != 0 ? Direction::Plus : Direction::Minus;
    const int perturbed = perturb_numeric(value, offset, dir);

    QAInstance out = instance;
    out.context = instance.context.substr(0, span) + std::to_string(perturbed) +
                  instance.context.substr(span + instance.answer.size());
    Perturbation p;
    p.offset = offset;
    p.level = level_for_offset(offset);
    p.original_value = instance.answer;
    p.perturbed_value = std::to_string(perturbed);
    out.perturbation = std::move(p);
    return out;
}

}  // namespace srdcr
