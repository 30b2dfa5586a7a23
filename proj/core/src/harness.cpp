#include "srdcr/harness.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace srdcr {

std::string normalize_answer(const std::string& text) {
    // case-fold + collapse whitespace
    std::string collapsed;
    bool in_space = true;
    for (unsigned char c : text) {
        if (std::isspace(c)) {
            if (!in_space) collapsed += ' ';
            in_space = true;
        } else {
            collapsed += static_cast<char>(std::tolower(c));
            in_space = false;
        }
    }
    while (!collapsed.empty() && collapsed.back() == ' ') collapsed.pop_back();

    // strip surrounding punctuation
    std::size_t begin = 0;
    std::size_t end = collapsed.size();
    while (begin < end && std::ispunct(static_cast<unsigned char>(collapsed[begin])))
        ++begin;
    while (end > begin && std::ispunct(static_cast<unsigned char>(collapsed[end - 1])))
        --end;
    return collapsed.substr(begin, end - begin);
}

namespace {

bool parse_number(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* endp = nullptr;
    out = std::strtod(s.c_str(), &endp);
    return endp != nullptr && *endp == '\0';
}

}  // namespace

bool exact_match(const std::string& pred, const std::string& gold) {
    if (gold.empty()) throw PreconditionViolation("exact_match: empty gold");
    const std::string p = normalize_answer(pred);
    const std::string g = normalize_answer(gold);
    double pn = 0.0, gn = 0.0;
    if (parse_number(p, pn) && parse_number(g, gn)) return pn == gn;
    return p == g;
}

std::vector<EvalRecord> evaluate(const std::string& strategy_name,
                                 const StrategyFn& strategy,
                                 const std::vector<QAInstance>& instances) {
    std::vector<EvalRecord> records;
    records.reserve(instances.size());
    for (const auto& inst : instances) {
        EvalRecord rec;
        rec.instance_id = inst.id;
        rec.strategy = strategy_name;
        if (inst.perturbation) rec.offset = inst.perturbation->offset;
        try {
            StrategyOutcome outcome = strategy(inst);
            rec.predicted = outcome.predicted;
            rec.abstained = outcome.abstained;
            rec.calls = outcome.calls;
            rec.tokens = outcome.tokens;
            rec.correct =
                rec.predicted && !rec.abstained && exact_match(*rec.predicted, inst.answer);
        } catch (const std::exception&) {
            rec.failed = true;
        }
        if (inst.perturbation) {
            rec.context_preferred =
                rec.predicted &&
                exact_match(*rec.predicted, inst.perturbation->perturbed_value);
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<EvalRecord> golden_baseline(
    const std::vector<EvalRecord>& ctx_records,
    const std::vector<EvalRecord>& prior_records,
    const std::vector<QAInstance>& instances) {
    std::map<std::string, const EvalRecord*> ctx_by_id, prior_by_id;
    for (const auto& r : ctx_records) ctx_by_id[r.instance_id] = &r;
    for (const auto& r : prior_records) prior_by_id[r.instance_id] = &r;

    std::vector<EvalRecord> out;
    out.reserve(instances.size());
    for (const auto& inst : instances) {
        const auto& source = inst.perturbed() ? prior_by_id : ctx_by_id;
        auto it = source.find(inst.id);
        if (it == source.end()) {
            throw MissingRecord("golden_baseline: no record for " + inst.id);
        }
        EvalRecord rec = *it->second;
        rec.strategy = "golden_baseline";
        rec.calls = 0;
        rec.tokens = 0;
        out.push_back(std::move(rec));
    }
    return out;
}

StrategySummary summarize(const std::vector<EvalRecord>& records,
                          const std::vector<QAInstance>& instances) {
    std::map<std::string, bool> perturbed_by_id;
    for (const auto& inst : instances) perturbed_by_id[inst.id] = inst.perturbed();

    StrategySummary s;
    long std_correct = 0, pert_correct = 0, abstained = 0, failed = 0;
    for (const auto& rec : records) {
        auto it = perturbed_by_id.find(rec.instance_id);
        if (it == perturbed_by_id.end()) {
            throw MissingRecord("record for unknown instance: " + rec.instance_id);
        }
        if (it->second) {
            ++s.n_perturbed;
            if (rec.correct) ++pert_correct;
        } else {
            ++s.n_standard;
            if (rec.correct) ++std_correct;
        }
        if (rec.abstained) ++abstained;
        if (rec.failed) ++failed;
    }
    const long total = s.n_standard + s.n_perturbed;
    s.standard_accuracy =
        s.n_standard > 0 ? double(std_correct) / double(s.n_standard) : 0.0;
    s.perturbed_accuracy =
        s.n_perturbed > 0 ? double(pert_correct) / double(s.n_perturbed) : 0.0;
    // micro-average over all instances
    s.overall_accuracy =
        total > 0 ? double(std_correct + pert_correct) / double(total) : 0.0;
    s.abstention_rate = total > 0 ? double(abstained) / double(total) : 0.0;
    s.failure_rate = total > 0 ? double(failed) / double(total) : 0.0;
    return s;
}

std::map<std::pair<int, std::string>, double> context_preference_curve(
    const std::vector<EvalRecord>& records,
    const std::map<std::string, std::string>& tiers) {
    std::map<std::pair<int, std::string>, std::pair<long, long>> cells;
    for (const auto& rec : records) {
        if (!rec.offset || !rec.context_preferred.has_value()) continue;
        auto it = tiers.find(rec.instance_id);
        if (it == tiers.end()) {
            throw MissingRecord("no knowledge tier for " + rec.instance_id);
        }
        auto& cell = cells[{*rec.offset, it->second}];
        ++cell.second;
        if (*rec.context_preferred) ++cell.first;
    }
    std::map<std::pair<int, std::string>, double> out;
    for (const auto& [key, counts] : cells) {
        out[key] = double(counts.first) / double(counts.second);
    }
    return out;
}

std::map<std::pair<int, int>, double> prior_preference_curve(
    const std::vector<EvalRecord>& judge_debate_records,
    const std::map<std::string, std::string>& prior_answers) {
    std::map<std::pair<int, int>, std::pair<long, long>> cells;
    for (const auto& rec : judge_debate_records) {
        if (!rec.round_checkpoint || !rec.offset) continue;
        auto it = prior_answers.find(rec.instance_id);
        if (it == prior_answers.end()) {
            throw MissingRecord("no prior answer for " + rec.instance_id);
        }
        auto& cell = cells[{*rec.round_checkpoint, *rec.offset}];
        ++cell.second;
        if (rec.predicted && exact_match(*rec.predicted, it->second)) ++cell.first;
    }
    std::map<std::pair<int, int>, double> out;
    for (const auto& [key, counts] : cells) {
        out[key] = double(counts.first) / double(counts.second);
    }
    return out;
}

namespace {

std::string pct(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", fraction * 100.0);
    return buf;
}

nlohmann::json report_to_json(const Report& report) {
    nlohmann::json j;
    j["strategy_order"] = report.strategy_order;
    auto& per = j["per_strategy"] = nlohmann::json::object();
    for (const auto& [name, s] : report.per_strategy) {
        per[name] = {{"standard_accuracy", s.standard_accuracy},
                     {"perturbed_accuracy", s.perturbed_accuracy},
                     {"overall_accuracy", s.overall_accuracy},
                     {"abstention_rate", s.abstention_rate},
                     {"failure_rate", s.failure_rate},
                     {"n_standard", s.n_standard},
                     {"n_perturbed", s.n_perturbed}};
    }
    auto& off = j["per_offset_accuracy"] = nlohmann::json::object();
    for (const auto& [name, table] : report.per_offset_accuracy) {
        auto& row = off[name] = nlohmann::json::object();
        for (const auto& [offset, acc] : table) {
            row[std::to_string(offset)] = acc;
        }
    }
    auto& cpref = j["context_preference"] = nlohmann::json::array();
    for (const auto& [key, value] : report.context_preference) {
        cpref.push_back(
            {{"offset", key.first}, {"tier", key.second}, {"value", value}});
    }
    auto& ppref = j["prior_preference"] = nlohmann::json::array();
    for (const auto& [key, value] : report.prior_preference) {
        ppref.push_back(
            {{"round", key.first}, {"offset", key.second}, {"value", value}});
    }
    return j;
}

}  // namespace

std::string emit_report(const Report& report, ReportFormat format) {
    if (format == ReportFormat::JSON) {
        return report_to_json(report).dump(2) + "\n";
    }

    std::ostringstream out;
    out << "method,standard_accuracy,perturbed_accuracy,overall_accuracy,"
           "abstention_rate,failure_rate\n";
    for (const auto& name : report.strategy_order) {
        auto it = report.per_strategy.find(name);
        if (it == report.per_strategy.end()) continue;
        const auto& s = it->second;
        out << name << ',' << pct(s.standard_accuracy) << ','
            << pct(s.perturbed_accuracy) << ',' << pct(s.overall_accuracy)
            << ',' << pct(s.abstention_rate) << ',' << pct(s.failure_rate)
            << '\n';
    }
    if (!report.per_offset_accuracy.empty()) {
        out << "\nmethod,offset_20,offset_40,offset_60,offset_100,offset_200\n";
        for (const auto& name : report.strategy_order) {
            auto it = report.per_offset_accuracy.find(name);
            if (it == report.per_offset_accuracy.end()) continue;
            out << name;
            for (int offset : {20, 40, 60, 100, 200}) {
                auto cell = it->second.find(offset);
                out << ',';
                if (cell != it->second.end()) out << pct(cell->second);
            }
            out << '\n';
        }
    }
    return out.str();
}

Report parse_report_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Report report;
    report.strategy_order = j.at("strategy_order").get<std::vector<std::string>>();
    for (const auto& [name, sj] : j.at("per_strategy").items()) {
        StrategySummary s;
        s.standard_accuracy = sj.at("standard_accuracy");
        s.perturbed_accuracy = sj.at("perturbed_accuracy");
        s.overall_accuracy = sj.at("overall_accuracy");
        s.abstention_rate = sj.at("abstention_rate");
        s.failure_rate = sj.at("failure_rate");
        s.n_standard = sj.at("n_standard");
        s.n_perturbed = sj.at("n_perturbed");
        report.per_strategy[name] = s;
    }
    for (const auto& [name, row] : j.at("per_offset_accuracy").items()) {
        for (const auto& [offset, acc] : row.items()) {
            report.per_offset_accuracy[name][std::stoi(offset)] = acc;
        }
    }
    for (const auto& cell : j.at("context_preference")) {
        report.context_preference[{cell.at("offset").get<int>(),
                                   cell.at("tier").get<std::string>()}] =
            cell.at("value").get<double>();
    }
    for (const auto& cell : j.at("prior_preference")) {
        report.prior_preference[{cell.at("round").get<int>(),
                                 cell.at("offset").get<int>()}] =
            cell.at("value").get<double>();
    }
    return report;
}

std::string serialize_record(const EvalRecord& rec) {
    nlohmann::json j;
    j["instance_id"] = rec.instance_id;
    j["strategy"] = rec.strategy;
    if (rec.predicted) j["predicted"] = *rec.predicted;
    j["correct"] = rec.correct;
    j["abstained"] = rec.abstained;
    j["failed"] = rec.failed;
    if (rec.context_preferred) j["context_preferred"] = *rec.context_preferred;
    if (rec.offset) j["offset"] = *rec.offset;
    if (rec.round_checkpoint) j["round_checkpoint"] = *rec.round_checkpoint;
    j["calls"] = rec.calls;
    j["tokens"] = rec.tokens;
    return j.dump();
}

EvalRecord parse_record(const std::string& json_line) {
    nlohmann::json j = nlohmann::json::parse(json_line);
    EvalRecord rec;
    rec.instance_id = j.at("instance_id").get<std::string>();
    rec.strategy = j.at("strategy").get<std::string>();
    if (j.contains("predicted")) rec.predicted = j.at("predicted").get<std::string>();
    rec.correct = j.at("correct");
    rec.abstained = j.at("abstained");
    rec.failed = j.value("failed", false);
    if (j.contains("context_preferred"))
        rec.context_preferred = j.at("context_preferred").get<bool>();
    if (j.contains("offset")) rec.offset = j.at("offset").get<int>();
    if (j.contains("round_checkpoint"))
        rec.round_checkpoint = j.at("round_checkpoint").get<int>();
    rec.calls = j.value("calls", 0L);
    rec.tokens = j.value("tokens", 0L);
    return rec;
}

void save_records(const std::vector<EvalRecord>& records,
                  const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ParseError("cannot open output file: " + path);
    for (const auto& rec : records) f << serialize_record(rec) << '\n';
}

std::vector<EvalRecord> load_records(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open records file: " + path);
    std::vector<EvalRecord> out;
    std::string line;
    while (std::getline(f, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(parse_record(line));
    }
    return out;
}

}  // namespace srdcr
