#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "srdcr/debate.hpp"
#include "srdcr/harness.hpp"
#include "srdcr/scripted_provider.hpp"

namespace {

void BM_NormalizeAnswer(benchmark::State& state) {
    const std::string input = "  The 2006 Census of St. Louis,  Missouri!  ";
    for (auto _ : state) {
        benchmark::DoNotOptimize(srdcr::normalize_answer(input));
    }
}
BENCHMARK(BM_NormalizeAnswer);

void BM_ExactMatch(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(srdcr::exact_match("  2006. ", "2006"));
        benchmark::DoNotOptimize(srdcr::exact_match("St. Louis", "st. louis"));
    }
}
BENCHMARK(BM_ExactMatch);

void BM_StabilizedVerdict(benchmark::State& state) {
    std::vector<srdcr::Verdict> seq;
    for (int i = 0; i < static_cast<int>(state.range(0)); ++i) {
        seq.push_back(i % 3 == 0 ? srdcr::Verdict::Unreasonable
                                 : srdcr::Verdict::Reasonable);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(srdcr::stabilized_verdict(seq));
    }
}
BENCHMARK(BM_StabilizedVerdict)->Arg(6)->Arg(64);

void BM_ScriptedMatch(benchmark::State& state) {
    std::vector<srdcr::ScriptedRule> rules;
    for (int i = 0; i < 32; ++i) {
        srdcr::ScriptedRule r;
        r.matcher = "marker-" + std::to_string(i);
        r.responses.push_back({"answer", {}});
        rules.push_back(r);
    }
    srdcr::ScriptedProvider provider(rules);
    srdcr::CompletionRequest request;
    request.messages = {{srdcr::Role::User,
                         "a long prompt body that eventually names marker-31 "
                         "somewhere near its end"}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(provider.complete(request));
    }
}
BENCHMARK(BM_ScriptedMatch);

}  // namespace

BENCHMARK_MAIN();
