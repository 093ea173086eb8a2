#include <benchmark/benchmark.h>

#include "linexplain/batch.hpp"
#include "linexplain/evaluation.hpp"
#include "linexplain/ranking.hpp"
#include "linexplain/synth.hpp"

using namespace linexplain;

namespace {

const SynthData& corpus() {
    static const SynthData data = [] {
        SynthConfig config;
        config.num_instances = 2'000;
        config.num_features = 1'000;
        config.seed = 5;
        return generate_synthetic(config);
    }();
    return data;
}

}  // namespace

static void BM_GenerateSynthetic(benchmark::State& state) {
    SynthConfig config;
    config.num_instances = static_cast<std::size_t>(state.range(0));
    config.num_features = config.num_instances / 2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(generate_synthetic(config));
    }
}
BENCHMARK(BM_GenerateSynthetic)->RangeMultiplier(4)->Range(500, 8'000);

static void BM_ExplainDataset(benchmark::State& state) {
    const auto& data = corpus();
    BatchOptions options;
    options.search = static_cast<EcSearch>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(explain_dataset(data.model, data.dataset, options));
    }
    state.SetLabel(to_string(options.search));
}
BENCHMARK(BM_ExplainDataset)
    ->Arg(static_cast<int>(EcSearch::linear_rank))
    ->Arg(static_cast<int>(EcSearch::greedy));

static void BM_AttributeDataset(benchmark::State& state) {
    const auto& data = corpus();
    BatchOptions options;
    options.samples = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(attribute_dataset(data.model, data.dataset, options));
    }
}
BENCHMARK(BM_AttributeDataset)->Arg(200)->Arg(1'000)->Unit(benchmark::kMillisecond);

static void BM_ExplanationCurve(benchmark::State& state) {
    const auto& data = corpus();
    const auto ranking = rank_by_beta(data.model);
    const auto ks = default_k_grid(data.model.num_features());
    for (auto _ : state) {
        benchmark::DoNotOptimize(explanation_curve(ranking, data.model, data.dataset, ks));
    }
}
BENCHMARK(BM_ExplanationCurve)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
