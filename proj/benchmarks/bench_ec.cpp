#include <benchmark/benchmark.h>

#include <utility>
#include <vector>

#include "linexplain/ec.hpp"
#include "linexplain/random.hpp"

using namespace linexplain;

namespace {

struct Case {
    LinearModel model;
    SparseInstance instance;
};

// A positively predicted instance with `n` active features whose minimum flip
// set is a handful of features, mirroring the sparse-text regime.
Case case_of(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::pair<FeatureId, double>> entries;
    std::vector<FeatureId> active;
    for (std::size_t f = 0; f < n; ++f) {
        entries.emplace_back(static_cast<FeatureId>(f), rng.normal(0.1, 0.5));
        active.push_back(static_cast<FeatureId>(f));
    }
    // a few heavyweights carry the prediction
    for (std::size_t f = 0; f < n; f += n / 4 + 1) entries[f].second += 2.0;
    LinearModel model(std::move(entries), -1.0, 0.0, n);
    return {std::move(model), SparseInstance(0, std::move(active))};
}

}  // namespace

static void BM_ExplainLinear(benchmark::State& state) {
    const auto c = case_of(static_cast<std::size_t>(state.range(0)), 11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(explain_linear(c.model, c.instance));
    }
}
BENCHMARK(BM_ExplainLinear)->RangeMultiplier(4)->Range(16, 4096);

static void BM_ExplainGreedy(benchmark::State& state) {
    const auto c = case_of(static_cast<std::size_t>(state.range(0)), 11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(explain_greedy(c.model, c.instance));
    }
}
BENCHMARK(BM_ExplainGreedy)->RangeMultiplier(4)->Range(16, 4096);

static void BM_ExplainComplete(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto c = case_of(n, 11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(explain_complete(c.model, c.instance, n));
    }
}
BENCHMARK(BM_ExplainComplete)->DenseRange(8, 20, 4);

BENCHMARK_MAIN();
