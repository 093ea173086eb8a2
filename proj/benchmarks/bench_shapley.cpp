#include <benchmark/benchmark.h>

#include <vector>

#include "linexplain/random.hpp"
#include "linexplain/shapley.hpp"

using namespace linexplain;

namespace {

// Positive-leaning weights so the grand coalition usually wins and marginal
// swings actually occur at realistic insertion points.
VotingGame game_of(std::size_t num_players, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<FeatureId> players;
    std::vector<double> weights;
    players.reserve(num_players);
    weights.reserve(num_players);
    for (std::size_t i = 0; i < num_players; ++i) {
        players.push_back(static_cast<FeatureId>(i));
        weights.push_back(rng.normal(0.5, 1.0));
    }
    const double q_eff = 0.25 * static_cast<double>(num_players);
    return VotingGame(players, weights, q_eff);
}

}  // namespace

static void BM_ExactShapley(benchmark::State& state) {
    const auto game = game_of(static_cast<std::size_t>(state.range(0)), 1234);
    for (auto _ : state) {
        benchmark::DoNotOptimize(exact_shapley(game));
    }
}
BENCHMARK(BM_ExactShapley)->DenseRange(8, 20, 4);

static void BM_ApproxShapley(benchmark::State& state) {
    const auto game = game_of(40, 99);
    const auto samples = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(approx_shapley(game, samples, 7));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ApproxShapley)->Arg(1'000)->Arg(10'000)->Arg(100'000);

static void BM_ApproxShapleyWidth(benchmark::State& state) {
    const auto game = game_of(static_cast<std::size_t>(state.range(0)), 77);
    for (auto _ : state) {
        benchmark::DoNotOptimize(approx_shapley(game, 10'000, 7));
    }
}
BENCHMARK(BM_ApproxShapleyWidth)->RangeMultiplier(2)->Range(16, 256);

BENCHMARK_MAIN();
