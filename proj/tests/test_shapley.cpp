#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numeric>
#include <string>

#include "doctest.h"
#include "linexplain/errors.hpp"
#include "linexplain/random.hpp"
#include "linexplain/shapley.hpp"
#include "oracles.hpp"

using namespace linexplain;
using linexplain::testing::oracle_shapley;

namespace {

VotingGame make_game(const std::vector<double>& weights, double effective_threshold) {
    std::vector<FeatureId> players(weights.size());
    std::iota(players.begin(), players.end(), 0);
    return VotingGame(std::move(players), weights, effective_threshold);
}

double phi_of(const AttributionVector& attribution, FeatureId player) {
    for (const auto& [f, phi] : attribution.values) {
        if (f == player) return phi;
    }
    FAIL("player not attributed");
    return 0.0;
}

}  // namespace

TEST_CASE("build_game folds the intercept into the threshold") {
    const LinearModel model({{0, 2.0}, {1, 1.0}}, 0.2, 0.5, 2);
    const auto game = build_game(model, SparseInstance(0, {0, 1}));

    CHECK(game.players() == std::vector<FeatureId>{0, 1});
    CHECK(game.effective_threshold() == doctest::Approx(0.3));
    CHECK(game.value_of_all() == 1);  // 3 > 0.3, matching the positive prediction
}

TEST_CASE("an empty instance gives the empty game, valued by the intercept") {
    const LinearModel winning({{0, 1.0}}, 2.0, 0.5, 1);
    CHECK(build_game(winning, SparseInstance(0, {})).value_of_empty() == 1);

    const LinearModel losing({{0, 1.0}}, 0.0, 0.5, 1);
    CHECK(build_game(losing, SparseInstance(0, {})).value_of_empty() == 0);
}

TEST_CASE("active features missing from the weight table play with weight 0") {
    const LinearModel model({{0, 2.0}}, 0.0, 0.5, 5);
    const auto game = build_game(model, SparseInstance(0, {0, 3}));
    CHECK(game.weight_of(3) == 0.0);
    CHECK_THROWS_AS(game.weight_of(1), ContractError);
}

TEST_CASE("marginal utility is the win-indicator difference") {
    const auto game = make_game({3.0, 1.0, -2.0}, 2.0);

    CHECK(marginal_utility(game, Coalition::of(game, {}), 0) == 1);    // 0 -> 3 crosses
    CHECK(marginal_utility(game, Coalition::of(game, {0}), 1) == 0);   // already above
    CHECK(marginal_utility(game, Coalition::of(game, {0}), 2) == -1);  // 3 -> 1 drops
    CHECK_THROWS_AS(marginal_utility(game, Coalition::of(game, {0}), 0), ContractError);
}

TEST_CASE("the {2,1,1} vs 2.5 game attributes (2/3, 1/6, 1/6)") {
    const auto attribution = exact_shapley(make_game({2.0, 1.0, 1.0}, 2.5));

    CHECK(phi_of(attribution, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(phi_of(attribution, 1) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(phi_of(attribution, 2) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(attribution.method == AttributionMethod::exact);
    CHECK(attribution.samples == 0);
}

TEST_CASE("single winning player takes everything") {
    const auto attribution = exact_shapley(make_game({1.0}, 0.5));
    CHECK(phi_of(attribution, 0) == 1.0);
}

TEST_CASE("a weight-0 player is a dummy") {
    const auto attribution = exact_shapley(make_game({3.0, 0.0}, 2.0));
    CHECK(phi_of(attribution, 0) == 1.0);
    CHECK(phi_of(attribution, 1) == 0.0);
}

TEST_CASE("equal-weight players get exactly equal values") {
    const auto attribution = exact_shapley(make_game({1.5, -1.0, 1.5, 2.0}, 2.25));
    CHECK(phi_of(attribution, 0) == phi_of(attribution, 2));
}

TEST_CASE("scaling weights and threshold together changes nothing") {
    const std::vector<double> weights = {2.0, 1.0, -0.5, 1.25};
    const auto base = exact_shapley(make_game(weights, 1.5));

    for (const double c : {2.0, 0.5, 4.0}) {
        std::vector<double> scaled = weights;
        for (auto& w : scaled) w *= c;
        const auto attribution = exact_shapley(make_game(scaled, 1.5 * c));
        for (std::size_t i = 0; i < weights.size(); ++i) {
            CHECK(attribution.values[i].second == base.values[i].second);
        }
    }
}

TEST_CASE("exact solver matches full permutation enumeration on random games") {
    Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.uniform_index(8);
        std::vector<double> weights(n);
        for (auto& w : weights) w = rng.normal(0.3, 1.2);
        const double q_eff = rng.normal(0.0, 1.0);

        const auto game = make_game(weights, q_eff);
        const auto attribution = exact_shapley(game);
        const auto reference = oracle_shapley(weights, q_eff);

        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(attribution.values[i].second - reference.phi[i]) <= 1e-9);
            sum += attribution.values[i].second;
        }
        // efficiency: values sum to v(N) - v(empty)
        const double span = game.value_of_all() - game.value_of_empty();
        CHECK(std::abs(sum - span) <= 1e-9);
    }
}

TEST_CASE("exact enumeration refuses oversized games") {
    std::vector<double> weights(21, 1.0);
    try {
        exact_shapley(make_game(weights, 10.0));
        FAIL("expected ResourceError");
    } catch (const ResourceError& e) {
        CHECK(std::string(e.what()).find("approx_shapley") != std::string::npos);
    }
    CHECK_NOTHROW(exact_shapley(make_game(weights, 10.0), 21));
}

TEST_CASE("sampling is deterministic in the seed") {
    const auto game = make_game({2.0, 1.0, 1.0, -0.5}, 2.5);
    const auto a = approx_shapley(game, 500, 11);
    const auto b = approx_shapley(game, 500, 11);
    const auto c = approx_shapley(game, 500, 12);

    CHECK(a.values == b.values);
    CHECK(a.values != c.values);
    CHECK(a.method == AttributionMethod::monte_carlo);
    CHECK(a.samples == 500);
    CHECK(a.seed == 11);
}

TEST_CASE("sampling rejects zero samples") {
    CHECK_THROWS_AS(approx_shapley(make_game({1.0}, 0.5), 0, 1), ContractError);
}

TEST_CASE("a single-player game needs only one permutation") {
    const auto attribution = approx_shapley(make_game({1.0}, 0.5), 17, 3);
    CHECK(phi_of(attribution, 0) == 1.0);
}

TEST_CASE("20k samples land within 0.02 of the exact values") {
    const auto game = make_game({2.0, 1.0, 1.0}, 2.5);
    const auto estimate = approx_shapley(game, 20'000, 7);
    const auto exact = exact_shapley(game);

    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::abs(estimate.values[i].second - exact.values[i].second) <= 0.02);
    }
}

TEST_CASE("sampled marginals telescope: efficiency holds exactly in integers") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + rng.uniform_index(12);
        std::vector<double> weights(n);
        for (auto& w : weights) w = rng.normal(0.3, 1.0);
        const auto game = make_game(weights, rng.normal(0.0, 1.0));

        const std::size_t samples = 100 + rng.uniform_index(400);
        const auto attribution = approx_shapley(game, samples, rng.next_u64());

        const std::int64_t span = game.value_of_all() - game.value_of_empty();
        const std::int64_t swing_sum = std::accumulate(
            attribution.swing_totals.begin(), attribution.swing_totals.end(),
            std::int64_t{0});
        CHECK(swing_sum == static_cast<std::int64_t>(samples) * span);
        CHECK(std::abs(attribution.total() - static_cast<double>(span)) <= 1e-12);
    }
}
