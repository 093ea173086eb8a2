#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "linexplain/errors.hpp"
#include "linexplain/ranking.hpp"

using namespace linexplain;

namespace {

Explanation make_explanation(std::uint64_t instance_id, std::vector<FeatureId> features) {
    Explanation e;
    e.instance_id = instance_id;
    e.features = std::move(features);
    e.original_class = Prediction::positive;
    e.flipped_class = Prediction::negative;
    return e;
}

AttributionVector make_attribution(std::uint64_t instance_id,
                                   std::vector<std::pair<FeatureId, double>> values) {
    AttributionVector a;
    a.instance_id = instance_id;
    a.values = std::move(values);
    return a;
}

double score_of(const FeatureRanking& ranking, FeatureId f) {
    for (const auto& e : ranking.entries) {
        if (e.feature == f) return e.score;
    }
    FAIL("feature not ranked");
    return 0.0;
}

}  // namespace

TEST_CASE("ec credit is membership count over the grand total") {
    const std::vector<Explanation> explanations = {make_explanation(0, {0, 1}),
                                                   make_explanation(1, {0})};
    const auto ranking = aggregate_ec(explanations, 3);

    REQUIRE(ranking.entries.size() == 2);
    CHECK(ranking.entries[0].feature == 0);
    CHECK(ranking.entries[0].score == doctest::Approx(2.0 / 3.0));
    CHECK(ranking.entries[1].feature == 1);
    CHECK(ranking.entries[1].score == doctest::Approx(1.0 / 3.0));
    CHECK(ranking.raw_total == 3.0);
}

TEST_CASE("inverse-size credit spends one unit per explanation") {
    const std::vector<Explanation> explanations = {make_explanation(0, {0, 1}),
                                                   make_explanation(1, {0})};
    const auto ranking = aggregate_ec(explanations, 3, EcCreditMode::inverse_size);

    // feature 0 earns 1/2 + 1, feature 1 earns 1/2, total 2
    CHECK(score_of(ranking, 0) == doctest::Approx(0.75));
    CHECK(score_of(ranking, 1) == doctest::Approx(0.25));
}

TEST_CASE("no explanations, no ranking") {
    CHECK(aggregate_ec({}, 5).entries.empty());
}

TEST_CASE("ec ties are ordered by feature id") {
    const std::vector<Explanation> explanations = {
        make_explanation(0, {2}), make_explanation(1, {0}), make_explanation(2, {1})};
    const auto ranking = aggregate_ec(explanations, 3);

    REQUIRE(ranking.entries.size() == 3);
    CHECK(ranking.entries[0].feature == 0);
    CHECK(ranking.entries[1].feature == 1);
    CHECK(ranking.entries[2].feature == 2);
    for (const auto& e : ranking.entries) CHECK(e.score == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("ec aggregation is order-invariant") {
    std::vector<Explanation> explanations = {make_explanation(0, {0, 1}),
                                             make_explanation(1, {0}),
                                             make_explanation(2, {1, 2})};
    const auto forward = aggregate_ec(explanations, 4);
    std::reverse(explanations.begin(), explanations.end());
    const auto backward = aggregate_ec(explanations, 4);

    REQUIRE(forward.entries.size() == backward.entries.size());
    for (std::size_t i = 0; i < forward.entries.size(); ++i) {
        CHECK(forward.entries[i].feature == backward.entries[i].feature);
        CHECK(forward.entries[i].score == backward.entries[i].score);
    }
}

TEST_CASE("shapley aggregation normalizes by the signed total") {
    const std::vector<AttributionVector> attributions = {
        make_attribution(0, {{0, 1.0}}), make_attribution(1, {{0, 0.5}, {1, 0.5}})};
    const auto ranking = aggregate_shapley(attributions, 2);

    CHECK(score_of(ranking, 0) == doctest::Approx(0.75));
    CHECK(score_of(ranking, 1) == doctest::Approx(0.25));

    double sum = 0.0;
    for (const auto& e : ranking.entries) sum += e.score;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("an attribution already summing to one is preserved") {
    const std::vector<AttributionVector> attributions = {
        make_attribution(0, {{0, 2.0 / 3.0}, {1, 1.0 / 6.0}, {2, 1.0 / 6.0}})};
    const auto ranking = aggregate_shapley(attributions, 3);

    CHECK(score_of(ranking, 0) == doctest::Approx(2.0 / 3.0));
    CHECK(score_of(ranking, 1) == doctest::Approx(1.0 / 6.0));
    CHECK(score_of(ranking, 2) == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("zero total Shapley mass cannot be normalized") {
    const std::vector<AttributionVector> zero = {make_attribution(0, {{0, 0.0}, {1, 0.0}})};
    CHECK_THROWS_AS(aggregate_shapley(zero, 2), DegenerateNormalizationError);
    CHECK_THROWS_AS(aggregate_shapley({}, 2), DegenerateNormalizationError);
}

TEST_CASE("negative aggregate shapley scores rank last, unclamped") {
    const std::vector<AttributionVector> attributions = {
        make_attribution(0, {{0, 2.0}, {1, -0.5}})};
    const auto ranking = aggregate_shapley(attributions, 2);

    REQUIRE(ranking.entries.size() == 2);
    CHECK(ranking.entries[0].feature == 0);
    CHECK(ranking.entries[1].feature == 1);
    CHECK(ranking.entries[1].score < 0.0);
}

TEST_CASE("beta ranks raw coefficients descending over the whole vocabulary") {
    const LinearModel model({{0, 0.2}, {1, 1.5}, {3, -0.3}}, 0.0, 0.0, 4);
    const auto ranking = rank_by_beta(model);

    REQUIRE(ranking.entries.size() == 4);
    CHECK(ranking.entries[0].feature == 1);   // 1.5
    CHECK(ranking.entries[1].feature == 0);   // 0.2
    CHECK(ranking.entries[2].feature == 2);   // implicit 0
    CHECK(ranking.entries[3].feature == 3);   // -0.3 below zero-weight features
    CHECK(ranking.raw_total == doctest::Approx(1.7));  // sum of positive coefficients
}

TEST_CASE("equal betas fall back to id order") {
    const LinearModel model({{0, 1.0}, {1, 1.0}, {2, 1.0}}, 0.0, 0.0, 3);
    const auto ranking = rank_by_beta(model);
    CHECK(ranking.entries[0].feature == 0);
    CHECK(ranking.entries[1].feature == 1);
    CHECK(ranking.entries[2].feature == 2);
}

TEST_CASE("coverage counts instances and normalizes") {
    const SparseDataset dataset(
        {SparseInstance(0, {0, 1}), SparseInstance(1, {0}), SparseInstance(2, {2})}, 3);
    const auto ranking = rank_by_coverage(dataset);

    REQUIRE(ranking.entries.size() == 3);
    CHECK(ranking.entries[0].feature == 0);
    CHECK(ranking.entries[0].raw == 2.0);
    CHECK(ranking.entries[1].feature == 1);  // ties with 2, id order
    CHECK(ranking.entries[2].feature == 2);
    CHECK(score_of(ranking, 0) == doctest::Approx(0.5));
}

TEST_CASE("empty dataset gives an empty coverage ranking") {
    CHECK(rank_by_coverage(SparseDataset({}, 4)).entries.empty());
}

TEST_CASE("position_of is 1-based with 0 for unranked features") {
    const std::vector<Explanation> explanations = {make_explanation(0, {0, 1}),
                                                   make_explanation(1, {0})};
    const auto ranking = aggregate_ec(explanations, 5);
    CHECK(ranking.position_of(0) == 1);
    CHECK(ranking.position_of(1) == 2);
    CHECK(ranking.position_of(4) == 0);
}

TEST_CASE("top_features pads short rankings in coefficient order") {
    const LinearModel model({{0, 0.1}, {1, 2.0}, {2, 0.5}, {3, -1.0}}, 0.0, 0.0, 5);
    const std::vector<Explanation> explanations = {make_explanation(0, {2})};
    const auto ranking = aggregate_ec(explanations, 5);
    REQUIRE(ranking.entries.size() == 1);

    CHECK(ranking.top_features(1, model) == std::vector<FeatureId>{2});
    // past the entries: unranked features by weight desc, ids break ties
    CHECK(ranking.top_features(3, model) == std::vector<FeatureId>{2, 1, 0});
    CHECK(ranking.top_features(5, model) == std::vector<FeatureId>{2, 1, 0, 4, 3});

    // the full-vocabulary mask is always the identity set
    auto all = ranking.top_features(5, model);
    std::sort(all.begin(), all.end());
    CHECK(all == std::vector<FeatureId>{0, 1, 2, 3, 4});
}

TEST_CASE("out-of-vocabulary results are rejected at aggregation time") {
    const std::vector<Explanation> explanations = {make_explanation(0, {7})};
    CHECK_THROWS_AS(aggregate_ec(explanations, 3), FeatureRangeError);

    const std::vector<AttributionVector> attributions = {make_attribution(0, {{7, 1.0}})};
    CHECK_THROWS_AS(aggregate_shapley(attributions, 3), FeatureRangeError);
}
