#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "linexplain/errors.hpp"
#include "linexplain/model.hpp"

using namespace linexplain;

namespace {

// weights {0: 2, 1: -1}, intercept 0.5, threshold 0
LinearModel small_model() { return LinearModel({{0, 2.0}, {1, -1.0}}, 0.5, 0.0, 2); }

}  // namespace

TEST_CASE("construction rejects broken weight tables") {
    CHECK_THROWS_AS(LinearModel({{0, 1.0}, {0, 2.0}}, 0.0, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(LinearModel({{5, 1.0}}, 0.0, 0.0, 3), FeatureRangeError);
    CHECK_THROWS_AS(LinearModel({{0, std::nan("")}}, 0.0, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(LinearModel({{0, 1.0}}, HUGE_VAL, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(LinearModel({{0, 1.0}}, 0.0, -HUGE_VAL, 1), std::invalid_argument);
}

TEST_CASE("weights absent from the table count as zero") {
    const LinearModel model({{3, 1.5}}, 0.0, 0.0, 10);
    CHECK(model.weight(3) == 1.5);
    CHECK(model.weight(0) == 0.0);
    CHECK(model.weight(9) == 0.0);
}

TEST_CASE("score is the intercept plus the active weights") {
    const auto model = small_model();
    CHECK(score(model, SparseInstance(0, {0, 1})) == 1.5);
    CHECK(score(model, SparseInstance(1, {1})) == -0.5);
    CHECK(score(model, SparseInstance(2, {})) == 0.5);
}

TEST_CASE("prediction is strict: a score on the threshold is negative") {
    const LinearModel model({{0, 1.0}}, 0.0, 1.0, 1);
    CHECK(predict(model, SparseInstance(0, {0})) == Prediction::negative);

    const LinearModel above({{0, 1.0 + 1e-12}}, 0.0, 1.0, 1);
    CHECK(predict(above, SparseInstance(0, {0})) == Prediction::positive);
}

TEST_CASE("scoring an instance with out-of-vocabulary features fails loudly") {
    const auto model = small_model();
    const SparseInstance instance(0, {0, 7});
    CHECK_THROWS_AS(score(model, instance), FeatureRangeError);
    CHECK_THROWS_AS(predict(model, instance), FeatureRangeError);
}

TEST_CASE("masked scoring equals deleting everything outside the mask") {
    const auto model = small_model();
    const SparseInstance instance(0, {0, 1});

    const FeatureMask none = FeatureMask::of({}, 2);
    CHECK(score(model, instance, none) == 0.5);  // intercept only

    const std::vector<FeatureId> only_negative = {1};
    CHECK(score(model, instance, FeatureMask::of(only_negative, 2)) == -0.5);

    const std::vector<FeatureId> everything = {0, 1};
    CHECK(score(model, instance, FeatureMask::of(everything, 2)) ==
          score(model, instance));
}

TEST_CASE("instances keep active features sorted and unique") {
    const SparseInstance instance(7, {4, 1, 3});
    CHECK(instance.active() == std::vector<FeatureId>{1, 3, 4});
    CHECK(instance.has(3));
    CHECK_FALSE(instance.has(2));
    CHECK_THROWS_AS(SparseInstance(0, {1, 1}), std::invalid_argument);
}

TEST_CASE("instances carry an optional label through untouched") {
    CHECK_FALSE(SparseInstance(0, {1}).label().has_value());
    CHECK(SparseInstance(0, {1}, true).label() == true);
    CHECK(SparseInstance(0, {1}, false).label() == false);
}

TEST_CASE("datasets reject duplicate instance ids and foreign features") {
    std::vector<SparseInstance> duplicate_ids;
    duplicate_ids.emplace_back(3, std::vector<FeatureId>{0});
    duplicate_ids.emplace_back(3, std::vector<FeatureId>{1});
    CHECK_THROWS_AS(SparseDataset(std::move(duplicate_ids), 2), std::invalid_argument);

    std::vector<SparseInstance> out_of_range;
    out_of_range.emplace_back(0, std::vector<FeatureId>{9});
    CHECK_THROWS_AS(SparseDataset(std::move(out_of_range), 2), FeatureRangeError);
}

TEST_CASE("evidence ranks contributions descending with id tiebreaks") {
    const LinearModel model({{0, 1.0}, {1, 3.0}, {2, 1.0}, {3, -2.0}}, 0.0, 0.0, 4);
    const auto ranked = evidence(model, SparseInstance(0, {0, 1, 2, 3}));

    REQUIRE(ranked.size() == 4);
    CHECK(ranked[0] == std::pair<FeatureId, double>{1, 3.0});
    CHECK(ranked[1] == std::pair<FeatureId, double>{0, 1.0});  // ties: lower id first
    CHECK(ranked[2] == std::pair<FeatureId, double>{2, 1.0});
    CHECK(ranked[3] == std::pair<FeatureId, double>{3, -2.0});
}

TEST_CASE("widening the vocabulary changes nothing but the feature count") {
    const auto model = small_model().with_num_features(100);
    CHECK(model.num_features() == 100);
    CHECK(model.weight(0) == 2.0);
    CHECK(model.weight(99) == 0.0);
    CHECK(score(model, SparseInstance(0, {0, 1, 64})) == 1.5);

    const SparseDataset dataset({SparseInstance(0, {1})}, 2);
    CHECK(dataset.with_num_features(50).num_features() == 50);
}
