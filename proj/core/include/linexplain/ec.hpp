#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "linexplain/model.hpp"

namespace linexplain {

enum class EcSearch { linear_rank, complete, greedy };

const char* to_string(EcSearch s);

// A minimal set of an instance's features whose joint removal flips the
// predicted class: removing all of E flips it, removing any proper subset
// does not. Only positive predictions are explained.
struct Explanation {
    std::uint64_t instance_id = 0;
    std::vector<FeatureId> features;  // the set E, sorted ascending
    Prediction original_class = Prediction::positive;
    Prediction flipped_class = Prediction::negative;
    EcSearch search_method = EcSearch::linear_rank;

    std::size_t size() const { return features.size(); }
};

inline constexpr std::size_t kDefaultSearchBudget = 10'000'000;

// Fast path for linear models: removing evidence in descending-contribution
// order yields a flipping set of minimum size. Returns nullopt when the
// instance is not predicted positive or no removal can flip it.
std::optional<Explanation> explain_linear(const LinearModel& model,
                                          const SparseInstance& instance);

// Exhaustive search over removal subsets of size 1, 2, ... max_size, in
// lexicographic feature-id order within each size. The first flipping subset
// found is minimal because all smaller sizes were exhausted. Throws
// ResourceError before starting if the enumeration would exceed `budget`
// subset evaluations.
std::optional<Explanation> explain_complete(const LinearModel& model,
                                            const SparseInstance& instance,
                                            std::size_t max_size,
                                            std::size_t budget = kDefaultSearchBudget);

// Iteratively removes the feature whose removal moves the score furthest
// toward the threshold, then prunes: any removed feature whose re-addition
// keeps the class flipped is put back. The pruning pass enforces minimality.
std::optional<Explanation> explain_greedy(const LinearModel& model,
                                          const SparseInstance& instance);

}  // namespace linexplain
