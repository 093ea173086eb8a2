#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "linexplain/ec.hpp"
#include "linexplain/model.hpp"
#include "linexplain/shapley.hpp"

namespace linexplain {

struct BatchOptions {
    EcSearch search = EcSearch::linear_rank;
    std::size_t complete_max_size = 0;  // 0 = no cap (matched to the active count)
    std::size_t complete_budget = kDefaultSearchBudget;

    std::size_t samples = kDefaultSampleCount;  // Monte Carlo permutations
    std::size_t exact_limit = kDefaultExactLimit;

    std::uint64_t seed = 42;
    unsigned parallelism = 0;  // 0 = hardware concurrency
};

// Counterfactual explanations for every instance the model predicts positive,
// in dataset order. Positives the chosen search cannot flip (e.g. no positive
// evidence while the intercept alone clears the threshold) are skipped.
// Deterministic for a given dataset regardless of parallelism.
std::vector<Explanation> explain_dataset(const LinearModel& model,
                                         const SparseDataset& dataset,
                                         const BatchOptions& options = {});

// Shapley attributions for every positively predicted instance, in dataset
// order. Games up to exact_limit players are solved exactly; larger ones fall
// back to Monte Carlo with a per-instance seed derived from options.seed, so
// results do not depend on processing order or thread count.
std::vector<AttributionVector> attribute_dataset(const LinearModel& model,
                                                 const SparseDataset& dataset,
                                                 const BatchOptions& options = {});

}  // namespace linexplain
