#include "linexplain/batch.hpp"

#include <optional>

#include "linexplain/parallel.hpp"
#include "linexplain/random.hpp"

namespace linexplain {

namespace {

std::vector<std::size_t> positive_indices(const LinearModel& model,
                                          const SparseDataset& dataset) {
    std::vector<std::size_t> positives;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        if (predict(model, dataset[i]) == Prediction::positive) positives.push_back(i);
    }
    return positives;
}

}  // namespace

std::vector<Explanation> explain_dataset(const LinearModel& model, const SparseDataset& dataset,
                                         const BatchOptions& options) {
    const auto positives = positive_indices(model, dataset);

    // One slot per positive keeps writes disjoint across threads; the compact
    // pass below preserves dataset order.
    std::vector<std::optional<Explanation>> slots(positives.size());
    parallel_for(positives.size(), options.parallelism, [&](std::size_t i) {
        const SparseInstance& instance = dataset[positives[i]];
        switch (options.search) {
            case EcSearch::linear_rank:
                slots[i] = explain_linear(model, instance);
                break;
            case EcSearch::complete: {
                const std::size_t cap = options.complete_max_size == 0
                                            ? instance.active().size()
                                            : options.complete_max_size;
                slots[i] = explain_complete(model, instance, cap, options.complete_budget);
                break;
            }
            case EcSearch::greedy:
                slots[i] = explain_greedy(model, instance);
                break;
        }
    });

    std::vector<Explanation> explanations;
    explanations.reserve(positives.size());
    for (auto& slot : slots) {
        if (slot.has_value()) explanations.push_back(std::move(*slot));
    }
    return explanations;
}

std::vector<AttributionVector> attribute_dataset(const LinearModel& model,
                                                 const SparseDataset& dataset,
                                                 const BatchOptions& options) {
    const auto positives = positive_indices(model, dataset);

    std::vector<AttributionVector> results(positives.size());
    parallel_for(positives.size(), options.parallelism, [&](std::size_t i) {
        const SparseInstance& instance = dataset[positives[i]];
        const VotingGame game = build_game(model, instance);
        AttributionVector attribution;
        if (game.num_players() <= options.exact_limit) {
            attribution = exact_shapley(game, options.exact_limit);
        } else {
            attribution = approx_shapley(game, options.samples,
                                         derive_instance_seed(options.seed, instance.id()));
        }
        attribution.instance_id = instance.id();
        results[i] = std::move(attribution);
    });
    return results;
}

}  // namespace linexplain
