#pragma once

// Reference implementations for cross-checking the library, written the slow
// and obvious way on purpose: subset enumeration instead of prefix tricks,
// full n! permutation averages instead of the subset-sum formula. Nothing in
// here shares code with the implementations under test.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "linexplain/model.hpp"

namespace linexplain::testing {

// Score after deleting `removed` from the instance, by brute membership test.
inline double oracle_score(const LinearModel& model, const SparseInstance& instance,
                           const std::vector<FeatureId>& removed) {
    double s = model.intercept();
    for (FeatureId f : instance.active()) {
        if (std::find(removed.begin(), removed.end(), f) == removed.end()) {
            s += model.weight(f);
        }
    }
    return s;
}

struct MinFlipResult {
    std::size_t size = 0;                      // minimum flipping removal size
    std::vector<std::vector<FeatureId>> sets;  // every flipping set of that size
};

// Exhaustive minimum-size flip search over all 2^n - 1 removal subsets.
// Requires a positively predicted instance with at most ~20 active features.
inline std::optional<MinFlipResult> oracle_min_flip(const LinearModel& model,
                                                    const SparseInstance& instance) {
    const auto& active = instance.active();
    const auto n = static_cast<std::uint32_t>(active.size());

    MinFlipResult best;
    best.size = n + 1;
    for (std::uint32_t bits = 1; bits < (1u << n); ++bits) {
        const auto size = static_cast<std::size_t>(std::popcount(bits));
        if (size > best.size) continue;
        std::vector<FeatureId> removed;
        for (std::uint32_t i = 0; i < n; ++i) {
            if (bits & (1u << i)) removed.push_back(active[i]);
        }
        if (oracle_score(model, instance, removed) <= model.threshold()) {
            if (size < best.size) {
                best.size = size;
                best.sets.clear();
            }
            best.sets.push_back(std::move(removed));
        }
    }
    if (best.sets.empty()) return std::nullopt;
    return best;
}

struct PermutationShapley {
    std::vector<double> phi;
    std::vector<std::int64_t> swing_totals;  // summed marginals per player
    std::uint64_t permutations = 0;
};

// Shapley values by enumerating every ordering of the players (n <= 8 or so)
// and averaging each player's win-indicator change at its insertion point.
inline PermutationShapley oracle_shapley(const std::vector<double>& weights,
                                         double effective_threshold) {
    const std::size_t n = weights.size();
    PermutationShapley result;
    result.swing_totals.assign(n, 0);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    do {
        double sum = 0.0;
        int value = sum > effective_threshold ? 1 : 0;
        for (std::size_t player : order) {
            sum += weights[player];
            const int next = sum > effective_threshold ? 1 : 0;
            result.swing_totals[player] += next - value;
            value = next;
        }
        ++result.permutations;
    } while (std::next_permutation(order.begin(), order.end()));

    result.phi.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        result.phi[i] = static_cast<double>(result.swing_totals[i]) /
                        static_cast<double>(result.permutations);
    }
    return result;
}

}  // namespace linexplain::testing
