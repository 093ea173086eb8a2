#include "linexplain/ec.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "linexplain/errors.hpp"

namespace linexplain {

const char* to_string(EcSearch s) {
    switch (s) {
        case EcSearch::linear_rank: return "linear_rank";
        case EcSearch::complete: return "complete";
        case EcSearch::greedy: return "greedy";
    }
    return "?";
}

namespace {

Explanation make_explanation(const SparseInstance& instance,
                             std::vector<FeatureId> features, EcSearch method) {
    std::sort(features.begin(), features.end());
    Explanation e;
    e.instance_id = instance.id();
    e.features = std::move(features);
    e.original_class = Prediction::positive;
    e.flipped_class = Prediction::negative;
    e.search_method = method;
    return e;
}

// Number of subset evaluations a complete search would perform, saturating
// at uint64 max.
std::uint64_t planned_evaluations(std::size_t n, std::size_t max_size) {
    const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t total = 0;
    std::uint64_t comb = 1;  // C(n, 0)
    for (std::size_t k = 1; k <= max_size; ++k) {
        // comb = C(n, k-1) -> C(n, k)
        const std::uint64_t numer = n - k + 1;
        if (comb > cap / numer) return cap;
        comb = comb * numer / k;
        if (total > cap - comb) return cap;
        total += comb;
    }
    return total;
}

}  // namespace

std::optional<Explanation> explain_linear(const LinearModel& model,
                                          const SparseInstance& instance) {
    if (predict(model, instance) != Prediction::positive) return std::nullopt;

    const auto ranked = evidence(model, instance);
    double remaining = score(model, instance);
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        remaining -= ranked[i].second;
        if (remaining <= model.threshold()) {
            std::vector<FeatureId> removed;
            removed.reserve(i + 1);
            for (std::size_t j = 0; j <= i; ++j) removed.push_back(ranked[j].first);
            return make_explanation(instance, std::move(removed), EcSearch::linear_rank);
        }
        if (ranked[i].second <= 0.0) break;  // score can only rise from here
    }
    return std::nullopt;
}

std::optional<Explanation> explain_complete(const LinearModel& model,
                                            const SparseInstance& instance,
                                            std::size_t max_size, std::size_t budget) {
    if (predict(model, instance) != Prediction::positive) return std::nullopt;

    const auto& active = instance.active();
    const std::size_t n = active.size();
    if (max_size > n) max_size = n;

    const std::uint64_t planned = planned_evaluations(n, max_size);
    if (planned > budget) {
        throw ResourceError("complete search over " + std::to_string(n) +
                            " features up to size " + std::to_string(max_size) +
                            " needs " + std::to_string(planned) +
                            " subset evaluations, over the budget of " +
                            std::to_string(budget));
    }

    const double full = score(model, instance);
    const double threshold = model.threshold();

    // Sizes ascending; combinations within a size in lexicographic id order.
    std::vector<std::size_t> pick;
    for (std::size_t k = 1; k <= max_size; ++k) {
        pick.resize(k);
        std::iota(pick.begin(), pick.end(), 0);
        for (;;) {
            double removed_sum = 0.0;
            for (std::size_t idx : pick) removed_sum += model.weight(active[idx]);
            if (full - removed_sum <= threshold) {
                std::vector<FeatureId> removed;
                removed.reserve(k);
                for (std::size_t idx : pick) removed.push_back(active[idx]);
                return make_explanation(instance, std::move(removed), EcSearch::complete);
            }
            // advance to the next combination
            std::size_t i = k;
            while (i-- > 0) {
                if (pick[i] != i + n - k) break;
                if (i == 0) goto next_size;
            }
            ++pick[i];
            for (std::size_t j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
        }
    next_size:;
    }
    return std::nullopt;
}

std::optional<Explanation> explain_greedy(const LinearModel& model,
                                          const SparseInstance& instance) {
    if (predict(model, instance) != Prediction::positive) return std::nullopt;

    const double threshold = model.threshold();
    const auto& active = instance.active();

    std::vector<bool> removed(active.size(), false);
    std::vector<std::size_t> removal_order;
    double current = score(model, instance);

    while (current > threshold) {
        // Feature whose removal most decreases the score; ties to lowest id.
        std::size_t best = active.size();
        double best_weight = 0.0;
        for (std::size_t i = 0; i < active.size(); ++i) {
            if (removed[i]) continue;
            const double w = model.weight(active[i]);
            if (best == active.size() || w > best_weight) {
                best = i;
                best_weight = w;
            }
        }
        if (best == active.size()) return std::nullopt;  // nothing left to remove
        if (best_weight <= 0.0) return std::nullopt;     // removals now only raise the score
        removed[best] = true;
        removal_order.push_back(best);
        current -= best_weight;
    }

    // Prune: re-add features that are not needed to keep the class flipped,
    // trying the cheapest (most recently removed) first.
    for (auto it = removal_order.rbegin(); it != removal_order.rend(); ++it) {
        const double w = model.weight(active[*it]);
        if (current + w <= threshold) {
            removed[*it] = false;
            current += w;
        }
    }

    std::vector<FeatureId> features;
    for (std::size_t i = 0; i < active.size(); ++i) {
        if (removed[i]) features.push_back(active[i]);
    }
    return make_explanation(instance, std::move(features), EcSearch::greedy);
}

}  // namespace linexplain
