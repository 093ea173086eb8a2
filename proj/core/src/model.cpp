#include "linexplain/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "linexplain/errors.hpp"

namespace linexplain {

FeatureMask FeatureMask::of(std::span<const FeatureId> features, std::size_t num_features) {
    FeatureMask mask(num_features);
    for (FeatureId f : features) mask.add(f);
    return mask;
}

LinearModel::LinearModel(std::vector<std::pair<FeatureId, double>> entries,
                         double intercept, double threshold, std::size_t num_features)
    : entries_(std::move(entries)),
      intercept_(intercept),
      threshold_(threshold),
      num_features_(num_features) {
    if (!std::isfinite(intercept_)) throw std::invalid_argument("intercept must be finite");
    if (!std::isfinite(threshold_)) throw std::invalid_argument("threshold must be finite");

    std::sort(entries_.begin(), entries_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i + 1 < entries_.size(); ++i) {
        if (entries_[i].first == entries_[i + 1].first) {
            throw std::invalid_argument("duplicate weight for feature " +
                                        std::to_string(entries_[i].first));
        }
    }
    if (!entries_.empty()) {
        const FeatureId max_id = entries_.back().first;
        if (static_cast<std::size_t>(max_id) >= num_features_) {
            throw FeatureRangeError("weight id " + std::to_string(max_id) +
                                    " outside vocabulary of " +
                                    std::to_string(num_features_) + " features");
        }
    }
    for (const auto& [id, w] : entries_) {
        if (!std::isfinite(w)) {
            throw std::invalid_argument("non-finite weight for feature " + std::to_string(id));
        }
    }

    dense_.assign(num_features_, 0.0);
    for (const auto& [id, w] : entries_) dense_[id] = w;
}

LinearModel LinearModel::with_num_features(std::size_t num_features) const {
    return LinearModel(entries_, intercept_, threshold_, num_features);
}

SparseDataset SparseDataset::with_num_features(std::size_t num_features) const {
    return SparseDataset(instances_, num_features);
}

SparseInstance::SparseInstance(std::uint64_t id, std::vector<FeatureId> active,
                               std::optional<bool> label)
    : id_(id), active_(std::move(active)), label_(label) {
    std::sort(active_.begin(), active_.end());
    if (std::adjacent_find(active_.begin(), active_.end()) != active_.end()) {
        throw std::invalid_argument("instance " + std::to_string(id_) +
                                    " has duplicate active features");
    }
}

bool SparseInstance::has(FeatureId f) const {
    return std::binary_search(active_.begin(), active_.end(), f);
}

SparseDataset::SparseDataset(std::vector<SparseInstance> instances, std::size_t num_features)
    : instances_(std::move(instances)), num_features_(num_features) {
    std::vector<std::uint64_t> ids;
    ids.reserve(instances_.size());
    for (const auto& inst : instances_) {
        ids.push_back(inst.id());
        if (!inst.active().empty() &&
            static_cast<std::size_t>(inst.active().back()) >= num_features_) {
            throw FeatureRangeError("instance " + std::to_string(inst.id()) +
                                    " has feature " + std::to_string(inst.active().back()) +
                                    " outside vocabulary of " + std::to_string(num_features_));
        }
    }
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
        throw std::invalid_argument("dataset has duplicate instance ids");
    }
}

namespace {

void check_range(const LinearModel& model, const SparseInstance& instance) {
    if (!instance.active().empty() &&
        static_cast<std::size_t>(instance.active().back()) >= model.num_features()) {
        throw FeatureRangeError("instance " + std::to_string(instance.id()) +
                                " has feature " + std::to_string(instance.active().back()) +
                                " outside model vocabulary of " +
                                std::to_string(model.num_features()) + " features");
    }
}

}  // namespace

double score(const LinearModel& model, const SparseInstance& instance) {
    check_range(model, instance);
    double total = model.intercept();
    for (FeatureId f : instance.active()) total += model.weight(f);
    return total;
}

double score(const LinearModel& model, const SparseInstance& instance,
             const FeatureMask& mask) {
    check_range(model, instance);
    double total = model.intercept();
    for (FeatureId f : instance.active()) {
        if (mask.contains(f)) total += model.weight(f);
    }
    return total;
}

Prediction predict(const LinearModel& model, const SparseInstance& instance) {
    return score(model, instance) > model.threshold() ? Prediction::positive
                                                      : Prediction::negative;
}

Prediction predict(const LinearModel& model, const SparseInstance& instance,
                   const FeatureMask& mask) {
    return score(model, instance, mask) > model.threshold() ? Prediction::positive
                                                            : Prediction::negative;
}

std::vector<std::pair<FeatureId, double>> evidence(const LinearModel& model,
                                                   const SparseInstance& instance) {
    check_range(model, instance);
    std::vector<std::pair<FeatureId, double>> products;
    products.reserve(instance.active().size());
    for (FeatureId f : instance.active()) products.emplace_back(f, model.weight(f));
    std::stable_sort(products.begin(), products.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return products;
}

}  // namespace linexplain
