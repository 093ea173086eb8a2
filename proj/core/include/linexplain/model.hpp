#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace linexplain {

// Index into the global feature vocabulary. Features are binary: an instance
// either has a feature (value 1) or it does not appear at all.
using FeatureId = std::uint32_t;

enum class Prediction { negative, positive };

inline const char* to_string(Prediction p) {
    return p == Prediction::positive ? "positive" : "negative";
}

// Subset of the vocabulary, used to score an instance as if every feature
// outside the mask had been removed.
class FeatureMask {
public:
    explicit FeatureMask(std::size_t num_features) : included_(num_features, false) {}

    static FeatureMask of(std::span<const FeatureId> features, std::size_t num_features);

    void add(FeatureId f) { included_.at(f) = true; }
    bool contains(FeatureId f) const {
        return f < included_.size() && included_[f];
    }
    std::size_t num_features() const { return included_.size(); }

private:
    std::vector<bool> included_;
};

// A fixed linear classifier over binary features: score(x) = intercept +
// sum of weights over the instance's active features, positive iff the score
// strictly exceeds the threshold. Weights absent from the map count as zero.
class LinearModel {
public:
    LinearModel() = default;

    // entries need not be sorted; duplicate ids are rejected. num_features may
    // exceed the largest weight id (vocabulary larger than the support).
    LinearModel(std::vector<std::pair<FeatureId, double>> entries, double intercept,
                double threshold, std::size_t num_features);

    double weight(FeatureId f) const { return f < dense_.size() ? dense_[f] : 0.0; }
    double intercept() const { return intercept_; }
    double threshold() const { return threshold_; }
    std::size_t num_features() const { return num_features_; }

    // Explicit weight entries, sorted by id. Preserved as given (including
    // explicit zeros) so serialization reproduces the source model.
    const std::vector<std::pair<FeatureId, double>>& entries() const { return entries_; }

    // Same weights and intercept over a wider vocabulary.
    LinearModel with_num_features(std::size_t num_features) const;

private:
    std::vector<std::pair<FeatureId, double>> entries_;
    std::vector<double> dense_;  // id -> weight, zero-filled
    double intercept_ = 0.0;
    double threshold_ = 0.0;
    std::size_t num_features_ = 0;
};

// One data row: the sorted set of features the instance exhibits, plus an
// optional ground-truth label. Labels are carried through I/O but never
// consulted by the explanation machinery.
class SparseInstance {
public:
    SparseInstance() = default;
    SparseInstance(std::uint64_t id, std::vector<FeatureId> active,
                   std::optional<bool> label = std::nullopt);

    std::uint64_t id() const { return id_; }
    const std::vector<FeatureId>& active() const { return active_; }
    std::optional<bool> label() const { return label_; }
    bool has(FeatureId f) const;

private:
    std::uint64_t id_ = 0;
    std::vector<FeatureId> active_;  // sorted ascending, unique
    std::optional<bool> label_;
};

class SparseDataset {
public:
    SparseDataset() = default;
    SparseDataset(std::vector<SparseInstance> instances, std::size_t num_features);

    const std::vector<SparseInstance>& instances() const { return instances_; }
    std::size_t size() const { return instances_.size(); }
    std::size_t num_features() const { return num_features_; }
    const SparseInstance& operator[](std::size_t i) const { return instances_[i]; }

    // Same instances over a wider vocabulary.
    SparseDataset with_num_features(std::size_t num_features) const;

private:
    std::vector<SparseInstance> instances_;
    std::size_t num_features_ = 0;
};

// Linear score of an instance; the masked overloads score the instance as if
// the features outside the mask were removed (identical to deleting them).
// Throws FeatureRangeError if an active feature falls outside the model.
double score(const LinearModel& model, const SparseInstance& instance);
double score(const LinearModel& model, const SparseInstance& instance,
             const FeatureMask& mask);

Prediction predict(const LinearModel& model, const SparseInstance& instance);
Prediction predict(const LinearModel& model, const SparseInstance& instance,
                   const FeatureMask& mask);

// Active features paired with their score contribution, sorted by
// contribution descending; ties broken by ascending feature id.
std::vector<std::pair<FeatureId, double>> evidence(const LinearModel& model,
                                                   const SparseInstance& instance);

}  // namespace linexplain
