#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "linexplain/model.hpp"

namespace linexplain {

// Synthetic corpus with the shape that makes sparse text classifiers
// interesting to explain: feature coverage follows a power law, a small
// informative subset carries the signal, and part of that subset is
// deliberately low-coverage/high-weight so that coefficient size and actual
// usage disagree.
//
// Informative weights land on a 0.25 lattice and the intercept sits at an
// x.125 offset, so every instance's informative score keeps a 0.125 margin
// from the threshold. Noise weights are orders of magnitude below that
// margin, which keeps predictions (and masked predictions) decided by the
// informative features alone rather than by accumulated float dust.
struct SynthConfig {
    std::size_t num_instances = 10'000;
    std::size_t num_features = 5'000;
    std::uint64_t seed = 42;

    double coverage_exponent = 1.0;    // power-law decay of feature coverage; 0 = uniform
    double mean_active = 40.0;         // target mean active features per instance
    double max_coverage = 0.5;         // cap on any single feature's coverage
    double informative_fraction = 0.1; // share of features given lattice weights
    double anti_fraction = 0.3;        // share of informative features boosted by rarity
    double boost_exponent = 0.7;       // rarity boost (max_coverage / p_j)^exponent
    double positive_sign_fraction = 0.85;
    double noise_weight_scale = 0.001; // uniform noise weights in [-scale, scale]
    double weight_cap = 2.0;           // keep below threshold - intercept, or single
                                       // features decide predictions on their own
    double intercept = -2.125;

    // Throws std::invalid_argument describing the first offending field.
    void validate() const;
};

struct SynthData {
    LinearModel model;
    SparseDataset dataset;               // labels are the model's own predictions
    std::vector<FeatureId> informative;  // sorted ids of the lattice-weight features
};

// Deterministic for a given config; instance contents depend only on
// (seed, instance id), so growing num_instances extends the corpus without
// reshuffling existing rows.
SynthData generate_synthetic(const SynthConfig& config);

}  // namespace linexplain
