#pragma once

#include <span>
#include <string>
#include <vector>

#include "linexplain/ec.hpp"
#include "linexplain/model.hpp"
#include "linexplain/shapley.hpp"

namespace linexplain {

enum class RankMethod { ec, shapley, beta, coverage };

const char* to_string(RankMethod m);

// How much credit each feature earns from one explanation: a flat 1 per
// membership, or 1/|E| so every explanation distributes one unit in total.
enum class EcCreditMode { membership, inverse_size };

const char* to_string(EcCreditMode m);

// Global ordering of features by explanatory importance. Scores of the
// ec/shapley/coverage methods are normalized to sum to one; the beta method
// keeps raw model coefficients as scores (coefficients can be negative, so a
// sum-to-one normalization is not meaningful there).
struct FeatureRanking {
    struct Entry {
        FeatureId feature = 0;
        double score = 0.0;  // the ranking score (normalized, or raw beta)
        double raw = 0.0;    // unnormalized aggregate (beta: the coefficient)
    };

    RankMethod method = RankMethod::ec;
    std::vector<Entry> entries;  // sorted by score descending, ties by id ascending
    double raw_total = 0.0;      // normalization denominator (beta: sum of positive coefficients)

    // 1-based position of a feature, or 0 if the feature has no entry.
    std::size_t position_of(FeatureId f) const;

    // First k features by rank. Usage-based rankings only order features they
    // have evidence about; when k exceeds the entry list, the rest of the
    // vocabulary falls back to the model's own coefficient order (descending
    // weight, ties by ascending id), so k = num_features always selects every
    // feature and a short ranking is never padded with arbitrary ids.
    std::vector<FeatureId> top_features(std::size_t k, const LinearModel& model) const;
};

// Sums membership credit over explanations and normalizes by the grand total.
// Features that never appear are omitted. An empty explanation list yields an
// empty ranking.
FeatureRanking aggregate_ec(std::span<const Explanation> explanations,
                            std::size_t num_features,
                            EcCreditMode credit = EcCreditMode::membership);

// Sums per-instance Shapley values per feature and normalizes by the signed
// grand total. Throws DegenerateNormalizationError when the total is zero.
FeatureRanking aggregate_shapley(std::span<const AttributionVector> attributions,
                                 std::size_t num_features);

// Every feature in the vocabulary ordered by raw coefficient, descending.
FeatureRanking rank_by_beta(const LinearModel& model);

// Features ordered by the number of instances that exhibit them, normalized
// by the total count. Features appearing nowhere are omitted.
FeatureRanking rank_by_coverage(const SparseDataset& dataset);

}  // namespace linexplain
