#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "linexplain/model.hpp"
#include "linexplain/ranking.hpp"

namespace linexplain {

// How many of the full model's positive instances stay positive when scored
// through only the top-k features of a ranking, for each k.
struct ExplanationCurve {
    std::string method;
    std::vector<std::pair<std::size_t, std::size_t>> points;  // (k, explained)
    std::size_t baseline_positive_count = 0;
};

struct CorrelationReport {
    std::string row_method;     // method whose top-k defines the feature set
    std::string column_method;  // method whose positions are compared against
    std::size_t top_k = 0;
    double rho = 0.0;
};

// Per-k comparison of explanation curves against a baseline curve.
struct CurveReport {
    std::string baseline_method;
    std::vector<std::size_t> ks;

    struct Row {
        std::string method;
        std::vector<std::size_t> explained;
        std::vector<double> ratio_to_baseline;  // +inf when baseline is 0 and method is not
        std::vector<bool> at_least_double;      // ratio >= 2
    };
    std::vector<Row> rows;
};

// Default k grid: 1, 2, 5, 10, 20, 50, ... capped with num_features itself,
// matching a log-scale reading of the curve.
std::vector<std::size_t> default_k_grid(std::size_t num_features);

// ks must be sorted strictly ascending with max <= num_features (0 allowed:
// an empty mask keeps only the intercept). Counting is restricted to
// instances the full model predicts positive.
ExplanationCurve explanation_curve(const FeatureRanking& ranking, const LinearModel& model,
                                   const SparseDataset& dataset,
                                   std::span<const std::size_t> ks,
                                   unsigned parallelism = 0);

// Spearman rank correlation between two rankings, over the top_k features of
// r1. Each feature pairs its position in r1 with its position in r2; features
// missing from r2 share the sentinel position |r2| + 1 and are tie-averaged.
// Asymmetric in (r1, r2) by construction. Throws UndefinedCorrelationError
// when fewer than two of the selected features appear in r2.
CorrelationReport spearman_topk(const FeatureRanking& r1, const FeatureRanking& r2,
                                std::size_t top_k);

// All curves must share the same ks; the baseline method must be present.
CurveReport curve_report(std::span<const ExplanationCurve> curves,
                         const std::string& baseline_method = "beta");

}  // namespace linexplain
