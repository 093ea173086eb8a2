#include "linexplain/ranking.hpp"

#include <algorithm>
#include <cmath>

#include "linexplain/errors.hpp"

namespace linexplain {

const char* to_string(RankMethod m) {
    switch (m) {
        case RankMethod::ec: return "ec";
        case RankMethod::shapley: return "shapley";
        case RankMethod::beta: return "beta";
        case RankMethod::coverage: return "coverage";
    }
    return "?";
}

const char* to_string(EcCreditMode m) {
    return m == EcCreditMode::membership ? "membership" : "inverse_size";
}

std::size_t FeatureRanking::position_of(FeatureId f) const {
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].feature == f) return i + 1;
    }
    return 0;
}

std::vector<FeatureId> FeatureRanking::top_features(std::size_t k,
                                                    const LinearModel& model) const {
    std::vector<FeatureId> top;
    top.reserve(k);
    for (const Entry& e : entries) {
        if (top.size() == k) return top;
        top.push_back(e.feature);
    }
    if (top.size() < k) {
        const std::size_t num_features = model.num_features();
        std::vector<bool> ranked(num_features, false);
        for (const Entry& e : entries) ranked[e.feature] = true;
        std::vector<FeatureId> rest;
        rest.reserve(num_features - entries.size());
        for (std::size_t f = 0; f < num_features; ++f) {
            if (!ranked[f]) rest.push_back(static_cast<FeatureId>(f));
        }
        std::stable_sort(rest.begin(), rest.end(), [&](FeatureId a, FeatureId b) {
            return model.weight(a) > model.weight(b);
        });
        for (FeatureId f : rest) {
            if (top.size() == k) break;
            top.push_back(f);
        }
    }
    return top;
}

namespace {

void sort_entries(std::vector<FeatureRanking::Entry>& entries) {
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.feature < b.feature;
    });
}

FeatureRanking from_sums(RankMethod method, const std::vector<double>& sums,
                         const std::vector<bool>& appeared, double total) {
    FeatureRanking ranking;
    ranking.method = method;
    ranking.raw_total = total;
    for (std::size_t f = 0; f < sums.size(); ++f) {
        if (!appeared[f]) continue;
        ranking.entries.push_back(
            {static_cast<FeatureId>(f), sums[f] / total, sums[f]});
    }
    sort_entries(ranking.entries);
    return ranking;
}

}  // namespace

FeatureRanking aggregate_ec(std::span<const Explanation> explanations,
                            std::size_t num_features, EcCreditMode credit) {
    std::vector<double> sums(num_features, 0.0);
    std::vector<bool> appeared(num_features, false);
    double total = 0.0;

    for (const Explanation& e : explanations) {
        if (e.features.empty()) continue;
        const double unit =
            credit == EcCreditMode::membership ? 1.0 : 1.0 / static_cast<double>(e.size());
        for (FeatureId f : e.features) {
            if (static_cast<std::size_t>(f) >= num_features) {
                throw FeatureRangeError("explanation feature " + std::to_string(f) +
                                        " outside vocabulary of " +
                                        std::to_string(num_features) + " features");
            }
            sums[f] += unit;
            appeared[f] = true;
            total += unit;
        }
    }

    if (total == 0.0) {
        FeatureRanking empty;
        empty.method = RankMethod::ec;
        return empty;
    }
    return from_sums(RankMethod::ec, sums, appeared, total);
}

FeatureRanking aggregate_shapley(std::span<const AttributionVector> attributions,
                                 std::size_t num_features) {
    std::vector<double> sums(num_features, 0.0);
    std::vector<bool> appeared(num_features, false);
    bool any = false;

    for (const AttributionVector& a : attributions) {
        for (const auto& [f, phi] : a.values) {
            if (static_cast<std::size_t>(f) >= num_features) {
                throw FeatureRangeError("attributed feature " + std::to_string(f) +
                                        " outside vocabulary of " +
                                        std::to_string(num_features) + " features");
            }
            sums[f] += phi;
            appeared[f] = true;
            any = true;
        }
    }

    double total = 0.0;
    for (std::size_t f = 0; f < num_features; ++f) {
        if (appeared[f]) total += sums[f];
    }
    if (!any || total == 0.0) {
        throw DegenerateNormalizationError(
            "total Shapley mass is zero; the signed-total normalization is undefined");
    }
    return from_sums(RankMethod::shapley, sums, appeared, total);
}

FeatureRanking rank_by_beta(const LinearModel& model) {
    FeatureRanking ranking;
    ranking.method = RankMethod::beta;
    ranking.entries.reserve(model.num_features());
    double positive_total = 0.0;
    for (std::size_t f = 0; f < model.num_features(); ++f) {
        const double w = model.weight(static_cast<FeatureId>(f));
        ranking.entries.push_back({static_cast<FeatureId>(f), w, w});
        if (w > 0.0) positive_total += w;
    }
    ranking.raw_total = positive_total;
    sort_entries(ranking.entries);
    return ranking;
}

FeatureRanking rank_by_coverage(const SparseDataset& dataset) {
    std::vector<double> counts(dataset.num_features(), 0.0);
    std::vector<bool> appeared(dataset.num_features(), false);
    double total = 0.0;
    for (const SparseInstance& inst : dataset.instances()) {
        for (FeatureId f : inst.active()) {
            counts[f] += 1.0;
            appeared[f] = true;
            total += 1.0;
        }
    }
    if (total == 0.0) {
        FeatureRanking empty;
        empty.method = RankMethod::coverage;
        return empty;
    }
    return from_sums(RankMethod::coverage, counts, appeared, total);
}

}  // namespace linexplain
