#include "linexplain/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "linexplain/errors.hpp"
#include "linexplain/parallel.hpp"

namespace linexplain {

std::vector<std::size_t> default_k_grid(std::size_t num_features) {
    std::vector<std::size_t> ks;
    if (num_features == 0) return ks;
    static constexpr std::size_t mantissas[] = {1, 2, 5};
    for (std::size_t decade = 1;; decade *= 10) {
        for (std::size_t m : mantissas) {
            const std::size_t k = m * decade;
            if (k >= num_features) {
                ks.push_back(num_features);
                return ks;
            }
            ks.push_back(k);
        }
        if (decade > num_features) break;  // unreachable, guards overflow
    }
    return ks;
}

ExplanationCurve explanation_curve(const FeatureRanking& ranking, const LinearModel& model,
                                   const SparseDataset& dataset,
                                   std::span<const std::size_t> ks, unsigned parallelism) {
    for (std::size_t i = 1; i < ks.size(); ++i) {
        if (ks[i] <= ks[i - 1]) {
            throw ContractError("explanation_curve: ks must be strictly ascending");
        }
    }
    if (!ks.empty() && ks.back() > model.num_features()) {
        throw ContractError("explanation_curve: k exceeds the model's feature count");
    }

    std::vector<std::size_t> positives;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        if (predict(model, dataset[i]) == Prediction::positive) positives.push_back(i);
    }

    ExplanationCurve curve;
    curve.method = to_string(ranking.method);
    curve.baseline_positive_count = positives.size();
    curve.points.resize(ks.size());

    // Each k is independent and its count is an integer, so parallelising over
    // ks into disjoint slots keeps the result identical for any thread count.
    parallel_for(ks.size(), parallelism, [&](std::size_t i) {
        const std::size_t k = ks[i];
        const auto kept = ranking.top_features(k, model);
        const FeatureMask mask = FeatureMask::of(kept, model.num_features());
        std::size_t explained = 0;
        for (std::size_t idx : positives) {
            if (predict(model, dataset[idx], mask) == Prediction::positive) ++explained;
        }
        curve.points[i] = {k, explained};
    });
    return curve;
}

namespace {

// Average-rank assignment over raw positions; ties (the shared sentinel for
// features absent from the second ranking) get the mean of their rank span.
std::vector<double> tie_averaged_ranks(const std::vector<std::size_t>& raw) {
    const std::size_t n = raw.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return raw[a] < raw[b]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && raw[order[j + 1]] == raw[order[i]]) ++j;
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
        i = j + 1;
    }
    return ranks;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double cov = 0.0, vx = 0.0, vy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        cov += dx * dy;
        vx += dx * dx;
        vy += dy * dy;
    }
    return cov / std::sqrt(vx * vy);
}

}  // namespace

CorrelationReport spearman_topk(const FeatureRanking& r1, const FeatureRanking& r2,
                                std::size_t top_k) {
    if (top_k < 2) throw ContractError("spearman_topk: top_k must be at least 2");

    const std::size_t n_sel = std::min(top_k, r1.entries.size());
    if (n_sel < 2) {
        throw UndefinedCorrelationError(
            "spearman_topk: first ranking has fewer than two entries");
    }

    std::unordered_map<FeatureId, std::size_t> pos2;
    pos2.reserve(r2.entries.size());
    for (std::size_t i = 0; i < r2.entries.size(); ++i) pos2.emplace(r2.entries[i].feature, i + 1);
    const std::size_t sentinel = r2.entries.size() + 1;

    std::vector<double> x(n_sel);
    std::vector<std::size_t> raw_y(n_sel);
    std::size_t overlap = 0;
    for (std::size_t i = 0; i < n_sel; ++i) {
        x[i] = static_cast<double>(i + 1);
        const auto it = pos2.find(r1.entries[i].feature);
        if (it == pos2.end()) {
            raw_y[i] = sentinel;
        } else {
            raw_y[i] = it->second;
            ++overlap;
        }
    }
    if (overlap < 2) {
        throw UndefinedCorrelationError(
            "spearman_topk: fewer than two of the selected features appear in the second "
            "ranking");
    }

    CorrelationReport report;
    report.row_method = to_string(r1.method);
    report.column_method = to_string(r2.method);
    report.top_k = top_k;
    report.rho = pearson(x, tie_averaged_ranks(raw_y));
    return report;
}

CurveReport curve_report(std::span<const ExplanationCurve> curves,
                         const std::string& baseline_method) {
    const ExplanationCurve* baseline = nullptr;
    for (const auto& c : curves) {
        if (c.method == baseline_method) baseline = &c;
    }
    if (baseline == nullptr) {
        throw ContractError("curve_report: no curve for baseline method '" + baseline_method +
                            "'");
    }
    for (const auto& c : curves) {
        if (c.points.size() != baseline->points.size()) {
            throw ContractError("curve_report: curves disagree on the k grid");
        }
        for (std::size_t i = 0; i < c.points.size(); ++i) {
            if (c.points[i].first != baseline->points[i].first) {
                throw ContractError("curve_report: curves disagree on the k grid");
            }
        }
    }

    CurveReport report;
    report.baseline_method = baseline_method;
    report.ks.reserve(baseline->points.size());
    for (const auto& [k, _] : baseline->points) report.ks.push_back(k);

    for (const auto& c : curves) {
        CurveReport::Row row;
        row.method = c.method;
        for (std::size_t i = 0; i < c.points.size(); ++i) {
            const std::size_t explained = c.points[i].second;
            const std::size_t base = baseline->points[i].second;
            row.explained.push_back(explained);
            double ratio;
            if (base == 0) {
                ratio = explained == 0 ? 1.0 : std::numeric_limits<double>::infinity();
            } else {
                ratio = static_cast<double>(explained) / static_cast<double>(base);
            }
            row.ratio_to_baseline.push_back(ratio);
            row.at_least_double.push_back(ratio >= 2.0);
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace linexplain
