#include "linexplain/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "linexplain/random.hpp"

namespace linexplain {

void SynthConfig::validate() const {
    if (num_instances == 0) throw std::invalid_argument("num_instances must be positive");
    if (num_features == 0) throw std::invalid_argument("num_features must be positive");
    if (!(coverage_exponent >= 0.0)) {
        throw std::invalid_argument("coverage_exponent must be non-negative");
    }
    if (!(mean_active > 0.0)) throw std::invalid_argument("mean_active must be positive");
    if (!(max_coverage > 0.0) || max_coverage > 1.0) {
        throw std::invalid_argument("max_coverage must lie in (0, 1]");
    }
    if (!(informative_fraction > 0.0) || informative_fraction > 1.0) {
        throw std::invalid_argument("informative_fraction must lie in (0, 1]");
    }
    if (!(anti_fraction >= 0.0) || anti_fraction > 1.0) {
        throw std::invalid_argument("anti_fraction must lie in [0, 1]");
    }
    if (!(boost_exponent >= 0.0)) throw std::invalid_argument("boost_exponent must be non-negative");
    if (!(positive_sign_fraction >= 0.0) || positive_sign_fraction > 1.0) {
        throw std::invalid_argument("positive_sign_fraction must lie in [0, 1]");
    }
    if (!(noise_weight_scale >= 0.0)) {
        throw std::invalid_argument("noise_weight_scale must be non-negative");
    }
    if (!(weight_cap >= 0.25)) throw std::invalid_argument("weight_cap must be at least 0.25");
    if (!std::isfinite(intercept)) throw std::invalid_argument("intercept must be finite");
}

namespace {

// Nearest multiple of 0.25, floored at 0.25 and capped; quarters are exact in
// binary, which is what keeps instance scores on the lattice.
double quantize_magnitude(double magnitude, double cap) {
    const double q = std::round(magnitude * 4.0) / 4.0;
    return std::clamp(q, 0.25, cap);
}

}  // namespace

SynthData generate_synthetic(const SynthConfig& config) {
    config.validate();
    const std::size_t m = config.num_features;

    // Power-law coverage, capped and scaled so the uncapped sum would equal
    // mean_active. Coverage is monotone decreasing in feature id.
    std::vector<double> coverage(m);
    double z_sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        coverage[j] = std::pow(static_cast<double>(j + 1), -config.coverage_exponent);
        z_sum += coverage[j];
    }
    for (std::size_t j = 0; j < m; ++j) {
        coverage[j] = std::min(config.max_coverage, config.mean_active * coverage[j] / z_sum);
    }

    Rng rng(config.seed);

    // One informative feature per stratum of the id range, jittered within the
    // stratum, so the informative set spans the whole coverage spectrum.
    std::size_t n_inf = static_cast<std::size_t>(
        std::lround(config.informative_fraction * static_cast<double>(m)));
    n_inf = std::clamp<std::size_t>(n_inf, 1, m);
    std::vector<FeatureId> informative;
    informative.reserve(n_inf);
    const double stride = static_cast<double>(m) / static_cast<double>(n_inf);
    for (std::size_t i = 0; i < n_inf; ++i) {
        const auto lo = static_cast<std::size_t>(static_cast<double>(i) * stride);
        auto hi = static_cast<std::size_t>(static_cast<double>(i + 1) * stride);
        hi = std::min(hi, m);
        informative.push_back(static_cast<FeatureId>(lo + rng.uniform_index(hi - lo)));
    }

    // The lowest-coverage tail of the informative set gets a rarity boost:
    // these become the high-weight/seldom-used features that make coefficient
    // size a poor proxy for how often a feature actually carries a prediction.
    std::size_t n_anti = static_cast<std::size_t>(
        std::lround(config.anti_fraction * static_cast<double>(n_inf)));
    n_anti = std::min(n_anti, n_inf);
    const std::size_t anti_begin = n_inf - n_anti;

    std::vector<bool> is_informative(m, false);
    std::vector<bool> is_boosted(m, false);
    for (std::size_t i = 0; i < n_inf; ++i) {
        is_informative[informative[i]] = true;
        if (i >= anti_begin) is_boosted[informative[i]] = true;
    }

    std::vector<std::pair<FeatureId, double>> entries;
    entries.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        double w;
        if (is_informative[j]) {
            const double sign = rng.uniform() < config.positive_sign_fraction ? 1.0 : -1.0;
            double magnitude = rng.lognormal(-0.55, 0.35);
            if (is_boosted[j]) {
                magnitude *= std::pow(config.max_coverage / coverage[j], config.boost_exponent);
            }
            w = sign * quantize_magnitude(magnitude, config.weight_cap);
        } else {
            w = (2.0 * rng.uniform() - 1.0) * config.noise_weight_scale;
        }
        entries.emplace_back(static_cast<FeatureId>(j), w);
    }

    LinearModel model(std::move(entries), config.intercept, 0.0, m);

    std::vector<SparseInstance> instances;
    instances.reserve(config.num_instances);
    for (std::size_t i = 0; i < config.num_instances; ++i) {
        Rng irng(derive_instance_seed(config.seed, i));
        std::vector<FeatureId> active;
        double s = model.intercept();
        for (std::size_t j = 0; j < m; ++j) {
            if (irng.uniform() < coverage[j]) {
                active.push_back(static_cast<FeatureId>(j));
                s += model.weight(static_cast<FeatureId>(j));
            }
        }
        instances.emplace_back(i, std::move(active), s > model.threshold());
    }

    return SynthData{std::move(model), SparseDataset(std::move(instances), m),
                     std::move(informative)};
}

}  // namespace linexplain
