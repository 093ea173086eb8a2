#include "linexplain/shapley.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "linexplain/errors.hpp"
#include "linexplain/random.hpp"

namespace linexplain {

VotingGame::VotingGame(std::vector<FeatureId> players, std::vector<double> weights,
                       double effective_threshold)
    : players_(std::move(players)),
      weights_(std::move(weights)),
      effective_threshold_(effective_threshold) {
    if (players_.size() != weights_.size()) {
        throw ContractError("voting game needs one weight per player");
    }
    if (!std::is_sorted(players_.begin(), players_.end()) ||
        std::adjacent_find(players_.begin(), players_.end()) != players_.end()) {
        throw ContractError("voting game players must be sorted and unique");
    }
}

int VotingGame::value_of_all() const {
    return wins(std::accumulate(weights_.begin(), weights_.end(), 0.0)) ? 1 : 0;
}

double VotingGame::weight_of(FeatureId player) const {
    const auto it = std::lower_bound(players_.begin(), players_.end(), player);
    if (it == players_.end() || *it != player) {
        throw ContractError("feature " + std::to_string(player) + " is not a player");
    }
    return weights_[static_cast<std::size_t>(it - players_.begin())];
}

Coalition Coalition::of(const VotingGame& game, std::vector<FeatureId> members) {
    Coalition c;
    c.members_ = std::move(members);
    std::sort(c.members_.begin(), c.members_.end());
    if (std::adjacent_find(c.members_.begin(), c.members_.end()) != c.members_.end()) {
        throw ContractError("coalition members must be unique");
    }
    c.weight_sum_ = 0.0;
    for (FeatureId f : c.members_) c.weight_sum_ += game.weight_of(f);
    return c;
}

bool Coalition::contains(FeatureId f) const {
    return std::binary_search(members_.begin(), members_.end(), f);
}

double AttributionVector::total() const {
    double sum = 0.0;
    for (const auto& [id, phi] : values) sum += phi;
    return sum;
}

VotingGame build_game(const LinearModel& model, const SparseInstance& instance) {
    if (!instance.active().empty() &&
        static_cast<std::size_t>(instance.active().back()) >= model.num_features()) {
        throw FeatureRangeError("instance " + std::to_string(instance.id()) +
                                " has feature " + std::to_string(instance.active().back()) +
                                " outside model vocabulary of " +
                                std::to_string(model.num_features()) + " features");
    }
    std::vector<double> weights;
    weights.reserve(instance.active().size());
    for (FeatureId f : instance.active()) weights.push_back(model.weight(f));
    return VotingGame(instance.active(), std::move(weights),
                      model.threshold() - model.intercept());
}

int marginal_utility(const VotingGame& game, const Coalition& coalition, FeatureId player) {
    if (coalition.contains(player)) {
        throw ContractError("player " + std::to_string(player) +
                            " is already in the coalition");
    }
    const double w = game.weight_of(player);
    const int before = game.wins(coalition.weight_sum()) ? 1 : 0;
    const int after = game.wins(coalition.weight_sum() + w) ? 1 : 0;
    return after - before;
}

namespace {

// C(n, k) for the small n used by exact enumeration; exact in uint64.
std::uint64_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::uint64_t result = 1;
    for (std::size_t i = 1; i <= k; ++i) result = result * (n - k + i) / i;
    return result;
}

}  // namespace

AttributionVector exact_shapley(const VotingGame& game, std::size_t exact_limit) {
    const std::size_t n = game.num_players();
    if (n > exact_limit) {
        throw ResourceError("exact Shapley enumeration over " + std::to_string(n) +
                            " players exceeds the limit of " + std::to_string(exact_limit) +
                            "; use approx_shapley instead");
    }

    AttributionVector result;
    result.method = AttributionMethod::exact;
    result.values.reserve(n);
    if (n == 0) return result;

    const auto& weights = game.weights();
    const std::size_t others = n - 1;
    const std::uint64_t subset_count = std::uint64_t{1} << others;

    // P(s) = s!(n-1-s)!/n! = 1 / (n * C(n-1, s)), computed from exact integer
    // binomials instead of factorials (20! does not fit a double).
    std::vector<double> position_weight(n);
    for (std::size_t s = 0; s < n; ++s) {
        position_weight[s] = 1.0 / (static_cast<double>(n) *
                                    static_cast<double>(binomial(others, s)));
    }

    std::vector<double> other_weights(others);
    std::vector<std::int64_t> net_swings(n);

    for (std::size_t p = 0; p < n; ++p) {
        std::size_t out = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i != p) other_weights[out++] = weights[i];
        }
        const double player_weight = weights[p];

        std::fill(net_swings.begin(), net_swings.end(), 0);
        double sum = 0.0;
        std::size_t size = 0;

        // Subsets of the other players in Gray-code order: each step toggles
        // one member, so the running weight sum updates in O(1).
        for (std::uint64_t counter = 0;; ++counter) {
            const int before = game.wins(sum) ? 1 : 0;
            const int after = game.wins(sum + player_weight) ? 1 : 0;
            net_swings[size] += after - before;

            if (counter + 1 == subset_count) break;
            const unsigned bit = std::countr_zero(counter + 1);
            const std::uint64_t gray = (counter + 1) ^ ((counter + 1) >> 1);
            if (gray & (std::uint64_t{1} << bit)) {
                sum += other_weights[bit];
                ++size;
            } else {
                sum -= other_weights[bit];
                --size;
            }
        }

        double phi = 0.0;
        for (std::size_t s = 0; s < n; ++s) {
            if (net_swings[s] != 0) {
                phi += static_cast<double>(net_swings[s]) * position_weight[s];
            }
        }
        result.values.emplace_back(game.players()[p], phi);
    }
    return result;
}

AttributionVector approx_shapley(const VotingGame& game, std::size_t samples,
                                 std::uint64_t seed) {
    if (samples == 0) throw ContractError("approx_shapley needs at least one sample");

    const std::size_t n = game.num_players();
    AttributionVector result;
    result.method = AttributionMethod::monte_carlo;
    result.samples = samples;
    result.seed = seed;
    result.values.reserve(n);
    if (n == 0) return result;

    const auto& weights = game.weights();
    const int empty_value = game.value_of_empty();

    Rng rng(seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::int64_t> totals(n, 0);

    for (std::size_t s = 0; s < samples; ++s) {
        rng.shuffle(order);
        double sum = 0.0;
        int before = empty_value;
        for (std::size_t pos = 0; pos < n; ++pos) {
            sum += weights[order[pos]];
            const int after = game.wins(sum) ? 1 : 0;
            totals[order[pos]] += after - before;
            before = after;
        }
    }

    for (std::size_t p = 0; p < n; ++p) {
        result.values.emplace_back(game.players()[p], static_cast<double>(totals[p]) /
                                                          static_cast<double>(samples));
    }
    result.swing_totals = std::move(totals);
    return result;
}

}  // namespace linexplain
