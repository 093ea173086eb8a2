#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "linexplain/model.hpp"

namespace linexplain {

// Weighted voting game over one instance's active features: a coalition wins
// (value 1) iff its summed weights strictly exceed the effective threshold.
// The model's intercept is folded into the threshold so that the grand
// coalition wins exactly when the instance is predicted positive.
class VotingGame {
public:
    VotingGame() = default;
    VotingGame(std::vector<FeatureId> players, std::vector<double> weights,
               double effective_threshold);

    const std::vector<FeatureId>& players() const { return players_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t num_players() const { return players_.size(); }
    double effective_threshold() const { return effective_threshold_; }

    bool wins(double weight_sum) const { return weight_sum > effective_threshold_; }
    int value_of_empty() const { return wins(0.0) ? 1 : 0; }
    int value_of_all() const;

    // Weight of a player; throws ContractError for non-players.
    double weight_of(FeatureId player) const;

private:
    std::vector<FeatureId> players_;  // sorted ascending
    std::vector<double> weights_;     // parallel to players_
    double effective_threshold_ = 0.0;
};

// A coalition with its weight sum cached at construction.
class Coalition {
public:
    Coalition() = default;
    static Coalition of(const VotingGame& game, std::vector<FeatureId> members);

    const std::vector<FeatureId>& members() const { return members_; }
    double weight_sum() const { return weight_sum_; }
    bool contains(FeatureId f) const;

private:
    std::vector<FeatureId> members_;  // sorted ascending
    double weight_sum_ = 0.0;
};

enum class AttributionMethod { exact, monte_carlo };

// Per-player Shapley values for one instance's voting game.
struct AttributionVector {
    std::uint64_t instance_id = 0;
    std::vector<std::pair<FeatureId, double>> values;  // player id -> phi, sorted by id
    AttributionMethod method = AttributionMethod::exact;
    std::size_t samples = 0;  // 0 for exact
    std::uint64_t seed = 0;   // 0 for exact

    // Monte Carlo only: each player's summed marginal utilities, parallel to
    // values (phi = swing_totals[i] / samples). Marginals telescope within
    // every permutation, so sum(swing_totals) = samples * (v(N) - v(empty))
    // holds as an exact integer identity even though the phi doubles round.
    std::vector<std::int64_t> swing_totals;

    double total() const;
};

// Largest player count for which exact enumeration is attempted by default;
// beyond it the subset space (2^(n-1) per player) stops being reasonable.
inline constexpr std::size_t kDefaultExactLimit = 20;
inline constexpr std::size_t kDefaultSampleCount = 10'000;

VotingGame build_game(const LinearModel& model, const SparseInstance& instance);

// v(S + {player}) - v(S) in {-1, 0, +1}. The player must belong to the game
// and must not already be in the coalition.
int marginal_utility(const VotingGame& game, const Coalition& coalition, FeatureId player);

// Exact Shapley values: for each player, every coalition of the others is
// enumerated in Gray-code order with an incrementally maintained weight sum,
// and swing counts are bucketed by coalition size so each phi is a short sum
// of count/(n * C(n-1, s)) terms. Throws ResourceError when the game has more
// than exact_limit players.
AttributionVector exact_shapley(const VotingGame& game,
                                std::size_t exact_limit = kDefaultExactLimit);

// Monte Carlo estimate: the mean marginal utility over `samples` uniformly
// random player permutations, scanned left to right. Per-permutation marginals
// telescope to v(N) - v(empty), so the estimate satisfies the efficiency axiom
// by construction. Deterministic for a given seed.
AttributionVector approx_shapley(const VotingGame& game, std::size_t samples,
                                 std::uint64_t seed);

}  // namespace linexplain
