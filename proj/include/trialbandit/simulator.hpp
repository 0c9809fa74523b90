#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "trialbandit/policies.hpp"
#include "trialbandit/trial_model.hpp"

namespace trialbandit {

enum class Objective { Variance, Pics };

std::string_view objective_name(Objective objective) noexcept;
std::optional<Objective> parse_objective(std::string_view name) noexcept;

struct RunConfig {
    DatasetSpec dataset;
    PolicyKind policy = PolicyKind::Areoa;
    PolicyConfig policy_config;
    std::uint64_t budget = 0;
    /// Ascending pull counts at which the loss is recorded; empty means
    /// default_checkpoints(init size, budget, 5).
    std::vector<std::uint64_t> checkpoints;
    std::uint64_t seed = 42;
    Objective objective = Objective::Variance;

    std::uint64_t init_size() const noexcept {
        return policy_config.init_pulls * dataset.arm_count();
    }
    /// Checkpoints actually used (explicit list or the default grid).
    std::vector<std::uint64_t> resolved_checkpoints() const;
    /// Throws std::invalid_argument on an inconsistent configuration.
    void validate() const;
};

/// first, first + step, ..., always ending with last.
std::vector<std::uint64_t> default_checkpoints(std::uint64_t first, std::uint64_t last,
                                               std::uint64_t step = 5);

struct TrajectoryPoint {
    std::uint64_t n = 0;
    double loss = 0.0;
    std::vector<std::size_t> itr;  ///< interim recommendation
    Grid<std::uint64_t> counts;

    // Bitwise loss comparison: determinism checks must be exact.
    friend bool operator==(const TrajectoryPoint& a, const TrajectoryPoint& b) {
        return a.n == b.n &&
               std::bit_cast<std::uint64_t>(a.loss) == std::bit_cast<std::uint64_t>(b.loss) &&
               a.itr == b.itr && a.counts == b.counts;
    }
};

struct LossTrajectory {
    std::vector<TrajectoryPoint> points;
    std::vector<std::size_t> final_itr;
    Grid<std::uint64_t> final_counts;

    friend bool operator==(const LossTrajectory&, const LossTrajectory&) = default;
};

struct ReplicationSet {
    std::vector<std::uint64_t> checkpoints;
    std::vector<LossTrajectory> runs;
    std::vector<double> mean_loss;
    /// Per checkpoint and subpopulation: share of runs whose interim
    /// recommendation differs from the true best treatment.
    std::vector<std::vector<double>> subpopulation_error;
    std::vector<double> empirical_error_max;
    std::vector<double> empirical_error_any;
    /// Per checkpoint: average realized pull counts.
    std::vector<RealGrid> mean_counts;
};

/// One normal(mu_ij, sigma2_ij) draw.
double sample_response(const DatasetSpec& spec, ArmId arm, Rng& rng);

/// Independent stream for a replication of a seeded experiment.
Rng replication_rng(std::uint64_t seed, std::uint64_t replication);

/// Worst-case loss of the chosen objective at true parameters and realized counts.
double objective_loss(const DatasetSpec& spec, Objective objective, const Grid<std::uint64_t>& counts);

/// Runs the initialization phase and then the policy until the budget is spent.
LossTrajectory run_trial(const RunConfig& config, AllocationPolicy& policy, Rng& rng);

/// Convenience overload: builds the configured policy and the replication-0 stream.
LossTrajectory run_trial(const RunConfig& config);

/// Runs `reps` independent trials; threads == 0 uses the hardware concurrency.
/// The result does not depend on the thread count.
ReplicationSet replicate(const RunConfig& config, std::size_t reps, std::size_t threads = 1);

/// Aggregates runs that share a checkpoint grid.
ReplicationSet aggregate(const DatasetSpec& spec, std::vector<LossTrajectory> runs);

}  // namespace trialbandit
