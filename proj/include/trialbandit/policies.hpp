#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "trialbandit/trial_model.hpp"

namespace trialbandit {

using Rng = std::mt19937_64;

/// Arms to pull next, in order. One arm for sequential policies; one arm per
/// treatment of a single subpopulation for the grouped variant.
struct PolicyDecision {
    std::vector<ArmId> arms;
};

enum class PolicyKind { Areoa, AaRandom, GafsMax, MinmaxPicsSeq, MinmaxPicsGrp };

/// Stable CLI identifiers: areoa, aarandom, gafs-max, minmaxpics-seq, minmaxpics-grp.
std::string_view policy_name(PolicyKind kind) noexcept;
std::optional<PolicyKind> parse_policy(std::string_view name) noexcept;
const std::vector<PolicyKind>& all_policies();

struct PolicyConfig {
    double epsilon = 0.1;
    std::uint64_t init_pulls = 5;
    /// Flat arm indices i * K + j in priority order; empty means the natural order.
    std::vector<std::size_t> ordering;

    /// Throws std::invalid_argument for an out-of-range epsilon, zero init pulls
    /// or an ordering that is not a permutation of 0..arm_count-1.
    void validate(std::size_t arm_count) const;
};

std::vector<std::size_t> natural_ordering(std::size_t arm_count);
std::vector<std::size_t> reversed_ordering(std::size_t arm_count);

/// Each arm B times, round-robin in (i, j) order.
std::vector<ArmId> init_phase_sequence(std::size_t C, std::size_t K, std::uint64_t B);

/// Plug-in variance-oracle fractions from the sample standard deviations.
AllocationWeights areoa_weights(const TrialState& state);

/// Draws from (1 - epsilon) * weights + epsilon * uniform.
ArmId epsilon_greedy_sample(const AllocationWeights& weights, double epsilon, Rng& rng);

/// Subpopulation by its population share, treatment uniform.
ArmId aarandom_select(const DatasetSpec& spec, Rng& rng);

/// Forced revisit of arms with count < sqrt(n) + 1 (earliest in ordering),
/// else the arm maximizing sample variance / count.
ArmId gafs_max_select(const TrialState& state, std::span<const std::size_t> ordering);

/// Plug-in PICS surrogate scale factors from estimated means and standard deviations.
RealGrid estimated_pics_scale(const TrialState& state);

/// Plug-in PICS surrogate fractions v_ij * sum_j v_ij, normalized.
AllocationWeights minmaxpics_seq_weights(const TrialState& state);

/// Subpopulation marginals proportional to (sum_j v_ij)^2.
std::vector<double> minmaxpics_group_probabilities(const TrialState& state);

/// Picks a subpopulation (uniformly with probability epsilon, else by
/// (sum_j v_ij)^2) and assigns one patient per treatment, truncated to the
/// remaining budget in increasing treatment order.
PolicyDecision minmaxpics_grp_select(const TrialState& state, double epsilon, Rng& rng);

/// An online allocation rule used after the initialization phase.
class AllocationPolicy {
public:
    virtual ~AllocationPolicy() = default;
    virtual PolicyDecision decide(const TrialState& state, Rng& rng) = 0;
};

std::unique_ptr<AllocationPolicy> make_policy(PolicyKind kind, const PolicyConfig& config,
                                              const DatasetSpec& spec);

}  // namespace trialbandit
