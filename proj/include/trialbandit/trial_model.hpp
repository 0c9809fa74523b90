#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "trialbandit/grid.hpp"

namespace trialbandit {

/// Ground-truth trial world: C subpopulations, each with K treatments whose
/// responses are normal(mu(i, j), sigma2(i, j)).
struct DatasetSpec {
    std::string name;
    std::vector<double> p;  ///< subpopulation mix, length C
    RealGrid mu;            ///< true mean responses, C x K
    RealGrid sigma2;        ///< true response variances, C x K

    std::size_t subpopulations() const noexcept { return mu.rows(); }
    std::size_t treatments() const noexcept { return mu.cols(); }
    std::size_t arm_count() const noexcept { return mu.size(); }

    /// Throws std::invalid_argument describing the first violated invariant.
    void validate() const;
};

/// Builds and validates a spec from nested row vectors.
DatasetSpec make_dataset(std::string name, std::vector<double> p,
                         const std::vector<std::vector<double>>& mu,
                         const std::vector<std::vector<double>>& sigma2);

/// (subpopulation, treatment), 0-based.
struct ArmId {
    std::size_t i = 0;
    std::size_t j = 0;
    friend bool operator==(const ArmId&, const ArmId&) = default;
};

/// Running count/mean/M2 accumulator (Welford).
struct ArmStats {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double x) noexcept {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
        if (m2 < 0.0) m2 = 0.0;
    }

    /// Unbiased sample variance; 0 for fewer than two observations.
    double sample_variance() const noexcept {
        return count < 2 ? 0.0 : m2 / static_cast<double>(count - 1);
    }

    friend bool operator==(const ArmStats&, const ArmStats&) = default;
};

class BudgetExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Everything a policy may observe: per-arm statistics plus budget bookkeeping.
class TrialState {
public:
    TrialState(std::size_t subpopulations, std::size_t treatments, std::uint64_t budget);

    std::size_t subpopulations() const noexcept { return arms_.rows(); }
    std::size_t treatments() const noexcept { return arms_.cols(); }
    std::size_t arm_count() const noexcept { return arms_.size(); }
    std::uint64_t total_pulls() const noexcept { return total_pulls_; }
    std::uint64_t budget() const noexcept { return budget_; }
    std::uint64_t remaining() const noexcept { return budget_ - total_pulls_; }

    const ArmStats& arm(ArmId a) const { return arms_(a.i, a.j); }
    const Grid<ArmStats>& arms() const noexcept { return arms_; }

    /// Throws BudgetExhausted when no pulls remain.
    void record(ArmId a, double response);

    Grid<std::uint64_t> counts() const;

    friend bool operator==(const TrialState&, const TrialState&) = default;

private:
    Grid<ArmStats> arms_;
    std::uint64_t total_pulls_ = 0;
    std::uint64_t budget_ = 0;
};

/// Nonnegative C x K matrix summing to one.
struct AllocationWeights {
    RealGrid w;

    /// True when all entries are finite, nonnegative and sum to 1 within tol.
    bool is_valid(double tol = 1e-9) const;

    static AllocationWeights uniform(std::size_t rows, std::size_t cols);
    /// Normalizes raw nonnegative scores; falls back to uniform when they sum
    /// to zero or are not finite.
    static AllocationWeights normalized(RealGrid scores);
};

TrialState new_trial_state(const DatasetSpec& spec, std::uint64_t budget);

/// Copying variant of TrialState::record.
TrialState record_response(TrialState state, ArmId arm, double response);

struct ArmSummary {
    std::uint64_t count = 0;
    double mean = 0.0;
    double sample_std = 0.0;
};

ArmSummary arm_summary(const TrialState& state, ArmId arm);

/// Index of the largest entry, lowest index on ties.
std::size_t argmax_lowest(std::span<const double> values);

/// Per-subpopulation argmax of the estimated means, lowest index on ties.
std::vector<std::size_t> recommend_itr(const TrialState& state);

/// Per-subpopulation argmax of the true means.
std::vector<std::size_t> true_best_treatments(const DatasetSpec& spec);

}  // namespace trialbandit
