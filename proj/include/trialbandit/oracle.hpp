#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "trialbandit/grid.hpp"
#include "trialbandit/trial_model.hpp"

namespace trialbandit {

/// Smallest treatment gap used when scaling standard deviations into PICS weights.
inline constexpr double kGapFloor = 1e-12;

/// Per-arm scale factors for one subpopulation under the PICS surrogate:
/// competitors get sigma / gap, the best arm gets sigma * sqrt(sum 1 / gap^2).
struct PicsWeightRow {
    std::vector<double> v;
    std::size_t j_star = 0;
};

PicsWeightRow pics_weight_row(std::span<const double> mu_row, std::span<const double> sigma_row);

/// Minimax allocation for per-arm scale factors s: n(i, j) = s_ij * S_i / sum_i S_i^2 * N,
/// with S_i the row sum. Real valued; integer constraints are ignored.
RealGrid minimax_allocation(const RealGrid& scale, double budget);

/// Fractions n(i, j) / N for the same closed form; falls back to uniform when
/// every scale factor is zero.
AllocationWeights minimax_fractions(const RealGrid& scale);

/// Oracle allocation minimizing the worst subpopulation's treatment-effect variance.
RealGrid variance_oracle_allocation(const DatasetSpec& spec, double budget);

/// sum_i (sum_j sigma_ij)^2 / N, the optimal value of the variance problem.
double variance_oracle_loss(const DatasetSpec& spec, double budget);

/// Closed-form allocation of the Boole/Chebyshev PICS surrogate at the true parameters.
RealGrid pics_surrogate_allocation(const DatasetSpec& spec, double budget);

/// Probability that some inferior treatment's sample mean reaches the best
/// one's, for normal sample means with the given (real-valued) counts.
double exact_pics_loss(std::span<const double> mu_row, std::span<const double> sigma_row,
                       std::span<const double> n_row);

/// max_i sum_j sigma2_ij / counts_ij; +inf if any count is zero.
double worst_case_variance_loss(const DatasetSpec& spec, const RealGrid& counts);

/// max_i exact_pics_loss(row i); +inf if any count is zero.
double worst_case_pics_loss(const DatasetSpec& spec, const RealGrid& counts);

/// Element-wise sqrt of the spec's variances.
RealGrid true_sigma(const DatasetSpec& spec);

}  // namespace trialbandit
