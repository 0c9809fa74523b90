#include "trialbandit/trial_model.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace trialbandit {

void DatasetSpec::validate() const {
    const std::size_t C = mu.rows();
    const std::size_t K = mu.cols();
    if (C < 1) throw std::invalid_argument(name + ": need at least one subpopulation");
    if (K < 2) throw std::invalid_argument(name + ": need at least two treatments");
    if (sigma2.rows() != C || sigma2.cols() != K)
        throw std::invalid_argument(name + ": mu and sigma2 dimensions differ");
    if (p.size() != C)
        throw std::invalid_argument(name + ": subpopulation distribution has wrong length");
    double total = 0.0;
    for (double pi : p) {
        if (!(pi >= 0.0) || !std::isfinite(pi))
            throw std::invalid_argument(name + ": negative subpopulation probability");
        total += pi;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument(name + ": subpopulation probabilities sum to " +
                                    std::to_string(total));
    for (double m : mu)
        if (!std::isfinite(m)) throw std::invalid_argument(name + ": non-finite mean");
    for (double s2 : sigma2)
        if (!(s2 > 0.0) || !std::isfinite(s2))
            throw std::invalid_argument(name + ": variances must be positive and finite");
}

DatasetSpec make_dataset(std::string name, std::vector<double> p,
                         const std::vector<std::vector<double>>& mu,
                         const std::vector<std::vector<double>>& sigma2) {
    const std::size_t C = mu.size();
    const std::size_t K = C == 0 ? 0 : mu.front().size();
    DatasetSpec spec{std::move(name), std::move(p), RealGrid(C, K), RealGrid(C, K)};
    if (sigma2.size() != C) throw std::invalid_argument(spec.name + ": sigma2 row count differs");
    for (std::size_t i = 0; i < C; ++i) {
        if (mu[i].size() != K || sigma2[i].size() != K)
            throw std::invalid_argument(spec.name + ": ragged parameter rows");
        for (std::size_t j = 0; j < K; ++j) {
            spec.mu(i, j) = mu[i][j];
            spec.sigma2(i, j) = sigma2[i][j];
        }
    }
    spec.validate();
    return spec;
}

TrialState::TrialState(std::size_t subpopulations, std::size_t treatments, std::uint64_t budget)
    : arms_(subpopulations, treatments), budget_(budget) {
    if (budget == 0) throw std::invalid_argument("budget must be at least 1");
}

void TrialState::record(ArmId a, double response) {
    if (a.i >= subpopulations() || a.j >= treatments())
        throw std::out_of_range("arm index out of range");
    if (total_pulls_ >= budget_)
        throw BudgetExhausted("budget of " + std::to_string(budget_) + " pulls exhausted");
    arms_(a.i, a.j).push(response);
    ++total_pulls_;
}

Grid<std::uint64_t> TrialState::counts() const {
    Grid<std::uint64_t> out(subpopulations(), treatments());
    for (std::size_t i = 0; i < subpopulations(); ++i)
        for (std::size_t j = 0; j < treatments(); ++j) out(i, j) = arms_(i, j).count;
    return out;
}

bool AllocationWeights::is_valid(double tol) const {
    double total = 0.0;
    for (double x : w) {
        if (!std::isfinite(x) || x < 0.0) return false;
        total += x;
    }
    return w.size() > 0 && std::abs(total - 1.0) <= tol;
}

AllocationWeights AllocationWeights::uniform(std::size_t rows, std::size_t cols) {
    return {RealGrid(rows, cols, 1.0 / static_cast<double>(rows * cols))};
}

AllocationWeights AllocationWeights::normalized(RealGrid scores) {
    double total = 0.0;
    bool finite = true;
    for (double x : scores) {
        if (!std::isfinite(x) || x < 0.0) finite = false;
        total += x;
    }
    if (!finite || !std::isfinite(total) || total <= 0.0)
        return uniform(scores.rows(), scores.cols());
    for (double& x : scores) x /= total;
    return {std::move(scores)};
}

TrialState new_trial_state(const DatasetSpec& spec, std::uint64_t budget) {
    return TrialState(spec.subpopulations(), spec.treatments(), budget);
}

TrialState record_response(TrialState state, ArmId arm, double response) {
    state.record(arm, response);
    return state;
}

ArmSummary arm_summary(const TrialState& state, ArmId arm) {
    const ArmStats& s = state.arm(arm);
    return {s.count, s.mean, std::sqrt(s.sample_variance())};
}

std::size_t argmax_lowest(std::span<const double> values) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < values.size(); ++j)
        if (values[j] > values[best]) best = j;
    return best;
}

std::vector<std::size_t> recommend_itr(const TrialState& state) {
    std::vector<std::size_t> itr(state.subpopulations());
    std::vector<double> means(state.treatments());
    for (std::size_t i = 0; i < itr.size(); ++i) {
        for (std::size_t j = 0; j < means.size(); ++j) means[j] = state.arm({i, j}).mean;
        itr[i] = argmax_lowest(means);
    }
    return itr;
}

std::vector<std::size_t> true_best_treatments(const DatasetSpec& spec) {
    std::vector<std::size_t> best(spec.subpopulations());
    for (std::size_t i = 0; i < best.size(); ++i) best[i] = argmax_lowest(spec.mu.row(i));
    return best;
}

}  // namespace trialbandit
