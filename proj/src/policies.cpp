#include "trialbandit/policies.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "trialbandit/oracle.hpp"

namespace trialbandit {
namespace {

constexpr std::array<std::pair<PolicyKind, std::string_view>, 5> kPolicyNames{{
    {PolicyKind::Areoa, "areoa"},
    {PolicyKind::AaRandom, "aarandom"},
    {PolicyKind::GafsMax, "gafs-max"},
    {PolicyKind::MinmaxPicsSeq, "minmaxpics-seq"},
    {PolicyKind::MinmaxPicsGrp, "minmaxpics-grp"},
}};

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

std::size_t uniform_index(std::size_t n, Rng& rng) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// Inverse-CDF draw from nonnegative masses that need not be normalized.
std::size_t sample_index(std::span<const double> mass, Rng& rng) {
    const double total = std::accumulate(mass.begin(), mass.end(), 0.0);
    const double target = uniform01(rng) * total;
    double running = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t k = 0; k < mass.size(); ++k) {
        if (mass[k] <= 0.0) continue;
        running += mass[k];
        last_positive = k;
        if (target < running) return k;
    }
    return last_positive;
}

RealGrid sample_std(const TrialState& state) {
    RealGrid sigma(state.subpopulations(), state.treatments());
    for (std::size_t i = 0; i < sigma.rows(); ++i)
        for (std::size_t j = 0; j < sigma.cols(); ++j)
            sigma(i, j) = std::sqrt(state.arm({i, j}).sample_variance());
    return sigma;
}

ArmId flat_to_arm(std::size_t flat, std::size_t K) { return {flat / K, flat % K}; }

class AreoaPolicy final : public AllocationPolicy {
public:
    explicit AreoaPolicy(double epsilon) : epsilon_(epsilon) {}
    PolicyDecision decide(const TrialState& state, Rng& rng) override {
        return {{epsilon_greedy_sample(areoa_weights(state), epsilon_, rng)}};
    }

private:
    double epsilon_;
};

class AaRandomPolicy final : public AllocationPolicy {
public:
    explicit AaRandomPolicy(const DatasetSpec& spec) : spec_(spec) {}
    PolicyDecision decide(const TrialState&, Rng& rng) override {
        return {{aarandom_select(spec_, rng)}};
    }

private:
    DatasetSpec spec_;
};

class GafsMaxPolicy final : public AllocationPolicy {
public:
    explicit GafsMaxPolicy(std::vector<std::size_t> ordering) : ordering_(std::move(ordering)) {}
    PolicyDecision decide(const TrialState& state, Rng&) override {
        return {{gafs_max_select(state, ordering_)}};
    }

private:
    std::vector<std::size_t> ordering_;
};

class MinmaxPicsSeqPolicy final : public AllocationPolicy {
public:
    explicit MinmaxPicsSeqPolicy(double epsilon) : epsilon_(epsilon) {}
    PolicyDecision decide(const TrialState& state, Rng& rng) override {
        return {{epsilon_greedy_sample(minmaxpics_seq_weights(state), epsilon_, rng)}};
    }

private:
    double epsilon_;
};

class MinmaxPicsGrpPolicy final : public AllocationPolicy {
public:
    explicit MinmaxPicsGrpPolicy(double epsilon) : epsilon_(epsilon) {}
    PolicyDecision decide(const TrialState& state, Rng& rng) override {
        return minmaxpics_grp_select(state, epsilon_, rng);
    }

private:
    double epsilon_;
};

}  // namespace

std::string_view policy_name(PolicyKind kind) noexcept {
    for (const auto& [k, name] : kPolicyNames)
        if (k == kind) return name;
    return "unknown";
}

std::optional<PolicyKind> parse_policy(std::string_view name) noexcept {
    for (const auto& [k, n] : kPolicyNames)
        if (n == name) return k;
    return std::nullopt;
}

const std::vector<PolicyKind>& all_policies() {
    static const std::vector<PolicyKind> kinds = [] {
        std::vector<PolicyKind> out;
        for (const auto& entry : kPolicyNames) out.push_back(entry.first);
        return out;
    }();
    return kinds;
}

void PolicyConfig::validate(std::size_t arm_count) const {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("epsilon must lie in [0, 1]");
    if (init_pulls < 1) throw std::invalid_argument("init pulls must be at least 1");
    if (ordering.empty()) return;
    if (ordering.size() != arm_count)
        throw std::invalid_argument("ordering must list every arm exactly once");
    std::vector<bool> seen(arm_count, false);
    for (std::size_t a : ordering) {
        if (a >= arm_count || seen[a])
            throw std::invalid_argument("ordering must be a permutation of the arms");
        seen[a] = true;
    }
}

std::vector<std::size_t> natural_ordering(std::size_t arm_count) {
    std::vector<std::size_t> order(arm_count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    return order;
}

std::vector<std::size_t> reversed_ordering(std::size_t arm_count) {
    std::vector<std::size_t> order = natural_ordering(arm_count);
    std::reverse(order.begin(), order.end());
    return order;
}

std::vector<ArmId> init_phase_sequence(std::size_t C, std::size_t K, std::uint64_t B) {
    std::vector<ArmId> seq;
    seq.reserve(static_cast<std::size_t>(B) * C * K);
    for (std::uint64_t round = 0; round < B; ++round)
        for (std::size_t i = 0; i < C; ++i)
            for (std::size_t j = 0; j < K; ++j) seq.push_back({i, j});
    return seq;
}

AllocationWeights areoa_weights(const TrialState& state) {
    return minimax_fractions(sample_std(state));
}

ArmId epsilon_greedy_sample(const AllocationWeights& weights, double epsilon, Rng& rng) {
    const std::size_t K = weights.w.cols();
    if (epsilon > 0.0 && uniform01(rng) < epsilon)
        return flat_to_arm(uniform_index(weights.w.size(), rng), K);
    return flat_to_arm(sample_index(weights.w.flat(), rng), K);
}

ArmId aarandom_select(const DatasetSpec& spec, Rng& rng) {
    const std::size_t i = sample_index(spec.p, rng);
    return {i, uniform_index(spec.treatments(), rng)};
}

ArmId gafs_max_select(const TrialState& state, std::span<const std::size_t> ordering) {
    const std::size_t K = state.treatments();
    const std::vector<std::size_t> fallback =
        ordering.empty() ? natural_ordering(state.arm_count()) : std::vector<std::size_t>{};
    if (ordering.empty()) ordering = fallback;

    const double threshold = std::sqrt(static_cast<double>(state.total_pulls())) + 1.0;
    for (std::size_t flat : ordering) {
        const ArmId a = flat_to_arm(flat, K);
        if (static_cast<double>(state.arm(a).count) < threshold) return a;
    }

    ArmId best = flat_to_arm(ordering.front(), K);
    double best_score = -1.0;
    for (std::size_t flat : ordering) {
        const ArmId a = flat_to_arm(flat, K);
        const ArmStats& s = state.arm(a);
        const double score = s.sample_variance() / static_cast<double>(s.count);
        if (score > best_score) {
            best_score = score;
            best = a;
        }
    }
    return best;
}

RealGrid estimated_pics_scale(const TrialState& state) {
    const RealGrid sigma = sample_std(state);
    RealGrid scale(state.subpopulations(), state.treatments());
    std::vector<double> means(state.treatments());
    for (std::size_t i = 0; i < scale.rows(); ++i) {
        for (std::size_t j = 0; j < means.size(); ++j) means[j] = state.arm({i, j}).mean;
        const PicsWeightRow row = pics_weight_row(means, sigma.row(i));
        std::copy(row.v.begin(), row.v.end(), scale.row(i).begin());
    }
    return scale;
}

AllocationWeights minmaxpics_seq_weights(const TrialState& state) {
    return minimax_fractions(estimated_pics_scale(state));
}

std::vector<double> minmaxpics_group_probabilities(const TrialState& state) {
    const AllocationWeights seq = minmaxpics_seq_weights(state);
    std::vector<double> marginals(state.subpopulations(), 0.0);
    for (std::size_t i = 0; i < marginals.size(); ++i)
        for (double w : seq.w.row(i)) marginals[i] += w;
    return marginals;
}

PolicyDecision minmaxpics_grp_select(const TrialState& state, double epsilon, Rng& rng) {
    const std::size_t C = state.subpopulations();
    std::size_t i = 0;
    if (epsilon > 0.0 && uniform01(rng) < epsilon) {
        i = uniform_index(C, rng);
    } else {
        i = sample_index(minmaxpics_group_probabilities(state), rng);
    }
    const std::size_t width =
        static_cast<std::size_t>(std::min<std::uint64_t>(state.treatments(), state.remaining()));
    PolicyDecision decision;
    decision.arms.reserve(width);
    for (std::size_t j = 0; j < width; ++j) decision.arms.push_back({i, j});
    return decision;
}

std::unique_ptr<AllocationPolicy> make_policy(PolicyKind kind, const PolicyConfig& config,
                                              const DatasetSpec& spec) {
    config.validate(spec.arm_count());
    switch (kind) {
        case PolicyKind::Areoa:
            return std::make_unique<AreoaPolicy>(config.epsilon);
        case PolicyKind::AaRandom:
            return std::make_unique<AaRandomPolicy>(spec);
        case PolicyKind::GafsMax:
            return std::make_unique<GafsMaxPolicy>(
                config.ordering.empty() ? natural_ordering(spec.arm_count()) : config.ordering);
        case PolicyKind::MinmaxPicsSeq:
            return std::make_unique<MinmaxPicsSeqPolicy>(config.epsilon);
        case PolicyKind::MinmaxPicsGrp:
            return std::make_unique<MinmaxPicsGrpPolicy>(config.epsilon);
    }
    throw std::invalid_argument("unknown policy kind");
}

}  // namespace trialbandit
