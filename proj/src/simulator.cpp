#include "trialbandit/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

#include "trialbandit/oracle.hpp"

namespace trialbandit {

std::string_view objective_name(Objective objective) noexcept {
    return objective == Objective::Variance ? "variance" : "pics";
}

std::optional<Objective> parse_objective(std::string_view name) noexcept {
    if (name == "variance") return Objective::Variance;
    if (name == "pics") return Objective::Pics;
    return std::nullopt;
}

std::vector<std::uint64_t> default_checkpoints(std::uint64_t first, std::uint64_t last,
                                               std::uint64_t step) {
    if (step == 0) throw std::invalid_argument("checkpoint spacing must be positive");
    std::vector<std::uint64_t> grid;
    for (std::uint64_t n = first; n < last; n += step) grid.push_back(n);
    grid.push_back(last);
    return grid;
}

std::vector<std::uint64_t> RunConfig::resolved_checkpoints() const {
    return checkpoints.empty() ? default_checkpoints(init_size(), budget) : checkpoints;
}

void RunConfig::validate() const {
    dataset.validate();
    policy_config.validate(dataset.arm_count());
    if (budget < init_size())
        throw std::invalid_argument("budget " + std::to_string(budget) +
                                    " is smaller than the initialization phase (" +
                                    std::to_string(init_size()) + " pulls)");
    const auto grid = resolved_checkpoints();
    if (!std::is_sorted(grid.begin(), grid.end()) ||
        std::adjacent_find(grid.begin(), grid.end()) != grid.end())
        throw std::invalid_argument("checkpoints must be strictly increasing");
    if (grid.front() < init_size() || grid.back() > budget)
        throw std::invalid_argument("checkpoints must lie between the initialization size and the budget");
}

double sample_response(const DatasetSpec& spec, ArmId arm, Rng& rng) {
    std::normal_distribution<double> draw(spec.mu(arm.i, arm.j), std::sqrt(spec.sigma2(arm.i, arm.j)));
    return draw(rng);
}

Rng replication_rng(std::uint64_t seed, std::uint64_t replication) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(replication),
                      static_cast<std::uint32_t>(replication >> 32)};
    return Rng(seq);
}

double objective_loss(const DatasetSpec& spec, Objective objective,
                      const Grid<std::uint64_t>& counts) {
    RealGrid real(counts.rows(), counts.cols());
    std::transform(counts.begin(), counts.end(), real.begin(),
                   [](std::uint64_t c) { return static_cast<double>(c); });
    return objective == Objective::Variance ? worst_case_variance_loss(spec, real)
                                            : worst_case_pics_loss(spec, real);
}

LossTrajectory run_trial(const RunConfig& config, AllocationPolicy& policy, Rng& rng) {
    config.validate();
    const DatasetSpec& spec = config.dataset;
    const std::vector<std::uint64_t> grid = config.resolved_checkpoints();

    TrialState state = new_trial_state(spec, config.budget);
    LossTrajectory out;
    out.points.reserve(grid.size());
    auto next_checkpoint = grid.begin();

    auto pull = [&](ArmId arm) {
        state.record(arm, sample_response(spec, arm, rng));
        if (next_checkpoint != grid.end() && state.total_pulls() == *next_checkpoint) {
            TrajectoryPoint point;
            point.n = state.total_pulls();
            point.counts = state.counts();
            point.loss = objective_loss(spec, config.objective, point.counts);
            point.itr = recommend_itr(state);
            out.points.push_back(std::move(point));
            ++next_checkpoint;
        }
    };

    for (ArmId arm : init_phase_sequence(spec.subpopulations(), spec.treatments(),
                                         config.policy_config.init_pulls))
        pull(arm);

    while (state.remaining() > 0) {
        const PolicyDecision decision = policy.decide(state, rng);
        if (decision.arms.empty()) throw std::logic_error("policy returned an empty decision");
        for (ArmId arm : decision.arms) {
            if (state.remaining() == 0) break;
            pull(arm);
        }
    }

    out.final_itr = recommend_itr(state);
    out.final_counts = state.counts();
    return out;
}

LossTrajectory run_trial(const RunConfig& config) {
    config.validate();
    auto policy = make_policy(config.policy, config.policy_config, config.dataset);
    Rng rng = replication_rng(config.seed, 0);
    return run_trial(config, *policy, rng);
}

ReplicationSet aggregate(const DatasetSpec& spec, std::vector<LossTrajectory> runs) {
    if (runs.empty()) throw std::invalid_argument("cannot aggregate zero runs");
    ReplicationSet set;
    for (const TrajectoryPoint& p : runs.front().points) set.checkpoints.push_back(p.n);
    for (const LossTrajectory& run : runs) {
        if (run.points.size() != set.checkpoints.size())
            throw std::invalid_argument("runs have different checkpoint grids");
        for (std::size_t t = 0; t < set.checkpoints.size(); ++t)
            if (run.points[t].n != set.checkpoints[t])
                throw std::invalid_argument("runs have different checkpoint grids");
    }

    const std::vector<std::size_t> truth = true_best_treatments(spec);
    const std::size_t C = spec.subpopulations();
    const std::size_t K = spec.treatments();
    const double reps = static_cast<double>(runs.size());

    for (std::size_t t = 0; t < set.checkpoints.size(); ++t) {
        double loss_sum = 0.0;
        std::vector<double> wrong(C, 0.0);
        double any_wrong = 0.0;
        RealGrid counts(C, K, 0.0);
        for (const LossTrajectory& run : runs) {
            const TrajectoryPoint& p = run.points[t];
            loss_sum += p.loss;
            bool any = false;
            for (std::size_t i = 0; i < C; ++i) {
                if (p.itr[i] != truth[i]) {
                    wrong[i] += 1.0;
                    any = true;
                }
            }
            if (any) any_wrong += 1.0;
            for (std::size_t i = 0; i < C; ++i)
                for (std::size_t j = 0; j < K; ++j)
                    counts(i, j) += static_cast<double>(p.counts(i, j));
        }
        for (double& w : wrong) w /= reps;
        for (double& c : counts) c /= reps;
        set.mean_loss.push_back(loss_sum / reps);
        set.empirical_error_max.push_back(*std::max_element(wrong.begin(), wrong.end()));
        set.empirical_error_any.push_back(any_wrong / reps);
        set.subpopulation_error.push_back(std::move(wrong));
        set.mean_counts.push_back(std::move(counts));
    }
    set.runs = std::move(runs);
    return set;
}

ReplicationSet replicate(const RunConfig& config, std::size_t reps, std::size_t threads) {
    if (reps < 1) throw std::invalid_argument("need at least one replication");
    config.validate();
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, reps);

    std::vector<LossTrajectory> runs(reps);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t r = next++; r < reps; r = next++) {
            try {
                auto policy = make_policy(config.policy, config.policy_config, config.dataset);
                Rng rng = replication_rng(config.seed, r);
                runs[r] = run_trial(config, *policy, rng);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };

    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return aggregate(config.dataset, std::move(runs));
}

}  // namespace trialbandit
