#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "trialbandit/datasets.hpp"
#include "trialbandit/oracle.hpp"
#include "trialbandit/simulator.hpp"

using namespace trialbandit;

namespace {

RunConfig config_for(const std::string& dataset, PolicyKind policy, std::uint64_t budget,
                     Objective objective = Objective::Variance, std::uint64_t seed = 42) {
    RunConfig c;
    c.dataset = builtin_dataset(dataset);
    c.policy = policy;
    c.budget = budget;
    c.objective = objective;
    c.seed = seed;
    return c;
}

class AlwaysFirstArm final : public AllocationPolicy {
public:
    PolicyDecision decide(const TrialState&, Rng&) override { return {{{0, 0}}}; }
};

}  // namespace

TEST(SampleResponse, MomentsMatchDs1Arm) {
    const auto ds1 = builtin_dataset("DS1");
    Rng rng(1);
    const int draws = 100000;
    ArmStats stats;
    for (int k = 0; k < draws; ++k) stats.push(sample_response(ds1, {0, 0}, rng));
    EXPECT_NEAR(stats.mean, 1.0, 3.0 * std::sqrt(1000.0 / draws));
    EXPECT_NEAR(stats.sample_variance(), 1000.0, 3.0 * 1000.0 * std::sqrt(2.0 / (draws - 1)));
}

TEST(SampleResponse, EqualSeedsGiveEqualStreams) {
    const auto ds1 = builtin_dataset("DS1");
    Rng a = replication_rng(99, 3), b = replication_rng(99, 3), c = replication_rng(99, 4);
    bool differs = false;
    for (int k = 0; k < 100; ++k) {
        const double x = sample_response(ds1, {1, 1}, a);
        EXPECT_EQ(x, sample_response(ds1, {1, 1}, b));
        differs = differs || x != sample_response(ds1, {1, 1}, c);
    }
    EXPECT_TRUE(differs);
}

TEST(RunTrial, InitOnlyBudget) {
    for (PolicyKind p : all_policies()) {
        const auto traj = run_trial(config_for("DS1", p, 40));
        ASSERT_EQ(traj.points.size(), 1u);
        EXPECT_EQ(traj.points[0].n, 40u);
        EXPECT_DOUBLE_EQ(traj.points[0].loss, 400.0);
        for (auto c : traj.final_counts) EXPECT_EQ(c, 5u);
    }
}

TEST(RunTrial, RejectsBudgetBelowInit) {
    EXPECT_THROW(run_trial(config_for("DS1", PolicyKind::Areoa, 39)), std::invalid_argument);
}

TEST(RunTrial, RejectsCheckpointsOutsideRange) {
    auto c = config_for("DS1", PolicyKind::Areoa, 100);
    c.checkpoints = {30, 100};
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.checkpoints = {50, 45};
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.checkpoints = {40, 101};
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(RunTrial, DeterministicAndExactBudget) {
    for (PolicyKind p : all_policies()) {
        const auto c = config_for("DS22", p, 200, Objective::Pics, 7);
        const auto a = run_trial(c);
        const auto b = run_trial(c);
        EXPECT_EQ(a, b) << policy_name(p);
        const auto total = std::accumulate(a.final_counts.begin(), a.final_counts.end(), std::uint64_t{0});
        EXPECT_EQ(total, 200u);
        ASSERT_EQ(a.points.size(), c.resolved_checkpoints().size());
        for (std::size_t t = 0; t < a.points.size(); ++t) {
            EXPECT_EQ(a.points[t].n, c.resolved_checkpoints()[t]);
            EXPECT_GE(a.points[t].loss, 0.0);
        }
    }
}

TEST(RunTrial, DriverHarnessAlwaysFirstArm) {
    auto c = config_for("DS21", PolicyKind::Areoa, 150);
    AlwaysFirstArm policy;
    Rng rng(3);
    const auto traj = run_trial(c, policy, rng);
    EXPECT_EQ(traj.final_counts(0, 0), 150u - 60u + 5u);
    EXPECT_EQ(traj.final_counts(1, 2), 5u);
}

TEST(RunTrial, GroupPolicyHitsEveryCheckpoint) {
    auto c = config_for("DS21", PolicyKind::MinmaxPicsGrp, 200, Objective::Pics);
    c.checkpoints = default_checkpoints(60, 200, 1);
    const auto traj = run_trial(c);
    ASSERT_EQ(traj.points.size(), 141u);
    EXPECT_EQ(traj.points.back().n, 200u);
}

TEST(Replicate, SingleRepEqualsTrajectory) {
    const auto c = config_for("DS1", PolicyKind::Areoa, 120);
    const auto set = replicate(c, 1);
    const auto single = run_trial(c);
    ASSERT_EQ(set.runs.size(), 1u);
    EXPECT_EQ(set.runs[0], single);
    for (std::size_t t = 0; t < set.checkpoints.size(); ++t)
        EXPECT_EQ(set.mean_loss[t], single.points[t].loss);
}

TEST(Replicate, ThreadCountDoesNotChangeResults) {
    const auto c = config_for("DS2", PolicyKind::Areoa, 150);
    const auto serial = replicate(c, 12, 1);
    const auto parallel = replicate(c, 12, 4);
    EXPECT_EQ(serial.runs, parallel.runs);
    EXPECT_EQ(serial.mean_loss, parallel.mean_loss);
    EXPECT_EQ(serial.empirical_error_max, parallel.empirical_error_max);
}

TEST(Replicate, MeanIsArithmeticMean) {
    const auto set = replicate(config_for("DS4", PolicyKind::AaRandom, 120), 15);
    for (std::size_t t = 0; t < set.checkpoints.size(); ++t) {
        double sum = 0.0;
        for (const auto& r : set.runs) sum += r.points[t].loss;
        EXPECT_NEAR(set.mean_loss[t], sum / 15.0, 1e-12 * std::abs(set.mean_loss[t]));
    }
}

TEST(Replicate, OracleLowerBoundsRealizedLoss) {
    for (PolicyKind p : {PolicyKind::Areoa, PolicyKind::AaRandom, PolicyKind::GafsMax}) {
        const auto c = config_for("DS1", p, 200);
        const auto set = replicate(c, 30);
        for (std::size_t t = 0; t < set.checkpoints.size(); ++t)
            EXPECT_GE(set.mean_loss[t],
                      variance_oracle_loss(c.dataset, static_cast<double>(set.checkpoints[t])) - 1e-9);
    }
}

TEST(Replicate, Ds1OrderingAgainstOracle) {
    const auto random = replicate(config_for("DS1", PolicyKind::AaRandom, 200), 100);
    const auto areoa = replicate(config_for("DS1", PolicyKind::Areoa, 200), 100);
    const double oracle = variance_oracle_loss(builtin_dataset("DS1"), 200);
    EXPECT_NEAR(oracle, 26.0, 1e-9);
    // Uniform expected counts give 80; multinomial noise only pushes the max up.
    EXPECT_GT(random.mean_loss.back(), 80.0 * 0.9);
    EXPECT_LT(random.mean_loss.back(), 80.0 * 1.6);
    EXPECT_LT(oracle, areoa.mean_loss.back());
    EXPECT_LT(areoa.mean_loss.back(), random.mean_loss.back());
}

TEST(Replicate, Ds21EasyCaseHasNoErrors) {
    for (PolicyKind p : {PolicyKind::MinmaxPicsSeq, PolicyKind::MinmaxPicsGrp}) {
        const auto set = replicate(config_for("DS21", p, 200, Objective::Pics), 100);
        EXPECT_LE(set.empirical_error_max.back(), 0.02) << policy_name(p);
    }
}

TEST(Aggregate, ErrorFrequencies) {
    const auto spec = builtin_dataset("DS21");
    auto point = [](std::vector<std::size_t> itr) {
        TrajectoryPoint p;
        p.n = 60;
        p.loss = 0.1;
        p.itr = std::move(itr);
        p.counts = Grid<std::uint64_t>(4, 3, 5);
        return p;
    };
    std::vector<LossTrajectory> runs(4);
    runs[0].points = {point({0, 0, 0, 0})};
    runs[1].points = {point({1, 0, 0, 0})};
    runs[2].points = {point({1, 0, 2, 0})};
    runs[3].points = {point({0, 0, 0, 0})};
    const auto set = aggregate(spec, runs);
    EXPECT_DOUBLE_EQ(set.subpopulation_error[0][0], 0.5);
    EXPECT_DOUBLE_EQ(set.subpopulation_error[0][2], 0.25);
    EXPECT_DOUBLE_EQ(set.empirical_error_max[0], 0.5);
    EXPECT_DOUBLE_EQ(set.empirical_error_any[0], 0.5);

    runs[3].points[0].n = 65;
    EXPECT_THROW(aggregate(spec, runs), std::invalid_argument);
}
