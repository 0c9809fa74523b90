#include "trialbandit/experiment.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "trialbandit/datasets.hpp"
#include "trialbandit/oracle.hpp"

namespace trialbandit {
namespace {

std::string join(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t k = 0; k < fields.size(); ++k) {
        if (k) line += ',';
        line += fields[k];
    }
    return line;
}

template <class Counts>
void append_counts(std::vector<std::string>& fields, const Counts& counts) {
    for (std::size_t i = 0; i < counts.rows(); ++i)
        for (std::size_t j = 0; j < counts.cols(); ++j) {
            if constexpr (std::is_floating_point_v<std::decay_t<decltype(counts(i, j))>>)
                fields.push_back(format_number(counts(i, j)));
            else
                fields.push_back(std::to_string(counts(i, j)));
        }
}

bool misselected(const std::vector<std::size_t>& itr, const std::vector<std::size_t>& truth) {
    for (std::size_t i = 0; i < truth.size(); ++i)
        if (itr[i] != truth[i]) return true;
    return false;
}

}  // namespace

std::optional<OrderingMode> parse_ordering(std::string_view name) noexcept {
    if (name == "default" || name == "natural") return OrderingMode::Natural;
    if (name == "reversed") return OrderingMode::Reversed;
    return std::nullopt;
}

void ExperimentPlan::validate() const {
    if (datasets.empty()) throw std::invalid_argument("plan names no datasets");
    if (policies.empty()) throw std::invalid_argument("plan names no policies");
    if (reps < 1) throw std::invalid_argument("reps must be at least 1");
    if (checkpoint_every < 1) throw std::invalid_argument("checkpoint spacing must be positive");
    for (const auto& name : datasets) {
        const DatasetSpec spec = builtin_dataset(name);
        for (PolicyKind p : policies) make_run_config(*this, spec, p).validate();
    }
}

RunConfig make_run_config(const ExperimentPlan& plan, const DatasetSpec& spec, PolicyKind policy) {
    RunConfig config;
    config.dataset = spec;
    config.policy = policy;
    config.policy_config.epsilon = plan.epsilon;
    config.policy_config.init_pulls = plan.init_pulls;
    if (plan.ordering == OrderingMode::Reversed)
        config.policy_config.ordering = reversed_ordering(spec.arm_count());
    config.budget = plan.budget ? plan.budget : default_budget(spec.name);
    config.seed = plan.seed;
    config.objective = plan.objective;
    if (config.budget >= config.init_size())
        config.checkpoints =
            default_checkpoints(config.init_size(), config.budget, plan.checkpoint_every);
    return config;
}

OracleCurve oracle_curve(const DatasetSpec& spec, Objective objective,
                         const std::vector<std::uint64_t>& checkpoints) {
    OracleCurve curve;
    for (std::uint64_t n : checkpoints) {
        const double budget = static_cast<double>(n);
        curve.n.push_back(n);
        if (objective == Objective::Variance) {
            curve.allocation.push_back(variance_oracle_allocation(spec, budget));
            curve.loss.push_back(variance_oracle_loss(spec, budget));
        } else {
            curve.allocation.push_back(pics_surrogate_allocation(spec, budget));
            curve.loss.push_back(worst_case_pics_loss(spec, curve.allocation.back()));
        }
    }
    return curve;
}

ExperimentResult run_experiment(const ExperimentPlan& plan) {
    plan.validate();
    ExperimentResult result{plan, {}};
    for (const auto& name : plan.datasets) {
        DatasetResult ds;
        ds.dataset = builtin_dataset(name);
        for (PolicyKind policy : plan.policies) {
            const RunConfig config = make_run_config(plan, ds.dataset, policy);
            ds.budget = config.budget;
            ds.policies.push_back({policy, replicate(config, plan.reps, plan.threads)});
        }
        ds.oracle = oracle_curve(ds.dataset, plan.objective, ds.policies.front().replications.checkpoints);
        result.datasets.push_back(std::move(ds));
    }
    return result;
}

std::string format_number(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string csv_header(std::size_t C, std::size_t K) {
    std::vector<std::string> fields{"dataset", "policy", "objective", "replication", "seed",
                                    "n",       "loss",   "empirical_error_max",
                                    "empirical_error_any"};
    for (std::size_t i = 1; i <= C; ++i)
        for (std::size_t j = 1; j <= K; ++j)
            fields.push_back("count_" + std::to_string(i) + "_" + std::to_string(j));
    return join(fields);
}

void write_csv(std::ostream& out, const DatasetResult& result, const ExperimentPlan& plan) {
    const DatasetSpec& spec = result.dataset;
    const std::string objective(objective_name(plan.objective));
    const std::string seed = std::to_string(plan.seed);
    const std::vector<std::size_t> truth = true_best_treatments(spec);

    out << csv_header(spec.subpopulations(), spec.treatments()) << '\n';
    for (const PolicyResult& pr : result.policies) {
        const std::string policy(policy_name(pr.policy));
        const ReplicationSet& set = pr.replications;
        for (std::size_t r = 0; r < set.runs.size(); ++r) {
            for (const TrajectoryPoint& p : set.runs[r].points) {
                const std::string wrong = misselected(p.itr, truth) ? "1" : "0";
                std::vector<std::string> fields{spec.name, policy, objective, std::to_string(r), seed,
                                                std::to_string(p.n), format_number(p.loss), wrong, wrong};
                append_counts(fields, p.counts);
                out << join(fields) << '\n';
            }
        }
        for (std::size_t t = 0; t < set.checkpoints.size(); ++t) {
            std::vector<std::string> fields{spec.name,
                                            policy,
                                            objective,
                                            "mean",
                                            seed,
                                            std::to_string(set.checkpoints[t]),
                                            format_number(set.mean_loss[t]),
                                            format_number(set.empirical_error_max[t]),
                                            format_number(set.empirical_error_any[t])};
            append_counts(fields, set.mean_counts[t]);
            out << join(fields) << '\n';
        }
    }
    const OracleCurve& oracle = result.oracle;
    for (std::size_t t = 0; t < oracle.n.size(); ++t) {
        std::vector<std::string> fields{spec.name, "oracle", objective, "oracle", seed,
                                        std::to_string(oracle.n[t]), format_number(oracle.loss[t]),
                                        "", ""};
        append_counts(fields, oracle.allocation[t]);
        out << join(fields) << '\n';
    }
}

std::vector<std::filesystem::path> write_experiment_csv(const ExperimentResult& result,
                                                        const std::filesystem::path& path) {
    std::vector<std::filesystem::path> written;
    for (const DatasetResult& ds : result.datasets) {
        std::filesystem::path target = path;
        if (result.datasets.size() > 1) {
            target = path.parent_path() /
                     (path.stem().string() + "_" + ds.dataset.name + path.extension().string());
        }
        std::ofstream file(target, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open " + target.string() + " for writing");
        write_csv(file, ds, result.plan);
        file.flush();
        if (!file) throw std::runtime_error("failed writing " + target.string());
        written.push_back(target);
    }
    return written;
}

CsvTable read_csv(std::istream& in) {
    auto split = [](const std::string& line) {
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ss(line);
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (!line.empty() && line.back() == ',') fields.emplace_back();
        return fields;
    };
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) return table;
    table.header = split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        table.rows.push_back(split(line));
    }
    return table;
}

}  // namespace trialbandit
