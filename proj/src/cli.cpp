#include "trialbandit/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "trialbandit/datasets.hpp"
#include "trialbandit/experiment.hpp"
#include "trialbandit/oracle.hpp"

namespace trialbandit {
namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

DatasetSpec lookup_dataset(const std::string& name) {
    try {
        return builtin_dataset(name);
    } catch (const UnknownDataset& e) {
        throw UsageError(e.what());
    }
}

Objective lookup_objective(const std::string& name) {
    if (auto o = parse_objective(name)) return *o;
    throw UsageError("unknown objective '" + name + "' (valid: variance, pics)");
}

PolicyKind lookup_policy(const std::string& name) {
    if (auto p = parse_policy(name)) return *p;
    std::string valid;
    for (PolicyKind k : all_policies()) valid += (valid.empty() ? "" : ", ") + std::string(policy_name(k));
    throw UsageError("unknown policy '" + name + "' (valid: " + valid + ")");
}

void print_grid(std::ostream& out, const RealGrid& grid) {
    for (std::size_t i = 0; i < grid.rows(); ++i) {
        out << "  ";
        for (std::size_t j = 0; j < grid.cols(); ++j)
            out << (j ? " " : "") << std::setw(12) << std::setprecision(8) << grid(i, j);
        out << '\n';
    }
}

void list_datasets(std::ostream& out) {
    out << std::left << std::setw(12) << "name" << std::setw(16) << "subpopulations"
        << std::setw(12) << "treatments"
        << "default_budget\n";
    for (const auto& name : builtin_dataset_names()) {
        const DatasetSpec spec = builtin_dataset(name);
        out << std::setw(12) << name << std::setw(16) << spec.subpopulations() << std::setw(12)
            << spec.treatments() << default_budget(name) << '\n';
    }
    out << std::right;
}

void print_oracle(std::ostream& out, const std::string& name, std::uint64_t budget,
                  const std::string& objective_flag) {
    const DatasetSpec spec = lookup_dataset(name);
    const Objective objective = lookup_objective(objective_flag);
    const double n = static_cast<double>(budget);
    RealGrid allocation;
    double loss = 0.0;
    if (objective == Objective::Variance) {
        allocation = variance_oracle_allocation(spec, n);
        loss = variance_oracle_loss(spec, n);
    } else {
        allocation = pics_surrogate_allocation(spec, n);
        loss = worst_case_pics_loss(spec, allocation);
    }
    out << "dataset " << spec.name << " budget " << budget << " objective "
        << objective_name(objective) << '\n';
    out << "allocation (rows: subpopulations, columns: treatments)\n";
    print_grid(out, allocation);
    out << "loss " << std::setprecision(10) << loss << '\n';
}

struct SimulateArgs {
    std::vector<std::string> datasets;
    std::vector<std::string> policies;
    std::uint64_t budget = 0;
    std::size_t reps = 100;
    std::uint64_t seed = 42;
    double epsilon = 0.1;
    std::uint64_t init_pulls = 5;
    std::string objective = "variance";
    std::uint64_t checkpoint_every = 5;
    std::string ordering = "default";
    std::size_t threads = 1;
    std::string out;
};

int simulate(std::ostream& out, const SimulateArgs& args) {
    ExperimentPlan plan;
    for (const auto& d : args.datasets) plan.datasets.push_back(lookup_dataset(d).name);
    for (const auto& p : args.policies) plan.policies.push_back(lookup_policy(p));
    plan.objective = lookup_objective(args.objective);
    const auto ordering = parse_ordering(args.ordering);
    if (!ordering) throw UsageError("unknown ordering '" + args.ordering + "' (valid: default, reversed)");
    plan.ordering = *ordering;
    plan.budget = args.budget;
    plan.reps = args.reps;
    plan.seed = args.seed;
    plan.epsilon = args.epsilon;
    plan.init_pulls = args.init_pulls;
    plan.checkpoint_every = args.checkpoint_every;
    plan.threads = args.threads;
    try {
        plan.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    const ExperimentResult result = run_experiment(plan);
    if (args.out.empty()) {
        if (result.datasets.size() != 1) throw UsageError("--out is required for several datasets");
        write_csv(out, result.datasets.front(), plan);
        return 0;
    }
    for (const auto& path : write_experiment_csv(result, args.out)) out << "wrote " << path.string() << '\n';
    return 0;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Budgeted minimax bandit laboratory for stratified treatment allocation",
                 "trialbandit"};
    app.require_subcommand(1);

    auto* list_cmd = app.add_subcommand("list-datasets", "Print the built-in datasets");

    std::string oracle_dataset;
    std::uint64_t oracle_budget = 0;
    std::string oracle_objective = "variance";
    auto* oracle_cmd = app.add_subcommand("oracle", "Print the oracle allocation and its loss");
    oracle_cmd->add_option("--dataset", oracle_dataset, "Dataset name")->required();
    oracle_cmd->add_option("--budget", oracle_budget, "Total pulls N")->required()->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--objective", oracle_objective, "variance or pics");

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Run replicated trials and write CSV");
    sim_cmd->add_option("--dataset", sim.datasets, "Dataset name(s)")->required()->delimiter(',');
    sim_cmd->add_option("--policy", sim.policies, "Policy name(s)")->required()->delimiter(',');
    sim_cmd->add_option("--budget", sim.budget, "Total pulls N (default: per dataset)");
    sim_cmd->add_option("--reps", sim.reps, "Replications")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", sim.seed, "Base seed");
    sim_cmd->add_option("--epsilon", sim.epsilon, "Uniform exploration probability")->check(CLI::Range(0.0, 1.0));
    sim_cmd->add_option("--init-pulls", sim.init_pulls, "Initial pulls per arm B")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--objective", sim.objective, "variance or pics");
    sim_cmd->add_option("--checkpoint-every", sim.checkpoint_every, "Pulls between loss checkpoints")
        ->check(CLI::PositiveNumber);
    sim_cmd->add_option("--ordering", sim.ordering, "gafs-max arm ordering: default or reversed");
    sim_cmd->add_option("--threads", sim.threads, "Worker threads (0: all cores)");
    sim_cmd->add_option("--out", sim.out, "Output CSV path (stdout if omitted)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (list_cmd->parsed()) {
            list_datasets(out);
            return 0;
        }
        if (oracle_cmd->parsed()) {
            print_oracle(out, oracle_dataset, oracle_budget, oracle_objective);
            return 0;
        }
        if (sim_cmd->parsed()) return simulate(out, sim);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return kUsageError;
}

}  // namespace trialbandit
