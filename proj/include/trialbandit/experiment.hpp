#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trialbandit/policies.hpp"
#include "trialbandit/simulator.hpp"

namespace trialbandit {

enum class OrderingMode { Natural, Reversed };

std::optional<OrderingMode> parse_ordering(std::string_view name) noexcept;

struct ExperimentPlan {
    std::vector<std::string> datasets;
    std::vector<PolicyKind> policies;
    /// 0 selects default_budget() per dataset.
    std::uint64_t budget = 0;
    std::uint64_t checkpoint_every = 5;
    std::size_t reps = 100;
    std::uint64_t seed = 42;
    Objective objective = Objective::Variance;
    double epsilon = 0.1;
    std::uint64_t init_pulls = 5;
    OrderingMode ordering = OrderingMode::Natural;
    std::size_t threads = 1;

    /// Throws std::invalid_argument or UnknownDataset.
    void validate() const;
};

/// Oracle baseline at each checkpoint: loss and real-valued allocation.
struct OracleCurve {
    std::vector<std::uint64_t> n;
    std::vector<double> loss;
    std::vector<RealGrid> allocation;
};

/// variance_oracle_loss / allocation for the variance objective; exact PICS
/// loss at the surrogate allocation for the PICS objective.
OracleCurve oracle_curve(const DatasetSpec& spec, Objective objective,
                         const std::vector<std::uint64_t>& checkpoints);

struct PolicyResult {
    PolicyKind policy;
    ReplicationSet replications;
};

struct DatasetResult {
    DatasetSpec dataset;
    std::uint64_t budget = 0;
    std::vector<PolicyResult> policies;
    OracleCurve oracle;
};

struct ExperimentResult {
    ExperimentPlan plan;
    std::vector<DatasetResult> datasets;
};

RunConfig make_run_config(const ExperimentPlan& plan, const DatasetSpec& spec, PolicyKind policy);

ExperimentResult run_experiment(const ExperimentPlan& plan);

/// CSV header for a C x K dataset.
std::string csv_header(std::size_t C, std::size_t K);

/// Writes one dataset's rows: per policy, every replication then the "mean"
/// rows; the "oracle" rows last.
void write_csv(std::ostream& out, const DatasetResult& result, const ExperimentPlan& plan);

/// Writes one CSV per dataset. A single dataset goes to `path`; several go
/// to "<stem>_<dataset><ext>" next to it. Returns the files written.
std::vector<std::filesystem::path> write_experiment_csv(const ExperimentResult& result,
                                                        const std::filesystem::path& path);

/// Formats a double with 17 significant digits; +inf becomes "inf".
std::string format_number(double value);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Parses the comma-separated, unquoted format produced by write_csv.
CsvTable read_csv(std::istream& in);

}  // namespace trialbandit
