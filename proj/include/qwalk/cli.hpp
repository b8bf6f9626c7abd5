#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/distributions.hpp"
#include "qwalk/ensemble.hpp"
#include "qwalk/scaling.hpp"

namespace qwalk::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kSuccess = 0, kUsageError = 2, kDomainError = 3 };

/// `start:stop:x<factor>` (geometric), `start:stop:+<step>` (arithmetic),
/// a comma list `4,8,16`, or a single value. Must be strictly increasing
/// with every T >= 1.
std::vector<int> parse_grid(std::string_view text);
std::string grid_to_string(std::span<const int> grid);

/// Poisson lambda = 1 truncated at R = 5 (tolerance 1e-3): the tail cut used
/// for the unit-mean Poisson walk.
DistributionSpec paper_poisson1();

struct SweepResult {
    std::vector<EnsemblePoint> points;
    ScalingFit fit;
    std::size_t excluded = 0;  // points with <sigma> = 0, left out of the fit
};

/// Log-log fit over the points with <sigma> > 0. Such zeros only occur for
/// tiny ensembles in which every realization drew all-zero jumps.
ScalingFit fit_points(std::span<const EnsemblePoint> points, std::size_t* excluded = nullptr);

/// quenched_average at every T in the grid, then the log-log line fit.
SweepResult run_sweep(const TruncatedJumpPmf& pmf, std::span<const int> grid, const EnsembleOptions& options);

struct TableEntry {
    std::string group;  // "Poisson", "Sub-Poissonian", ...
    std::string label;  // "Binomial", ...
    DistributionSpec spec;
};

/// Poisson means 0.5, 1.0, 1.5, 2.0.
std::vector<TableEntry> poisson_means_table();
/// Poisson plus the six unit-mean sub-/super-Poissonian configurations.
std::vector<TableEntry> distribution_classes_table();

struct TableRow {
    TableEntry entry;
    Moments nominal;
    int max_jump = 0;
    SweepResult sweep;
};

std::vector<TableRow> run_table(std::span<const TableEntry> entries, std::span<const int> grid,
                                const EnsembleOptions& options);

/// Every subcommand, as parsed from flags and an optional config file.
struct RunConfig {
    std::string command;
    std::optional<std::string> dist;
    std::optional<std::string> grid;
    int iterations = 0;  // walk / ensemble; 0 = command default
    std::size_t realizations = 4000;
    std::uint64_t seed = 1;
    std::string mode = "dynamic";
    std::filesystem::path out = "qwalk-out";
    std::filesystem::path input;  // fit
    bool paper_poisson1 = false;
    unsigned workers = 0;
};

/// Runs one subcommand; files go under config.out. Throws UsageError /
/// DomainError on bad input.
void execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command-line entry point: parses `args` (without the program name),
/// dispatches and maps failures to exit codes 2 (usage) and 3 (numerical or
/// domain).
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace qwalk::cli
