#include <CLI11.hpp>

#include <algorithm>
#include <ostream>

#include "qwalk/cli.hpp"
#include "qwalk/errors.hpp"

namespace qwalk::cli {

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Discrete-time quantum walks with quenched random jump lengths", "qwalk"};
    app.set_version_flag("--version", std::string("qwalk ") + kVersion);
    app.set_config("--config", "", "flat key=value file mirroring the flags (flags win)");
    // dist and grid values contain commas; keep each config value whole
    app.get_config_formatter_base()->arrayDelimiter(';');
    app.require_subcommand(1, 1);

    RunConfig config;
    std::string dist, grid;
    app.add_option("--dist", dist, "jump distribution, e.g. poisson:lambda=1.0 or binomial:n=2,p=0.5");
    app.add_option("--grid", grid, "iteration counts: start:stop:x2, start:stop:+2 or a comma list");
    app.add_option("--T", config.iterations, "iteration count for walk / ensemble")->check(CLI::PositiveNumber);
    app.add_option("--n", config.realizations, "disorder realizations per point")->check(CLI::PositiveNumber);
    app.add_option("--seed", config.seed, "master seed");
    app.add_option("--mode", config.mode, "dynamic or static disorder")->check(CLI::IsMember({"dynamic", "static"}));
    app.add_option("--out", config.out, "output directory");
    app.add_option("--in", config.input, "points CSV to fit (fit command)");
    app.add_option("--workers", config.workers, "worker threads (0 = all cores); never changes results");
    app.add_flag("--paper-poisson1", config.paper_poisson1, "Poisson lambda=1 truncated at R=5, renormalized");

    const std::pair<const char*, const char*> commands[] = {
        {"walk", "position pmf after T steps: ordered vs one disordered realization"},
        {"ensemble", "quenched-averaged dispersion at one T"},
        {"sweep", "quenched averages over a T grid and the log-log exponent fit"},
        {"fit", "refit a points CSV written by sweep"},
        {"table-means", "exponents for Poisson means 0.5, 1, 1.5, 2"},
        {"table-classes", "exponents for the unit-mean sub-/super-Poissonian distributions"},
        {"static-sweep", "static per-site disorder: <sigma>(T) and norm deficits"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForVersion&) {
        out << "qwalk " << kVersion << '\n';
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "qwalk: " << e.what() << '\n';
        return kUsageError;
    }

    config.command = app.get_subcommands().front()->get_name();
    if (!dist.empty()) config.dist = dist;
    if (!grid.empty()) config.grid = grid;

    try {
        execute(config, out, err);
    } catch (const UsageError& e) {
        err << "qwalk: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "qwalk: " << e.what() << '\n';
        return kDomainError;
    }
    return kSuccess;
}

}  // namespace qwalk::cli
