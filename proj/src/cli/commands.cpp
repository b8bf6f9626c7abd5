#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "qwalk/cli.hpp"
#include "qwalk/csv.hpp"
#include "qwalk/dist_spec.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/seeding.hpp"
#include "qwalk/walk.hpp"

namespace qwalk::cli {

DistributionSpec paper_poisson1() { return DistributionSpec{Poisson{1.0}, 1e-3}; }

SweepResult run_sweep(const TruncatedJumpPmf& pmf, std::span<const int> grid, const EnsembleOptions& options) {
    SweepResult result;
    result.points.reserve(grid.size());
    for (int t : grid) result.points.push_back(quenched_average(pmf, t, options, hadamard()));
    result.fit = fit_points(result.points, &result.excluded);
    return result;
}

ScalingFit fit_points(std::span<const EnsemblePoint> points, std::size_t* excluded) {
    std::vector<EnsemblePoint> kept;
    for (const auto& p : points)
        if (p.mean_sigma > 0.0) kept.push_back(p);
    if (excluded) *excluded = points.size() - kept.size();
    if (kept.size() < 2)
        throw DomainError("degenerate input: fewer than two points with <sigma> > 0 to fit");
    return fit_line(loglog_points(kept));
}

std::vector<TableEntry> poisson_means_table() {
    return {
        {"Poisson", "Poisson", DistributionSpec{Poisson{0.5}}},
        {"Poisson", "Poisson", paper_poisson1()},
        {"Poisson", "Poisson", DistributionSpec{Poisson{1.5}}},
        {"Poisson", "Poisson", DistributionSpec{Poisson{2.0}}},
    };
}

std::vector<TableEntry> distribution_classes_table() {
    return {
        {"Poisson", "Poisson", paper_poisson1()},
        {"Sub-Poissonian", "Binomial", DistributionSpec{Binomial{2, 0.5}}},
        {"Sub-Poissonian", "Binomial", DistributionSpec{Binomial{9, 1.0 / 9.0}}},
        {"Sub-Poissonian", "Hypergeometric", DistributionSpec{Hypergeometric{4, 2, 2}}},
        {"Super-Poissonian", "Negative binomial", DistributionSpec{NegativeBinomial{1, 0.5}}},
        {"Super-Poissonian", "Negative binomial", DistributionSpec{NegativeBinomial{9, 0.1}}},
        {"Super-Poissonian", "Geometric", DistributionSpec{Geometric{0.5}}},
    };
}

std::vector<TableRow> run_table(std::span<const TableEntry> entries, std::span<const int> grid,
                                const EnsembleOptions& options) {
    std::vector<TableRow> rows;
    for (const auto& e : entries) {
        const TruncatedJumpPmf pmf = truncate(e.spec);
        rows.push_back({e, nominal_moments(e.spec.params), pmf.max_jump(), run_sweep(pmf, grid, options)});
    }
    return rows;
}

namespace {

constexpr std::size_t kReliableStderrCount = 30;

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

struct Context {
    const RunConfig& config;
    std::ostream& out;
    std::ostream& err;
    EnsembleOptions options;

    std::ofstream open(const std::string& name) const {
        std::ofstream f(config.out / name, std::ios::binary);
        if (!f) throw UsageError("cannot write " + (config.out / name).string());
        return f;
    }

    std::vector<std::string> header(std::string_view dist, std::span<const int> grid) const {
        std::ostringstream os;
        os << "# qwalk " << kVersion << " command=" << config.command << " seed=" << options.master_seed
           << " n=" << options.realizations << " mode=" << to_string(options.mode) << " dist=" << dist
           << " grid=" << grid_to_string(grid) << " rng=" << UniformSource::kName;
        std::vector<std::string> lines{os.str()};
        if (options.realizations < kReliableStderrCount)
            lines.push_back("# warning: n < 30, stderr is unreliable");
        return lines;
    }

    void warn_small_n() const {
        if (options.realizations < kReliableStderrCount)
            err << "warning: n = " << options.realizations << " < 30; reported stderr is unreliable\n";
    }
};

std::string truncation_comment(const TruncatedJumpPmf& pmf) {
    const Moments m = moments(pmf);
    return "# R=" + std::to_string(pmf.max_jump()) + " raw_tail_mass=" + csv::format_real(pmf.raw_tail_mass()) +
           " truncated_mean=" + csv::format_real(m.mean) + " truncated_variance=" + csv::format_real(m.variance);
}

DistributionSpec resolve_spec(const RunConfig& config, const char* fallback) {
    if (config.paper_poisson1) {
        const DistributionSpec preset = paper_poisson1();
        if (config.dist) {
            const DistributionSpec given = parse_dist_spec(*config.dist);
            const auto* p = std::get_if<Poisson>(&given.params);
            if (!p || p->lambda != 1.0)
                throw UsageError("--paper-poisson1 applies only to poisson:lambda=1, got '" + *config.dist + "'");
        }
        if (truncate(preset).max_jump() != 5) throw DomainError("Poisson mean-1 preset no longer truncates at R = 5");
        return preset;
    }
    if (config.dist) return parse_dist_spec(*config.dist);
    if (fallback) return parse_dist_spec(fallback);
    throw UsageError("command '" + config.command + "' requires --dist");
}

std::vector<int> resolve_grid(const RunConfig& config, const char* fallback) {
    return parse_grid(config.grid ? *config.grid : fallback);
}

void warn_excluded(std::ostream& err, std::size_t excluded) {
    if (excluded)
        err << "warning: " << excluded << " point(s) with <sigma> = 0 left out of the fit\n";
}

void print_fit(std::ostream& out, const ScalingFit& fit) {
    const double alpha = exponent(fit);
    out << "alpha = " << fixed(alpha, 2) << " (" << describe(classify(alpha)) << "), slope = " << fixed(fit.slope, 2)
        << ", A = " << fixed(fit.amplitude(), 3) << ", r^2 = " << fixed(fit.r_squared, 4) << '\n';
}

// ---------------------------------------------------------------------------

void cmd_walk(Context& ctx) {
    const int T = ctx.config.iterations ? ctx.config.iterations : 160;
    const DistributionSpec spec = resolve_spec(ctx.config, "poisson:lambda=1,tol=0.001");
    const std::string spec_text = to_string(spec);
    const TruncatedJumpPmf pmf = truncate(spec);

    const std::vector<int> ordered_jumps(static_cast<std::size_t>(T), 1);
    const PositionPmf ordered = position_distribution(run_dynamic(ordered_jumps, hadamard()));

    const std::uint64_t seed = derive_seed(ctx.options.master_seed, 0);
    const Realization r = ctx.options.mode == DisorderMode::dynamic ? sample_dynamic_realization(pmf, T, seed)
                                                                    : sample_static_realization(pmf, T, seed);
    PositionPmf disordered;
    if (const auto* jumps = std::get_if<std::vector<int>>(&r.disorder))
        disordered = position_distribution(run_dynamic(*jumps, hadamard()));
    else
        disordered = position_distribution(run_static(T, std::get<SiteJumpMap>(r.disorder), hadamard()).state);

    auto f = ctx.open("walk.csv");
    const std::vector<int> grid{T};
    csv::write_comments(f, ctx.header(spec_text, grid));
    f << truncation_comment(pmf) << '\n';
    f << "site,p_ordered,p_disordered\n";
    const long lo = std::min(ordered.first_site, disordered.first_site);
    const long hi = std::max(ordered.last_site(), disordered.last_site());
    for (long s = lo; s <= hi; ++s)
        f << s << ',' << csv::format_real(ordered.at(s)) << ',' << csv::format_real(disordered.at(s)) << '\n';

    ctx.out << "T = " << T << ": sigma ordered = " << fixed(std_dev(ordered), 4)
            << ", sigma one disordered realization = " << fixed(std_dev(disordered), 4) << '\n';
}

void cmd_ensemble(Context& ctx) {
    const int T = ctx.config.iterations ? ctx.config.iterations : 24;
    const DistributionSpec spec = resolve_spec(ctx.config, nullptr);
    const std::string spec_text = to_string(spec);
    const TruncatedJumpPmf pmf = truncate(spec);
    ctx.warn_small_n();
    const EnsemblePoint p = quenched_average(pmf, T, ctx.options, hadamard());

    auto f = ctx.open("ensemble.csv");
    const std::vector<int> grid{T};
    csv::write_comments(f, ctx.header(spec_text, grid));
    f << truncation_comment(pmf) << '\n';
    csv::write_points(f, std::span(&p, 1), spec_text);
    ctx.out << "T = " << T << ": <sigma> = " << fixed(p.mean_sigma, 4) << " +- " << fixed(p.std_error, 4) << " (n = "
            << p.n << ")\n";
}

void write_sweep_files(Context& ctx, const SweepResult& result, const std::string& spec_text,
                       std::span<const int> grid, const TruncatedJumpPmf& pmf, const std::string& prefix) {
    const auto header = ctx.header(spec_text, grid);
    {
        auto f = ctx.open(prefix + "points.csv");
        csv::write_comments(f, header);
        f << truncation_comment(pmf) << '\n';
        csv::write_points(f, result.points, spec_text);
    }
    {
        auto f = ctx.open(prefix + "fit.csv");
        csv::write_comments(f, header);
        csv::write_fit(f, result.fit, spec_text, ctx.options.mode);
    }
    {
        auto f = ctx.open(prefix + "loglog.csv");
        csv::write_comments(f, header);
        csv::write_loglog(f, result.fit);
    }
}

void cmd_sweep(Context& ctx) {
    const DistributionSpec spec = resolve_spec(ctx.config, nullptr);
    const std::string spec_text = to_string(spec);
    const std::vector<int> grid = resolve_grid(ctx.config, "4:24:+2");
    const TruncatedJumpPmf pmf = truncate(spec);
    ctx.warn_small_n();
    const SweepResult result = run_sweep(pmf, grid, ctx.options);
    warn_excluded(ctx.err, result.excluded);
    write_sweep_files(ctx, result, spec_text, grid, pmf, "");
    for (const auto& p : result.points)
        ctx.out << "T = " << p.iterations << "  <sigma> = " << fixed(p.mean_sigma, 4) << " +- "
                << fixed(p.std_error, 4) << '\n';
    print_fit(ctx.out, result.fit);
}

void cmd_fit(Context& ctx) {
    if (ctx.config.input.empty()) throw UsageError("fit requires --in <points.csv>");
    std::ifstream in(ctx.config.input);
    if (!in) throw UsageError("cannot read " + ctx.config.input.string());
    const csv::PointsTable table = csv::read_points(in);
    std::size_t excluded = 0;
    const ScalingFit fit = fit_points(table.points, &excluded);
    warn_excluded(ctx.err, excluded);
    std::vector<int> grid;
    for (const auto& p : table.points) grid.push_back(p.iterations);

    ctx.options.mode = table.points.front().mode;
    ctx.options.master_seed = table.points.front().master_seed;
    ctx.options.realizations = table.points.front().n;
    const auto header = ctx.header(table.dist_spec, grid);
    {
        auto f = ctx.open("fit.csv");
        csv::write_comments(f, header);
        csv::write_fit(f, fit, table.dist_spec, ctx.options.mode);
    }
    {
        auto f = ctx.open("loglog.csv");
        csv::write_comments(f, header);
        csv::write_loglog(f, fit);
    }
    print_fit(ctx.out, fit);
}

void cmd_table(Context& ctx, bool means) {
    if (ctx.config.dist || ctx.config.paper_poisson1)
        throw UsageError("table commands use fixed distribution presets; drop --dist/--paper-poisson1");
    const std::vector<int> grid = resolve_grid(ctx.config, "4:24:+2");
    ctx.warn_small_n();
    const auto entries = means ? poisson_means_table() : distribution_classes_table();
    const auto rows = run_table(entries, grid, ctx.options);
    for (const auto& row : rows) warn_excluded(ctx.err, row.sweep.excluded);

    const std::string stem = means ? "table_means" : "table_classes";
    const auto header = ctx.header(means ? "preset:poisson-means" : "preset:distribution-classes", grid);
    {
        auto f = ctx.open(stem + ".csv");
        csv::write_comments(f, header);
        f << "class,distribution,mean,variance,scaling_exponent,alpha,intercept,r_squared,R,dist_spec\n";
        for (const auto& row : rows) {
            f << csv::quote(row.entry.group) << ',' << csv::quote(row.entry.label) << ','
              << csv::format_real(row.nominal.mean) << ',' << csv::format_real(row.nominal.variance) << ','
              << fixed(row.sweep.fit.slope, 2) << ',' << csv::format_real(exponent(row.sweep.fit)) << ','
              << csv::format_real(row.sweep.fit.intercept) << ',' << csv::format_real(row.sweep.fit.r_squared) << ','
              << row.max_jump << ',' << csv::quote(to_string(row.entry.spec)) << '\n';
        }
    }
    {
        auto f = ctx.open(stem + "_points.csv");
        csv::write_comments(f, header);
        f << csv::kPointsHeader << '\n';
        for (const auto& row : rows) {
            std::ostringstream body;
            csv::write_points(body, row.sweep.points, to_string(row.entry.spec));
            const std::string s = body.str();
            f << s.substr(s.find('\n') + 1);
        }
    }

    ctx.out << (means ? "distribution  mean  variance  exponent\n" : "class             distribution       variance  exponent\n");
    for (const auto& row : rows) {
        if (means) {
            ctx.out << row.entry.label << "       " << fixed(row.nominal.mean, 2) << "  " << fixed(row.nominal.variance, 3)
                    << "     " << fixed(row.sweep.fit.slope, 2) << '\n';
        } else {
            char line[160];
            std::snprintf(line, sizeof line, "%-17s %-18s %-9s %s\n", row.entry.group.c_str(), row.entry.label.c_str(),
                          fixed(row.nominal.variance, 3).c_str(), fixed(row.sweep.fit.slope, 2).c_str());
            ctx.out << line;
        }
    }
}

void cmd_static(Context& ctx) {
    ctx.options.mode = DisorderMode::static_;
    const DistributionSpec spec = resolve_spec(ctx.config, "poisson:lambda=1,tol=0.001");
    const std::string spec_text = to_string(spec);
    const std::vector<int> grid = resolve_grid(ctx.config, "2:40:+1");
    const TruncatedJumpPmf pmf = truncate(spec);
    ctx.warn_small_n();

    std::vector<EnsemblePoint> points;
    for (int t : grid) points.push_back(quenched_average(pmf, t, ctx.options, hadamard()));

    const auto header = ctx.header(spec_text, grid);
    {
        auto f = ctx.open("static_points.csv");
        csv::write_comments(f, header);
        f << truncation_comment(pmf) << '\n';
        csv::write_points(f, points, spec_text);
    }
    {
        auto f = ctx.open("static_norms.csv");
        csv::write_comments(f, header);
        f << "T,max_norm_deviation,mean_norm_deviation\n";
        for (const auto& p : points)
            f << p.iterations << ',' << csv::format_real(p.max_norm_deviation) << ','
              << csv::format_real(p.mean_norm_deviation) << '\n';
    }

    double lo = INFINITY, hi = -INFINITY;
    for (const auto& p : points) {
        ctx.out << "T = " << p.iterations << "  <sigma> = " << fixed(p.mean_sigma, 4) << " +- " << fixed(p.std_error, 4)
                << "  max|norm-1| = " << fixed(p.max_norm_deviation, 4) << '\n';
        if (p.iterations >= 10) {
            lo = std::min(lo, p.mean_sigma);
            hi = std::max(hi, p.mean_sigma);
        }
    }
    if (lo <= hi) ctx.out << "T >= 10: <sigma> in [" << fixed(lo, 3) << ", " << fixed(hi, 3) << "]\n";
}

}  // namespace

void execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (config.realizations < 1) throw UsageError("--n must be >= 1");
    if (config.iterations < 0) throw UsageError("--T must be >= 1");

    Context ctx{config, out, err, {}};
    ctx.options.realizations = config.realizations;
    ctx.options.master_seed = config.seed;
    ctx.options.mode = parse_disorder_mode(config.mode);
    ctx.options.workers = config.workers;

    std::error_code ec;
    std::filesystem::create_directories(config.out, ec);
    if (ec || !std::filesystem::is_directory(config.out))
        throw UsageError("output directory " + config.out.string() + " is not writable");

    const std::string& c = config.command;
    if (c == "walk") cmd_walk(ctx);
    else if (c == "ensemble") cmd_ensemble(ctx);
    else if (c == "sweep") cmd_sweep(ctx);
    else if (c == "fit") cmd_fit(ctx);
    else if (c == "table-means") cmd_table(ctx, true);
    else if (c == "table-classes") cmd_table(ctx, false);
    else if (c == "static-sweep") cmd_static(ctx);
    else throw UsageError("unknown command '" + c + "'");
}

}  // namespace qwalk::cli
