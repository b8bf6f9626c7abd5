#include "qwalk/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "qwalk/errors.hpp"
#include "qwalk/scaling.hpp"
#include "qwalk/seeding.hpp"

namespace qwalk {

std::string to_string(DisorderMode mode) { return mode == DisorderMode::static_ ? "static" : "dynamic"; }

DisorderMode parse_disorder_mode(std::string_view text) {
    if (text == "dynamic") return DisorderMode::dynamic;
    if (text == "static") return DisorderMode::static_;
    throw UsageError("unknown disorder mode '" + std::string(text) + "' (expected dynamic or static)");
}

Realization sample_dynamic_realization(const TruncatedJumpPmf& pmf, int iterations, std::uint64_t seed,
                                       std::size_t index) {
    if (iterations < 1) throw DomainError("a realization needs at least one iteration");
    UniformSource uniform(seed);
    std::vector<int> jumps(static_cast<std::size_t>(iterations));
    for (int& j : jumps) j = sample(pmf, uniform.next());
    return Realization{iterations, std::move(jumps), seed, index};
}

Realization sample_static_realization(const TruncatedJumpPmf& pmf, int iterations, std::uint64_t seed,
                                      std::size_t index, int extent) {
    if (iterations < 1) throw DomainError("a realization needs at least one iteration");
    const int needed = iterations * pmf.max_jump();
    if (extent < 0) extent = needed;
    if (extent < needed)
        throw DomainError("static realization extent " + std::to_string(extent) + " is below T*R = " +
                          std::to_string(needed));
    UniformSource uniform(seed);
    // Centre-out draw order (0, +1, -1, +2, -2, ...): a realization's map on a
    // smaller extent is the restriction of its map on a larger one.
    std::vector<int> sites(static_cast<std::size_t>(2 * extent + 1));
    sites[static_cast<std::size_t>(extent)] = sample(pmf, uniform.next());
    for (int d = 1; d <= extent; ++d) {
        sites[static_cast<std::size_t>(extent + d)] = sample(pmf, uniform.next());
        sites[static_cast<std::size_t>(extent - d)] = sample(pmf, uniform.next());
    }
    return Realization{iterations, SiteJumpMap(extent, std::move(sites)), seed, index};
}

RealizationOutcome evaluate_realization(const Realization& realization, const CoinOperator& coin) {
    if (const auto* jumps = std::get_if<std::vector<int>>(&realization.disorder)) {
        if (static_cast<int>(jumps->size()) != realization.iterations)
            throw DomainError("dynamic realization length differs from its iteration count");
        return {std_dev(position_distribution(run_dynamic(*jumps, coin))), {}};
    }
    StaticRun run = run_static(realization.iterations, std::get<SiteJumpMap>(realization.disorder), coin);
    return {std_dev(position_distribution(run.state)), std::move(run.norm_log)};
}

double sigma_of_realization(const Realization& realization, const CoinOperator& coin) {
    return evaluate_realization(realization, coin).sigma;
}

namespace {

struct Slot {
    double sigma = 0.0;
    double max_dev = 0.0;
    double mean_dev = 0.0;
};

Slot evaluate_slot(const TruncatedJumpPmf& pmf, int iterations, const EnsembleOptions& options,
                   const CoinOperator& coin, std::size_t index) {
    const std::uint64_t seed = derive_seed(options.master_seed, index);
    const Realization r = options.mode == DisorderMode::dynamic
                              ? sample_dynamic_realization(pmf, iterations, seed, index)
                              : sample_static_realization(pmf, iterations, seed, index);
    RealizationOutcome out = evaluate_realization(r, coin);
    Slot slot{out.sigma, 0.0, 0.0};
    for (double norm : out.norm_log) {
        const double dev = std::abs(norm - 1.0);
        slot.max_dev = std::max(slot.max_dev, dev);
        slot.mean_dev += dev;
    }
    if (!out.norm_log.empty()) slot.mean_dev /= static_cast<double>(out.norm_log.size());
    return slot;
}

}  // namespace

EnsemblePoint quenched_average(const TruncatedJumpPmf& pmf, int iterations, const EnsembleOptions& options,
                               const CoinOperator& coin) {
    const std::size_t n = options.realizations;
    if (n == 0) throw DomainError("quenched average needs at least one realization");
    if (iterations < 1) throw DomainError("quenched average needs at least one iteration");

    std::vector<Slot> slots(n);
    unsigned workers = options.workers ? options.workers : std::max(1U, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                slots[i] = evaluate_slot(pmf, iterations, options, coin, i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(n);
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    // Index-ordered reduction.
    EnsemblePoint point;
    point.iterations = iterations;
    point.n = n;
    point.master_seed = options.master_seed;
    point.mode = options.mode;
    // Shifted sum: exact when every realization gives the same sigma.
    const double shift = slots.front().sigma;
    double sum = 0.0;
    for (const Slot& s : slots) {
        sum += s.sigma - shift;
        point.max_norm_deviation = std::max(point.max_norm_deviation, s.max_dev);
        point.mean_norm_deviation += s.mean_dev;
    }
    point.mean_sigma = shift + sum / static_cast<double>(n);
    point.mean_norm_deviation /= static_cast<double>(n);
    if (n > 1) {
        double ss = 0.0;
        for (const Slot& s : slots) ss += (s.sigma - point.mean_sigma) * (s.sigma - point.mean_sigma);
        point.std_error = std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
    }
    return point;
}

EnsemblePoint quenched_average(const DistributionSpec& spec, int iterations, const EnsembleOptions& options) {
    return quenched_average(truncate(spec), iterations, options, hadamard());
}

}  // namespace qwalk
