#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/distributions.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

enum class DisorderMode {
    dynamic,  // one jump length per time step, shared by all sites
    static_,  // one fixed jump length per site
};

std::string to_string(DisorderMode mode);
/// Accepts "dynamic" or "static"; UsageError otherwise.
DisorderMode parse_disorder_mode(std::string_view text);

/// One quenched disorder sample, fixed for the whole run.
struct Realization {
    int iterations = 0;
    std::variant<std::vector<int>, SiteJumpMap> disorder;
    std::uint64_t seed = 0;
    std::size_t index = 0;

    DisorderMode mode() const {
        return std::holds_alternative<SiteJumpMap>(disorder) ? DisorderMode::static_ : DisorderMode::dynamic;
    }
};

/// `iterations` i.i.d. jump lengths drawn from `pmf`.
Realization sample_dynamic_realization(const TruncatedJumpPmf& pmf, int iterations, std::uint64_t seed,
                                       std::size_t index = 0);

/// One independent draw per site in [-extent, extent], drawn centre-out so
/// the sites near the origin do not depend on `extent`. extent < iterations * R is rejected; pass extent = -1 for
/// exactly iterations * R.
Realization sample_static_realization(const TruncatedJumpPmf& pmf, int iterations, std::uint64_t seed,
                                      std::size_t index = 0, int extent = -1);

struct RealizationOutcome {
    double sigma = 0.0;
    /// Pre-renormalization norm per iteration; empty for dynamic runs.
    std::vector<double> norm_log;
};

RealizationOutcome evaluate_realization(const Realization& realization, const CoinOperator& coin);

/// Central standard deviation of the final position pmf.
double sigma_of_realization(const Realization& realization, const CoinOperator& coin);

/// Quenched-averaged dispersion at one iteration count.
struct EnsemblePoint {
    int iterations = 0;
    double mean_sigma = 0.0;
    /// Sample standard deviation of sigma over realizations / sqrt(n); 0 for n = 1.
    double std_error = 0.0;
    std::size_t n = 0;
    std::uint64_t master_seed = 0;
    DisorderMode mode = DisorderMode::dynamic;
    /// Static mode only: max and mean of |norm - 1| over every step of every
    /// realization (both 0 in dynamic mode).
    double max_norm_deviation = 0.0;
    double mean_norm_deviation = 0.0;
};

struct EnsembleOptions {
    std::size_t realizations = 4000;
    std::uint64_t master_seed = 0;
    DisorderMode mode = DisorderMode::dynamic;
    /// Worker threads; 0 picks std::thread::hardware_concurrency().
    unsigned workers = 0;
};

/// Mean of per-realization sigma over realizations 0..n-1 seeded by
/// derive_seed(master_seed, index). Realizations run concurrently but the
/// reduction is done in index order, so the result does not depend on the
/// worker count.
EnsemblePoint quenched_average(const TruncatedJumpPmf& pmf, int iterations, const EnsembleOptions& options,
                               const CoinOperator& coin);
EnsemblePoint quenched_average(const DistributionSpec& spec, int iterations, const EnsembleOptions& options);

}  // namespace qwalk
