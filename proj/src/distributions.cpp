#include "qwalk/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double log_choose(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

void require_probability(double p, const char* who) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError(std::string(who) + ": p must lie in (0, 1), got " + std::to_string(p));
}

void require_nonnegative(int k, const char* who) {
    if (k < 0) throw DomainError(std::string(who) + ": k must be non-negative, got " + std::to_string(k));
}

// Cut-off for enumerating an unbounded pmf: past the mode and below this
// mass, remaining terms cannot move a 1e-12 budget.
constexpr double kNegligibleMass = 1e-30;
constexpr int kMaxEnumeratedJump = 1'000'000;

}  // namespace

// ---------------------------------------------------------------------------

double pmf_poisson(double lambda, int k) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("poisson: lambda must be positive");
    require_nonnegative(k, "poisson");
    return std::exp(k * std::log(lambda) - lambda - std::lgamma(k + 1.0));
}

double pmf_binomial(int n, double p, int k) {
    if (n < 0) throw DomainError("binomial: n must be non-negative");
    require_probability(p, "binomial");
    if (k < 0 || k > n) throw DomainError("binomial: k must lie in [0, n], got " + std::to_string(k));
    return std::exp(log_choose(n, k) + k * std::log(p) + (n - k) * std::log1p(-p));
}

double pmf_hypergeometric(int N, int K, int n, int k) {
    if (!(K > 0 && K <= N && n > 0 && n <= N))
        throw DomainError("hypergeometric: need 0 < K <= N and 0 < n <= N");
    if (k < 0 || k > n) throw DomainError("hypergeometric: k must lie in [0, n], got " + std::to_string(k));
    if (k < std::max(0, n + K - N) || k > std::min(n, K)) return 0.0;
    return std::exp(log_choose(K, k) + log_choose(N - K, n - k) - log_choose(N, n));
}

double pmf_negative_binomial(int r, double p, int k) {
    if (r < 1) throw DomainError("negative binomial: r must be >= 1");
    require_probability(p, "negative binomial");
    require_nonnegative(k, "negative binomial");
    return std::exp(log_choose(k + r - 1, k) + r * std::log1p(-p) + k * std::log(p));
}

double pmf_geometric(double p, int k) {
    require_probability(p, "geometric");
    require_nonnegative(k, "geometric");
    return p * std::pow(1.0 - p, k);
}

// ---------------------------------------------------------------------------

void validate(const DistributionSpec& spec) {
    if (!(spec.tail_tolerance > 0.0 && spec.tail_tolerance < 1.0))
        throw DomainError("tail tolerance must lie in (0, 1), got " + std::to_string(spec.tail_tolerance));
    std::visit(overloaded{
                   [](const Poisson& d) {
                       if (!(d.lambda > 0.0) || !std::isfinite(d.lambda))
                           throw DomainError("poisson: lambda must be positive");
                   },
                   [](const Binomial& d) {
                       if (d.n < 1) throw DomainError("binomial: n must be >= 1");
                       require_probability(d.p, "binomial");
                   },
                   [](const Hypergeometric& d) {
                       if (!(d.K > 0 && d.K <= d.N && d.n > 0 && d.n <= d.N))
                           throw DomainError("hypergeometric: need 0 < K <= N and 0 < n <= N");
                   },
                   [](const NegativeBinomial& d) {
                       if (d.r < 1) throw DomainError("negative binomial: r must be >= 1");
                       require_probability(d.p, "negative binomial");
                   },
                   [](const Geometric& d) { require_probability(d.p, "geometric"); },
                   [](const Constant& d) {
                       if (d.jump < 0) throw DomainError("constant: jump must be non-negative");
                   },
               },
               spec.params);
}

std::string family_name(const DistributionParams& params) {
    return std::visit(overloaded{
                          [](const Poisson&) { return std::string("poisson"); },
                          [](const Binomial&) { return std::string("binomial"); },
                          [](const Hypergeometric&) { return std::string("hypergeom"); },
                          [](const NegativeBinomial&) { return std::string("negbinom"); },
                          [](const Geometric&) { return std::string("geometric"); },
                          [](const Constant&) { return std::string("constant"); },
                      },
                      params);
}

double raw_pmf(const DistributionSpec& spec, int k) {
    require_nonnegative(k, "raw_pmf");
    return std::visit(overloaded{
                          [k](const Poisson& d) { return pmf_poisson(d.lambda, k); },
                          [k](const Binomial& d) { return k > d.n ? 0.0 : pmf_binomial(d.n, d.p, k); },
                          [k](const Hypergeometric& d) {
                              return k > d.n ? 0.0 : pmf_hypergeometric(d.N, d.K, d.n, k);
                          },
                          [k](const NegativeBinomial& d) { return pmf_negative_binomial(d.r, d.p, k); },
                          [k](const Geometric& d) { return pmf_geometric(d.p, k); },
                          [k](const Constant& d) { return k == d.jump ? 1.0 : 0.0; },
                      },
                      spec.params);
}

std::optional<int> support_max(const DistributionParams& params) {
    return std::visit(overloaded{
                          [](const Poisson&) -> std::optional<int> { return std::nullopt; },
                          [](const Binomial& d) -> std::optional<int> { return d.n; },
                          [](const Hypergeometric& d) -> std::optional<int> { return std::min(d.n, d.K); },
                          [](const NegativeBinomial&) -> std::optional<int> { return std::nullopt; },
                          [](const Geometric&) -> std::optional<int> { return std::nullopt; },
                          [](const Constant& d) -> std::optional<int> { return d.jump; },
                      },
                      params);
}

Moments nominal_moments(const DistributionParams& params) {
    return std::visit(overloaded{
                          [](const Poisson& d) { return Moments{d.lambda, d.lambda}; },
                          [](const Binomial& d) { return Moments{d.n * d.p, d.n * d.p * (1.0 - d.p)}; },
                          [](const Hypergeometric& d) {
                              const double N = d.N, K = d.K, n = d.n;
                              const double mean = n * K / N;
                              const double var = N > 1 ? mean * (N - K) / N * (N - n) / (N - 1.0) : 0.0;
                              return Moments{mean, var};
                          },
                          [](const NegativeBinomial& d) {
                              const double q = 1.0 - d.p;
                              return Moments{d.p * d.r / q, d.p * d.r / (q * q)};
                          },
                          [](const Geometric& d) {
                              return Moments{(1.0 - d.p) / d.p, (1.0 - d.p) / (d.p * d.p)};
                          },
                          [](const Constant& d) { return Moments{static_cast<double>(d.jump), 0.0}; },
                      },
                      params);
}

// ---------------------------------------------------------------------------

TruncatedJumpPmf::TruncatedJumpPmf(std::vector<double> raw, double raw_tail_mass)
    : probs_(std::move(raw)), raw_tail_mass_(raw_tail_mass) {
    if (probs_.empty()) throw DomainError("jump pmf needs at least one value");
    for (double p : probs_)
        if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError("jump pmf holds a negative or non-finite mass");
    raw_head_mass_ = std::accumulate(probs_.begin(), probs_.end(), 0.0);
    if (!(raw_head_mass_ > 0.0)) throw DomainError("jump pmf has zero total mass");
    for (double& p : probs_) p /= raw_head_mass_;

    cdf_.resize(probs_.size());
    std::partial_sum(probs_.begin(), probs_.end(), cdf_.begin());
    cdf_.back() = 1.0;
}

TruncatedJumpPmf TruncatedJumpPmf::from_probs(std::vector<double> probs) {
    return TruncatedJumpPmf(std::move(probs), 0.0);
}

TruncatedJumpPmf truncate(const DistributionSpec& spec) {
    validate(spec);

    if (const auto top = support_max(spec.params)) {
        std::vector<double> raw(static_cast<std::size_t>(*top) + 1);
        for (int k = 0; k <= *top; ++k) raw[static_cast<std::size_t>(k)] = raw_pmf(spec, k);
        return TruncatedJumpPmf(std::move(raw), 0.0);
    }

    // Enumerate until the terms are negligible and decreasing, then pick the
    // smallest R whose explicitly summed tail is within tolerance.
    const double mean = nominal_moments(spec.params).mean;
    std::vector<double> all;
    for (int k = 0;; ++k) {
        const double p = raw_pmf(spec, k);
        all.push_back(p);
        if (k > mean && p < kNegligibleMass) break;
        if (k >= kMaxEnumeratedJump) throw DomainError("jump distribution tail does not decay");
    }
    std::vector<double> suffix(all.size() + 1, 0.0);
    for (std::size_t k = all.size(); k-- > 0;) suffix[k] = suffix[k + 1] + all[k];

    std::size_t cut = 0;
    while (suffix[cut + 1] > spec.tail_tolerance) ++cut;
    all.resize(cut + 1);
    return TruncatedJumpPmf(std::move(all), suffix[cut + 1]);
}

Moments moments(const TruncatedJumpPmf& pmf) {
    double mean = 0.0;
    const auto& p = pmf.probs();
    for (std::size_t j = 0; j < p.size(); ++j) mean += p[j] * static_cast<double>(j);
    double var = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        const double d = static_cast<double>(j) - mean;
        var += p[j] * d * d;
    }
    return {mean, var};
}

int sample(const TruncatedJumpPmf& pmf, double u) {
    if (!(u >= 0.0 && u < 1.0)) throw DomainError("uniform deviate must lie in [0, 1), got " + std::to_string(u));
    const auto& cdf = pmf.cdf();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return static_cast<int>(it - cdf.begin());
}

}  // namespace qwalk
