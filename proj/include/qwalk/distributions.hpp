#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qwalk {

// Jump-length distribution families. Parameter names follow the usual
// textbook conventions for each family.
struct Poisson {
    double lambda;
    bool operator==(const Poisson&) const = default;
};
struct Binomial {
    int n;
    double p;
    bool operator==(const Binomial&) const = default;
};
/// Population N with K successes, n draws without replacement.
struct Hypergeometric {
    int N;
    int K;
    int n;
    bool operator==(const Hypergeometric&) const = default;
};
/// Number of successes k before the r-th failure, success probability p.
struct NegativeBinomial {
    int r;
    double p;
    bool operator==(const NegativeBinomial&) const = default;
};
/// Number of failures before the first success.
struct Geometric {
    double p;
    bool operator==(const Geometric&) const = default;
};
/// Degenerate distribution at `jump` (the ordered walk when jump = 1).
struct Constant {
    int jump;
    bool operator==(const Constant&) const = default;
};

using DistributionParams = std::variant<Poisson, Binomial, Hypergeometric, NegativeBinomial, Geometric, Constant>;

inline constexpr double kDefaultTailTolerance = 1e-4;

struct DistributionSpec {
    DistributionParams params;
    double tail_tolerance = kDefaultTailTolerance;
    bool operator==(const DistributionSpec&) const = default;
};

/// Throws DomainError if the parameters or tolerance are out of domain.
void validate(const DistributionSpec& spec);

std::string family_name(const DistributionParams& params);

double pmf_poisson(double lambda, int k);
double pmf_binomial(int n, double p, int k);
/// Zero for k in [0, n] outside the support; DomainError for k outside [0, n].
double pmf_hypergeometric(int N, int K, int n, int k);
double pmf_negative_binomial(int r, double p, int k);
double pmf_geometric(double p, int k);

/// Untruncated mass at k >= 0 (zero beyond a finite support).
double raw_pmf(const DistributionSpec& spec, int k);

/// Largest value with nonzero mass, or nullopt for unbounded families.
std::optional<int> support_max(const DistributionParams& params);

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Closed-form mean and variance of the untruncated distribution.
Moments nominal_moments(const DistributionParams& params);

/// Jump pmf on {0, ..., R} after discarding and renormalizing the tail.
class TruncatedJumpPmf {
public:
    /// Builds from explicit probabilities (renormalized); raw tail mass 0.
    static TruncatedJumpPmf from_probs(std::vector<double> probs);

    int max_jump() const { return static_cast<int>(probs_.size()) - 1; }
    double raw_tail_mass() const { return raw_tail_mass_; }
    /// Sum of the untruncated masses kept, before renormalization.
    double raw_head_mass() const { return raw_head_mass_; }
    const std::vector<double>& probs() const { return probs_; }
    const std::vector<double>& cdf() const { return cdf_; }

private:
    friend TruncatedJumpPmf truncate(const DistributionSpec& spec);
    TruncatedJumpPmf(std::vector<double> raw, double raw_tail_mass);

    std::vector<double> probs_;
    std::vector<double> cdf_;
    double raw_tail_mass_ = 0.0;
    double raw_head_mass_ = 0.0;
};

/// Smallest R whose discarded tail mass is <= spec.tail_tolerance (the
/// support maximum for finite families), renormalized over {0, ..., R}.
TruncatedJumpPmf truncate(const DistributionSpec& spec);

Moments moments(const TruncatedJumpPmf& pmf);

/// Inverse-CDF draw: smallest j with CDF(j) > u. Requires u in [0, 1).
int sample(const TruncatedJumpPmf& pmf, double u);

}  // namespace qwalk
