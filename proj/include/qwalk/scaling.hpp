#pragma once

#include <span>
#include <string>
#include <vector>

#include "qwalk/ensemble.hpp"
#include "qwalk/position_pmf.hpp"

namespace qwalk {

/// Central (mean-subtracted) standard deviation of a site pmf.
/// Rejects pmfs whose total differs from 1 by more than 1e-9.
double std_dev(const PositionPmf& pmf);

struct LogLogPoint {
    double log_t = 0.0;
    double log_inv_sigma = 0.0;
};

/// (ln T, ln(1/<sigma>)) for each point. A zero sigma is a degenerate input
/// and raises DomainError.
std::vector<LogLogPoint> loglog_points(std::span<const EnsemblePoint> points);
LogLogPoint loglog_point(double iterations, double sigma);

/// Unweighted least-squares line ln(1/<sigma>) = slope * ln T + intercept,
/// i.e. slope = -alpha and intercept = ln A.
struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<LogLogPoint> points;

    double amplitude() const;
};

ScalingFit fit_line(std::span<const LogLogPoint> points);

/// alpha = -slope.
double exponent(const ScalingFit& fit);

enum class SpreadingRegime { sub_diffusive, diffusive, super_diffusive, ballistic, super_ballistic };

/// Bands of +-0.05 around 0.5 (diffusive) and 1 (ballistic); strictly
/// between them is sub-ballistic but super-diffusive.
SpreadingRegime classify(double alpha);
std::string describe(SpreadingRegime regime);

}  // namespace qwalk
