#include "qwalk/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

// Neumaier-compensated accumulator.
class KahanSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace

double std_dev(const PositionPmf& pmf) {
    KahanSum total, first;
    for (std::size_t k = 0; k < pmf.probs.size(); ++k) {
        const double p = pmf.probs[k];
        if (p < 0.0) throw DomainError("position pmf holds a negative probability");
        total.add(p);
        first.add(p * static_cast<double>(pmf.first_site + static_cast<long>(k)));
    }
    if (std::abs(total.value() - 1.0) > 1e-9) {
        std::ostringstream os;
        os << "position pmf is not normalized (total " << total.value() << ")";
        throw DomainError(os.str());
    }
    const double mean = first.value() / total.value();
    KahanSum second;
    for (std::size_t k = 0; k < pmf.probs.size(); ++k) {
        const double d = static_cast<double>(pmf.first_site + static_cast<long>(k)) - mean;
        second.add(pmf.probs[k] * d * d);
    }
    return std::sqrt(std::max(0.0, second.value() / total.value()));
}

LogLogPoint loglog_point(double iterations, double sigma) {
    if (!(iterations >= 1.0)) throw DomainError("log-log point needs T >= 1");
    if (!(sigma > 0.0)) throw DomainError("degenerate input: sigma = 0 has no logarithm");
    return {std::log(iterations), -std::log(sigma)};
}

std::vector<LogLogPoint> loglog_points(std::span<const EnsemblePoint> points) {
    std::vector<LogLogPoint> out;
    out.reserve(points.size());
    for (const EnsemblePoint& p : points) out.push_back(loglog_point(p.iterations, p.mean_sigma));
    return out;
}

double ScalingFit::amplitude() const { return std::exp(intercept); }

ScalingFit fit_line(std::span<const LogLogPoint> points) {
    if (points.size() < 2) throw DomainError("a line fit needs at least two points");
    const auto n = static_cast<double>(points.size());
    double mx = 0.0, my = 0.0;
    for (const auto& p : points) {
        mx += p.log_t;
        my += p.log_inv_sigma;
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& p : points) {
        const double dx = p.log_t - mx, dy = p.log_inv_sigma - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw DomainError("a line fit needs distinct abscissae");

    ScalingFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (const auto& p : points) {
        const double r = p.log_inv_sigma - (fit.slope * p.log_t + fit.intercept);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    fit.points.assign(points.begin(), points.end());
    return fit;
}

double exponent(const ScalingFit& fit) { return -fit.slope; }

SpreadingRegime classify(double alpha) {
    if (alpha > 1.05) return SpreadingRegime::super_ballistic;
    if (alpha >= 0.95) return SpreadingRegime::ballistic;
    if (alpha > 0.55) return SpreadingRegime::super_diffusive;
    if (alpha >= 0.45) return SpreadingRegime::diffusive;
    return SpreadingRegime::sub_diffusive;
}

std::string describe(SpreadingRegime regime) {
    switch (regime) {
        case SpreadingRegime::sub_diffusive: return "sub-diffusive";
        case SpreadingRegime::diffusive: return "diffusive";
        case SpreadingRegime::super_diffusive: return "sub-ballistic, super-diffusive";
        case SpreadingRegime::ballistic: return "ballistic";
        case SpreadingRegime::super_ballistic: return "super-ballistic";
    }
    return "unknown";
}

}  // namespace qwalk
