#include "qwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {
constexpr double kUnitNormSlack = 1e-13;
}

double PositionPmf::total() const {
    double sum = 0.0, comp = 0.0;
    for (double p : probs) {
        const double y = p - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

// ---------------------------------------------------------------------------
// SiteJumpMap

SiteJumpMap::SiteJumpMap(int extent, std::vector<int> jumps) : extent_(extent), jumps_(std::move(jumps)) {
    if (extent < 0) throw DomainError("site map extent must be non-negative");
    if (jumps_.size() != static_cast<std::size_t>(2 * extent + 1))
        throw DomainError("site map needs exactly 2*extent+1 entries");
    for (int j : jumps_) {
        if (j < 0) throw DomainError("site map holds a negative jump");
        max_jump_ = std::max(max_jump_, j);
    }
}

SiteJumpMap SiteJumpMap::constant(int extent, int jump) {
    return SiteJumpMap(extent, std::vector<int>(static_cast<std::size_t>(2 * extent + 1), jump));
}

int SiteJumpMap::at(long site) const {
    if (!covers(site)) {
        throw DomainError("site " + std::to_string(site) + " is missing from the site jump map (extent " +
                          std::to_string(extent_) + ")");
    }
    return jumps_[static_cast<std::size_t>(site + extent_)];
}

// ---------------------------------------------------------------------------
// WalkState

WalkState::WalkState(int max_extent)
    : extent_(max_extent),
      up_(static_cast<std::size_t>(2 * std::max(max_extent, 0) + 1)),
      down_(up_.size()) {
    if (max_extent < 0) throw DomainError("lattice extent must be non-negative");
    up_[index(0)] = 1.0;
}

WalkState initial_state(int max_extent) { return WalkState(max_extent); }

void WalkState::check_coin_index(int coin) const {
    if (coin != 0 && coin != 1) throw DomainError("coin index must be 0 or 1");
}

void WalkState::require_room(long lo, long hi, const char* what) const {
    if (lo < -extent_ || hi > extent_) {
        std::ostringstream os;
        os << what << " would reach sites [" << lo << ", " << hi << "] outside the allocated lattice [" << -extent_
           << ", " << extent_ << "]";
        throw DomainError(os.str());
    }
}

Complex WalkState::amplitude(int coin, long site) const {
    check_coin_index(coin);
    if (site < -extent_ || site > extent_) return 0.0;
    return coin == 0 ? up_[index(site)] : down_[index(site)];
}

void WalkState::set_amplitude(int coin, long site, Complex value) {
    check_coin_index(coin);
    require_room(site, site, "set_amplitude");
    (coin == 0 ? up_ : down_)[index(site)] = value;
    lo_ = std::min(lo_, site);
    hi_ = std::max(hi_, site);
}

void WalkState::clear() {
    std::fill(up_.begin(), up_.end(), Complex{});
    std::fill(down_.begin(), down_.end(), Complex{});
    lo_ = hi_ = 0;
}

double WalkState::norm_squared() const {
    double sum = 0.0;
    for (long i = lo_; i <= hi_; ++i) sum += std::norm(up_[index(i)]) + std::norm(down_[index(i)]);
    return sum;
}

void WalkState::apply_coin(const CoinOperator& coin) {
    const Complex a = coin(0, 0), b = coin(0, 1), c = coin(1, 0), d = coin(1, 1);
    Complex* up = up_.data() + index(lo_);
    Complex* down = down_.data() + index(lo_);
    const long n = hi_ - lo_ + 1;
    for (long k = 0; k < n; ++k) {
        const Complex u = up[k], v = down[k];
        up[k] = a * u + b * v;
        down[k] = c * u + d * v;
    }
}

namespace {

// Moves block [first, first+len) by `by` sites (positive = right) and
// zeroes the cells it vacated.
void move_block(std::vector<Complex>& v, std::size_t first, std::size_t len, long by) {
    if (by == 0 || len == 0) return;
    auto begin = v.begin() + static_cast<std::ptrdiff_t>(first);
    auto end = begin + static_cast<std::ptrdiff_t>(len);
    const auto shift = static_cast<std::size_t>(by > 0 ? by : -by);
    const std::size_t stale = std::min(shift, len);
    if (by > 0) {
        std::copy_backward(begin, end, end + by);
        std::fill(begin, begin + static_cast<std::ptrdiff_t>(stale), Complex{});
    } else {
        std::copy(begin, end, begin + by);
        std::fill(end - static_cast<std::ptrdiff_t>(stale), end, Complex{});
    }
}

}  // namespace

void WalkState::apply_shift(int jump) {
    if (jump < 0) throw DomainError("jump length must be non-negative");
    if (jump == 0) return;
    require_room(lo_ - jump, hi_ + jump, "shift");
    const auto len = static_cast<std::size_t>(hi_ - lo_ + 1);
    move_block(up_, index(lo_), len, jump);
    move_block(down_, index(lo_), len, -jump);
    lo_ -= jump;
    hi_ += jump;
}

void WalkState::apply_shift_adjoint(int jump) {
    if (jump < 0) throw DomainError("jump length must be non-negative");
    if (jump == 0) return;
    require_room(lo_ - jump, hi_ + jump, "adjoint shift");
    const auto len = static_cast<std::size_t>(hi_ - lo_ + 1);
    move_block(up_, index(lo_), len, -jump);
    move_block(down_, index(lo_), len, jump);
    lo_ -= jump;
    hi_ += jump;
}

double WalkState::apply_site_shift(const SiteJumpMap& map) {
    long new_lo = hi_, new_hi = lo_;
    for (long i = lo_; i <= hi_; ++i) {
        const int j = map.at(i);
        new_lo = std::min(new_lo, i - j);
        new_hi = std::max(new_hi, i + j);
    }
    require_room(new_lo, new_hi, "site-dependent shift");

    std::vector<Complex> up(up_.size()), down(down_.size());
    for (long i = lo_; i <= hi_; ++i) {
        const int j = map.at(i);
        up[index(i + j)] += up_[index(i)];
        down[index(i - j)] += down_[index(i)];
    }
    up_.swap(up);
    down_.swap(down);
    lo_ = new_lo;
    hi_ = new_hi;
    return std::sqrt(norm_squared());
}

void WalkState::renormalize() {
    const double n = std::sqrt(norm_squared());
    if (!(n > 0.0)) throw DomainError("cannot renormalize a zero state");
    // Already unit norm up to rounding: leave the amplitudes bit-identical.
    if (std::abs(n - 1.0) <= kUnitNormSlack) return;
    const double s = 1.0 / n;
    for (long i = lo_; i <= hi_; ++i) {
        up_[index(i)] *= s;
        down_[index(i)] *= s;
    }
}

void WalkState::step(const CoinOperator& coin, int jump) {
    apply_coin(coin);
    apply_shift(jump);
    ++t_;
}

double WalkState::step(const CoinOperator& coin, const SiteJumpMap& map) {
    apply_coin(coin);
    const double norm = apply_site_shift(map);
    ++t_;
    return norm;
}

std::span<const Complex> WalkState::coin_amplitudes(int coin) const {
    check_coin_index(coin);
    return coin == 0 ? std::span<const Complex>(up_) : std::span<const Complex>(down_);
}

// ---------------------------------------------------------------------------
// drivers

WalkState run_dynamic(std::span<const int> jumps, const CoinOperator& coin) {
    if (jumps.empty()) throw DomainError("run_dynamic needs at least one jump");
    int max_jump = 0;
    for (int j : jumps) {
        if (j < 0) throw DomainError("jump lengths must be non-negative, got " + std::to_string(j));
        max_jump = std::max(max_jump, j);
    }
    const long extent = static_cast<long>(jumps.size()) * max_jump;
    if (extent > 1'000'000'000L) throw DomainError("lattice extent too large");

    WalkState state(static_cast<int>(extent));
    for (int j : jumps) state.step(coin, j);
    return state;
}

StaticRun run_static(int iterations, const SiteJumpMap& site_jumps, const CoinOperator& coin) {
    if (iterations < 1) throw DomainError("run_static needs at least one iteration");
    const long extent = static_cast<long>(iterations) * site_jumps.max_jump();
    if (site_jumps.extent() < extent) {
        throw DomainError("site jump map covers [-" + std::to_string(site_jumps.extent()) + ", " +
                          std::to_string(site_jumps.extent()) + "] but " + std::to_string(iterations) +
                          " iterations need [-" + std::to_string(extent) + ", " + std::to_string(extent) + "]");
    }

    StaticRun run{WalkState(static_cast<int>(extent)), {}};
    run.norm_log.reserve(static_cast<std::size_t>(iterations));
    for (int t = 0; t < iterations; ++t) {
        run.norm_log.push_back(run.state.step(coin, site_jumps));
        run.state.renormalize();
    }
    return run;
}

PositionPmf position_distribution(const WalkState& state) {
    PositionPmf pmf;
    pmf.first_site = state.window_lo();
    pmf.probs.reserve(static_cast<std::size_t>(state.window_hi() - state.window_lo() + 1));
    for (long i = state.window_lo(); i <= state.window_hi(); ++i)
        pmf.probs.push_back(std::norm(state.amplitude(0, i)) + std::norm(state.amplitude(1, i)));
    return pmf;
}

}  // namespace qwalk
