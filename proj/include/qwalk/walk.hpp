#pragma once

#include <span>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/position_pmf.hpp"

namespace qwalk {

/// Per-site jump lengths on [-extent, extent] for static disorder.
class SiteJumpMap {
public:
    SiteJumpMap(int extent, std::vector<int> jumps);
    static SiteJumpMap constant(int extent, int jump);

    int extent() const { return extent_; }
    int max_jump() const { return max_jump_; }
    bool covers(long site) const { return site >= -extent_ && site <= extent_; }
    /// Throws DomainError for a site outside the map.
    int at(long site) const;

    std::span<const int> values() const { return jumps_; }

private:
    int extent_;
    int max_jump_ = 0;
    std::vector<int> jumps_;
};

/// Dense coin (x) position amplitude table on sites [-max_extent, max_extent].
///
/// Coin-0 and coin-1 amplitudes live in separate arrays so a conditional
/// shift is a pair of contiguous moves. A window [lo, hi] bounds the sites
/// that may hold nonzero amplitude; every kernel touches only that window.
/// Writes that would leave the allocation throw instead of clipping.
class WalkState {
public:
    /// |coin 0> (x) |site 0>, t = 0.
    explicit WalkState(int max_extent);

    int max_extent() const { return extent_; }
    int iteration() const { return t_; }
    long window_lo() const { return lo_; }
    long window_hi() const { return hi_; }

    Complex amplitude(int coin, long site) const;
    /// Overwrite one amplitude, widening the window if needed. For tests and
    /// hand-built states; no normalization is enforced.
    void set_amplitude(int coin, long site, Complex value);
    void clear();

    double norm_squared() const;

    void apply_coin(const CoinOperator& coin);
    /// coin 0: i -> i + j, coin 1: i -> i - j.
    void apply_shift(int jump);
    /// Inverse of apply_shift(jump).
    void apply_shift_adjoint(int jump);
    /// Site-dependent shift; returns the norm of the result (which need not
    /// be 1, since distinct sites may land on the same target).
    double apply_site_shift(const SiteJumpMap& map);
    /// Scales to unit norm (a no-op within 1e-13 of 1). Throws DomainError on
    /// a zero state.
    void renormalize();

    /// One iteration: coin, then shift by `jump`; advances t.
    void step(const CoinOperator& coin, int jump);
    /// One static-disorder iteration: coin, then site-dependent shift;
    /// advances t and returns the (unrenormalized) norm.
    double step(const CoinOperator& coin, const SiteJumpMap& map);

    std::span<const Complex> coin_amplitudes(int coin) const;

private:
    std::size_t index(long site) const { return static_cast<std::size_t>(site + extent_); }
    void check_coin_index(int coin) const;
    void require_room(long lo, long hi, const char* what) const;

    int extent_;
    int t_ = 0;
    long lo_ = 0;
    long hi_ = 0;
    std::vector<Complex> up_;    // coin 0
    std::vector<Complex> down_;  // coin 1
};

WalkState initial_state(int max_extent);

/// Result of a static-disorder run: final unit-norm state plus the
/// pre-renormalization norm recorded after every iteration.
struct StaticRun {
    WalkState state;
    std::vector<double> norm_log;
};

/// Applies [shift(j_T)(coin (x) I)] ... [shift(j_1)(coin (x) I)] to the
/// initial state on the lattice [-T R, T R], R = max jump.
WalkState run_dynamic(std::span<const int> jumps, const CoinOperator& coin);

/// T iterations of coin then site-dependent shift, renormalizing each step.
StaticRun run_static(int iterations, const SiteJumpMap& site_jumps, const CoinOperator& coin);

PositionPmf position_distribution(const WalkState& state);

}  // namespace qwalk
