#pragma once

#include <span>

#include "qwalk/coin.hpp"
#include "qwalk/position_pmf.hpp"

namespace qwalk {

inline constexpr int kMaxOracleSteps = 16;

/// Brute-force position pmf by explicit sum over all 2^T coin histories.
///
/// Shares nothing with WalkState: each history contributes the product of
/// coin-matrix entries along it to the amplitude at (final coin,
/// sum of signed jumps). Used to cross-check the state-vector engine.
/// Throws DomainError for empty input, negative jumps or T > kMaxOracleSteps.
PositionPmf path_sum_oracle(std::span<const int> jumps, const CoinOperator& coin);

}  // namespace qwalk
