#include "qwalk/oracle.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "qwalk/errors.hpp"

namespace qwalk {

PositionPmf path_sum_oracle(std::span<const int> jumps, const CoinOperator& coin) {
    const auto steps = static_cast<int>(jumps.size());
    if (steps == 0) throw DomainError("path_sum_oracle needs at least one jump");
    if (steps > kMaxOracleSteps)
        throw DomainError("path_sum_oracle: " + std::to_string(steps) + " steps is too many to enumerate (max " +
                          std::to_string(kMaxOracleSteps) + ")");
    for (int j : jumps)
        if (j < 0) throw DomainError("path_sum_oracle: negative jump");

    // (final coin, site) -> accumulated amplitude
    std::map<std::pair<int, long>, Complex> amps;
    const std::uint64_t histories = std::uint64_t{1} << steps;
    for (std::uint64_t h = 0; h < histories; ++h) {
        Complex amp = 1.0;
        int prev = 0;
        long site = 0;
        for (int s = 0; s < steps; ++s) {
            const int c = static_cast<int>((h >> s) & 1U);
            amp *= coin(c, prev);
            site += c == 0 ? jumps[s] : -jumps[s];
            prev = c;
        }
        amps[{prev, site}] += amp;
    }

    std::map<long, double> by_site;
    for (const auto& [key, a] : amps) by_site[key.second] += std::norm(a);

    PositionPmf pmf;
    pmf.first_site = by_site.begin()->first;
    pmf.probs.assign(static_cast<std::size_t>(by_site.rbegin()->first - pmf.first_site + 1), 0.0);
    for (const auto& [site, p] : by_site) pmf.probs[static_cast<std::size_t>(site - pmf.first_site)] = p;
    return pmf;
}

}  // namespace qwalk
