#pragma once

#include <cstddef>
#include <vector>

namespace qwalk {

/// Site probabilities over a contiguous window of the lattice.
/// probs[k] is the probability of site first_site + k; sites outside the
/// window have probability zero.
struct PositionPmf {
    long first_site = 0;
    std::vector<double> probs;

    long last_site() const { return first_site + static_cast<long>(probs.size()) - 1; }

    double at(long site) const {
        if (site < first_site || site > last_site()) return 0.0;
        return probs[static_cast<std::size_t>(site - first_site)];
    }

    double total() const;
};

}  // namespace qwalk
