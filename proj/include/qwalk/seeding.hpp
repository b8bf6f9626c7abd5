#pragma once

#include <cstdint>
#include <random>

namespace qwalk {

/// SplitMix64 output function (a bijection on 64-bit words).
std::uint64_t splitmix64(std::uint64_t x);

/// Per-realization seed from (master seed, realization index).
///
/// mix(mix(master) + index * golden-gamma): injective in `index` for a fixed
/// master and in `master` for a fixed index, so neither neighbouring
/// indices nor neighbouring master seeds can collide.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

/// Platform-stable stream of uniform deviates on [0, 1).
///
/// std::mt19937_64 is fully specified by the standard; the 53-bit
/// conversion is done by hand because std::uniform_real_distribution is not
/// bit-identical across standard libraries.
class UniformSource {
public:
    static constexpr const char* kName = "mt19937_64+splitmix64";

    explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

    double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

}  // namespace qwalk
