#pragma once

#include <cstdint>
#include <random>

namespace lc {

using Rng = std::mt19937_64;

// Independent stream for replication k under a master seed.
inline Rng make_rng(std::uint64_t seed, std::uint64_t k = 0) {
    std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32), 0x6c657679u};
    return Rng(sq);
}

// Uniform on (0,1), never 0.
inline double uniform_open(Rng& r) {
    return (static_cast<double>(r() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace lc
