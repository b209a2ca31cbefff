// Copyright 2026 the eewf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

namespace eewf {

/// splitmix64 finalizer; full-avalanche 64-bit mix.
inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

/// Key for the (seed, n, trial) substream. Every trial owns an independent
/// generator seeded from this, so results do not depend on which worker runs
/// the trial or in what order.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t n,
                                    std::uint64_t trial) {
    std::uint64_t h = mix64(seed + 0x9E3779B97F4A7C15ull);
    h = mix64(h ^ (n * 0xD1B54A32D192ED03ull));
    h = mix64(h ^ (trial * 0x8CB92BA72F3D8DD7ull));
    return h;
}

/// Fresh generator for one trial substream.
inline std::mt19937_64 substream_engine(std::uint64_t seed, std::uint64_t n,
                                        std::uint64_t trial) {
    return std::mt19937_64(substream_seed(seed, n, trial));
}

} // namespace eewf
