#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace mmnoma {

using Rng = std::mt19937_64;

/// Named substreams of a single drop. Each one is seeded independently so that
/// enabling an extra method or antenna count never shifts another stream.
enum class Stream : std::uint32_t {
    Scenario = 1,
    Channel = 2,
    KMeans = 3,
};

/// Deterministic generator for (seed, drop, stream). Independent of the order
/// in which drops are evaluated.
inline Rng substream(std::uint64_t seed, std::uint64_t drop, Stream stream) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(drop), static_cast<std::uint32_t>(drop >> 32),
        static_cast<std::uint32_t>(stream)};
    return Rng(seq);
}

}  // namespace mmnoma
