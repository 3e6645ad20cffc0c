#pragma once

#include <cstdint>
#include <random>

namespace vine {

using Rng = std::mt19937_64;

// Uniform draw in the open interval (0, 1), built from the top 53 bits so the
// stream is identical across standard library implementations.
inline double uniform01(Rng &rng)
{
    return (double(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Uniform integer in [0, bound), by rejection to avoid modulo bias.
std::uint64_t uniform_index(Rng &rng, std::uint64_t bound);

// Seed for the k-th independent stream derived from a master seed
// (splitmix64 finaliser applied to master + golden-ratio multiple of k+1).
std::uint64_t split_seed(std::uint64_t master, std::uint64_t k);

} // namespace vine
