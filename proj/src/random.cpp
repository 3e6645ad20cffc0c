#include "vine/random.hpp"

#include <stdexcept>

namespace vine {

std::uint64_t uniform_index(Rng &rng, std::uint64_t bound)
{
    if (bound == 0)
        throw std::invalid_argument("uniform_index: empty range");
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

std::uint64_t split_seed(std::uint64_t master, std::uint64_t k)
{
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (k + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace vine
