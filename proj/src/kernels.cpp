#include "vine/kernels.hpp"

#include <stdexcept>

namespace vine::kernels {

void score_toggles_serial(const SetFunctionOracle &oracle, std::span<const std::size_t> candidates,
                          std::span<double> out)
{
    if (out.size() < candidates.size())
        throw std::invalid_argument("score_toggles: output too small");
    for (std::size_t k = 0; k < candidates.size(); ++k)
        out[k] = oracle.toggle_gain(candidates[k]);
}

void score_toggles_omp(const SetFunctionOracle &oracle, std::span<const std::size_t> candidates,
                       std::span<double> out)
{
    if (out.size() < candidates.size())
        throw std::invalid_argument("score_toggles: output too small");
    const long count = long(candidates.size());
#pragma omp parallel for schedule(static)
    for (long k = 0; k < count; ++k)
        out[k] = oracle.toggle_gain(candidates[k]);
}

void score_all_serial(const SetFunctionOracle &oracle, std::span<double> out)
{
    const std::size_t n = oracle.ground_size();
    if (out.size() < n)
        throw std::invalid_argument("score_all: output too small");
    for (std::size_t e = 0; e < n; ++e)
        out[e] = oracle.toggle_gain(e);
}

void score_all_omp(const SetFunctionOracle &oracle, std::span<double> out)
{
    const long n = long(oracle.ground_size());
    if (long(out.size()) < n)
        throw std::invalid_argument("score_all: output too small");
#pragma omp parallel for schedule(static)
    for (long e = 0; e < n; ++e)
        out[e] = oracle.toggle_gain(std::size_t(e));
}

std::size_t argmax_unmasked(std::span<const double> values, std::span<const std::uint8_t> mask)
{
    std::size_t best = values.size();
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (mask[k])
            continue;
        if (best == values.size() || values[k] > values[best])
            best = k;
    }
    return best;
}

} // namespace vine::kernels
