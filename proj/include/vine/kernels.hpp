#pragma once

#include <span>

#include "vine/objective.hpp"

namespace vine {

enum class Execution { serial, parallel };

namespace kernels {

// out[k] = oracle.toggle_gain(candidates[k]) against the oracle's current
// set. Both variants produce bit-identical results; the serial loop is the
// reference the OpenMP one is tested against.
void score_toggles_serial(const SetFunctionOracle &oracle, std::span<const std::size_t> candidates,
                          std::span<double> out);
void score_toggles_omp(const SetFunctionOracle &oracle, std::span<const std::size_t> candidates,
                       std::span<double> out);

// out[e] = oracle.toggle_gain(e) for every ground element.
void score_all_serial(const SetFunctionOracle &oracle, std::span<double> out);
void score_all_omp(const SetFunctionOracle &oracle, std::span<double> out);

inline void score_all(const SetFunctionOracle &oracle, std::span<double> out, Execution exec)
{
    exec == Execution::parallel ? score_all_omp(oracle, out) : score_all_serial(oracle, out);
}

inline void score_toggles(const SetFunctionOracle &oracle, std::span<const std::size_t> candidates,
                          std::span<double> out, Execution exec)
{
    exec == Execution::parallel ? score_toggles_omp(oracle, candidates, out)
                                : score_toggles_serial(oracle, candidates, out);
}

// Lowest index attaining the maximum of values[k] over k with mask[k] == 0.
// Returns values.size() when every entry is masked.
std::size_t argmax_unmasked(std::span<const double> values, std::span<const std::uint8_t> mask);

} // namespace kernels
} // namespace vine
