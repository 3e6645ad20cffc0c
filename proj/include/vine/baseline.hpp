#pragma once

#include <cstdint>
#include <vector>

#include "vine/eval.hpp"
#include "vine/objective.hpp"

namespace vine {

// Two-segment curve (0,0) -> (0, TPR(G_R)) -> (1,1), i.e. A_R as the only
// estimate; AUC = t + (1 - t) / 2.
RocResult gr_baseline(const AdjacencyMatrix &revealed, const AdjacencyMatrix &truth,
                      Convention convention = Convention::standard);
RocResult gr_baseline_from_tpr(double tpr);

struct AnnealSchedule {
    // <= 0 selects the interquartile range of |gain| over 100 random toggles
    // at the empty set (falling back to 1 when that range is 0).
    double initial_temperature = 0.0;
    double cooling = 0.7;
    // 0 selects 50 N.
    std::uint64_t steps_per_temperature = 0;
    std::size_t stages = 20;
    // Hard cap on proposals across all stages; 0 = stages * steps.
    std::uint64_t total_steps = 0;
    std::uint64_t seed = 0;
    std::size_t chains = 1;
};

struct AnnealResult {
    Membership gamma;            // best state seen
    AdjacencyMatrix adjacency;   // A_R plus the free pairs of `gamma`
    std::vector<long> pendant;
    double best_value = 0.0;     // F(gamma), normalised
    std::uint64_t steps = 0;
    std::uint64_t accepted = 0;
    double initial_temperature = 0.0;
    std::vector<double> temperatures;
    std::vector<double> best_trace;  // best value after each stage
};

// Metropolis over gamma with uniform single-bit toggles; chains > 1 runs
// independent chains with split seeds and keeps the best. The objective's
// current set is left at the best state of the winning chain.
AnnealResult simanneal(PosteriorObjective &f, const AnnealSchedule &schedule);
AnnealResult simanneal(const ObservedData &obs, const PenaltyConfig &pc, const TimingModel &tm,
                       const AnnealSchedule &schedule);

} // namespace vine
