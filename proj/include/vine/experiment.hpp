#pragma once

#include <optional>
#include <vector>

#include "vine/baseline.hpp"
#include "vine/inference.hpp"
#include "vine/rds.hpp"

namespace vine {

// Preferential attachment: a clique on m + 1 nodes, then each new node joins
// m distinct existing nodes drawn proportionally to degree. Nodes are
// labelled by their integer ids.
Graph preferential_attachment(std::size_t nodes, std::size_t edges_per_node, Rng &rng);

struct ReplicateSpec {
    RdsConfig rds;
    PenaltyConfig penalty;
    // Timing model handed to inference; the simulator uses rds.timing.
    TimingModel model = TimingModel::exponential(1.0);
    InferenceOptions inference;
    Convention convention = Convention::standard;
    bool lower = true;
    bool anneal = false;
    AnnealSchedule anneal_schedule;
    // Simulation attempts before giving up on early termination.
    std::size_t attempts = 20;
};

struct ReplicateOutcome {
    std::uint64_t seed = 0;  // seed of the simulation that succeeded
    Simulation simulation;
    InferenceResult upper;
    std::optional<InferenceResult> lower;
    RocResult roc_upper;
    std::optional<RocResult> roc_lower;
    RocResult roc_baseline;
    CornerPoint corner_upper;
    std::optional<CornerPoint> corner_lower;
    double corner_baseline = 0.0;
    std::optional<double> corner_anneal;
    std::optional<double> anneal_value;
};

// Simulates with split_seed(seed, attempt) until a full sample is drawn,
// then infers and scores. Returns nullopt when every attempt terminated early.
std::optional<ReplicateOutcome> run_replicate(const Graph &g, const ReplicateSpec &spec, std::uint64_t seed);

struct Quartiles {
    double q1 = 0.0, median = 0.0, q3 = 0.0;
};
// Linear interpolation between order statistics.
Quartiles quartiles(std::vector<double> values);

} // namespace vine
