#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vine/graph.hpp"
#include "vine/random.hpp"
#include "vine/timing.hpp"

namespace vine {

// Seeds entering at `time`. When `nodes` is empty, `count` seeds are drawn
// uniformly from nodes not yet in the study; otherwise exactly `nodes` enter.
struct SeedEntry {
    double time = 0.0;
    std::size_t count = 1;
    std::vector<NodeId> nodes;
};

struct RdsConfig {
    std::size_t sample_size = 0;
    std::size_t coupons = 3;
    // Optional per-subject coupon counts, indexed by entry order. Subjects
    // past the end of the vector receive `coupons`.
    std::vector<std::size_t> coupons_per_subject;
    std::vector<SeedEntry> seed_schedule{SeedEntry{}};
    std::uint64_t rng_seed = 0;
    TimingModel timing = TimingModel::exponential(1.0);
    // Sigma of the lognormal factor applied to reported degrees; 0 = exact.
    double degree_noise = 0.0;

    std::size_t coupons_for(std::size_t subject) const;
    std::size_t seed_total() const;
};

// What one RDS realisation reveals: Y = (C, d, t, G_R) plus the seed set.
// Subjects are indexed 0..n-1 in entry order.
struct ObservedData {
    std::size_t n = 0;
    // C(i, j) = 1 iff subject i holds a coupon just before event j. The
    // diagonal records whether subject i was handed any coupons at entry.
    std::vector<std::uint8_t> coupons;
    std::vector<long> degrees;
    std::vector<double> times;
    // Directed recruitment edges (recruiter, recruitee).
    std::vector<Edge> recruitment;
    // Seed subjects, ascending.
    std::vector<std::size_t> seeds;

    bool coupon(std::size_t i, std::size_t j) const { return coupons[i * n + j] != 0; }
    bool is_seed(std::size_t i) const;
    // Recruiter of each subject; nullopt for seeds. Requires a valid forest.
    std::vector<std::optional<std::size_t>> recruiters() const;
    // Adjacency of the undirected recruitment graph (A_R).
    AdjacencyMatrix recruitment_adjacency() const;

    friend bool operator==(const ObservedData &, const ObservedData &) = default;
};

struct RecruitmentEvent {
    std::optional<std::size_t> recruiter;
    std::size_t recruitee = 0;
    double time = 0.0;
};

struct SimulationTruth {
    std::vector<NodeId> sample_nodes;   // graph node of each subject
    Graph induced;                      // G_S on subject indices
    AdjacencyMatrix adjacency;          // A
    std::vector<RecruitmentEvent> events;
};

struct Simulation {
    ObservedData observed;
    SimulationTruth truth;
};

// Recruitment died out (no pending events, no seeds left) before the target
// sample size was reached.
struct EarlyTermination {
    std::size_t enrolled = 0;
    double time = 0.0;
};

using SimulationOutcome = std::variant<Simulation, EarlyTermination>;

SimulationOutcome simulate(const Graph &g, const RdsConfig &cfg, Rng &rng);
SimulationOutcome simulate(const Graph &g, const RdsConfig &cfg);

// Checks every ObservedData invariant; returns one message per violation.
std::vector<std::string> validate(const ObservedData &obs);

} // namespace vine
