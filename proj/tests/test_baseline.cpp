#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "support.hpp"
#include "vine/baseline.hpp"
#include "vine/experiment.hpp"

using namespace vine;
using doctest::Approx;

namespace {

// Mobius ladder: cubic, so every reported degree fits in two pendant bits.
Graph ladder(std::size_t nodes)
{
    GraphBuilder b(nodes);
    for (std::size_t v = 0; v < nodes; ++v) {
        b.add_edge(v, (v + 1) % nodes);
        b.add_edge(v, (v + nodes / 2) % nodes);
    }
    return std::move(b).build();
}

} // namespace

TEST_SUITE("baseline") {

TEST_CASE("annealing reaches the exhaustive maximum on small instances")
{
    Graph g = ladder(30);
    Simulation sim = test::simulate_instance(g, 4, 6);
    PosteriorObjective f = PosteriorObjective::from_observed(sim.observed, TimingModel::exponential(1.0), {1.0, 1.0});
    REQUIRE(f.ground_size() <= 14);
    auto values = test::enumerate(f);
    double best = *std::max_element(values.begin(), values.end());
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        AnnealSchedule sched;
        sched.seed = seed;
        AnnealResult r = simanneal(f, sched);
        hits += std::abs(r.best_value - best) <= 1e-6;
    }
    CHECK(hits >= 18);
}

TEST_CASE("zero temperature is hill climbing")
{
    Simulation sim = test::simulate_instance(test::population(), 10, 3);
    PosteriorObjective f = PosteriorObjective::from_observed(sim.observed, TimingModel::exponential(1.0), {2.0, 1.0});
    AnnealSchedule sched;
    sched.initial_temperature = 1e-300;
    sched.seed = 4;
    AnnealResult r = simanneal(f, sched);
    // Every accepted move was uphill, so the end state is a local maximum.
    f.assign(r.gamma);
    for (std::size_t e = 0; e < f.ground_size(); ++e)
        CHECK(f.toggle_gain(e) <= 1e-12);
}

TEST_CASE("schedule and trace invariants")
{
    Simulation sim = test::simulate_instance(test::population(), 12, 8);
    AnnealSchedule sched;
    sched.seed = 11;
    sched.steps_per_temperature = 200;
    AnnealResult r = simanneal(sim.observed, {2.0, 1.0}, TimingModel::exponential(1.0), sched);
    CHECK(r.initial_temperature > 0.0);
    CHECK(r.temperatures.size() == 20);
    for (std::size_t k = 1; k < r.temperatures.size(); ++k)
        CHECK(r.temperatures[k] < r.temperatures[k - 1]);
    for (std::size_t k = 1; k < r.best_trace.size(); ++k)
        CHECK(r.best_trace[k] >= r.best_trace[k - 1]);
    CHECK(r.steps == 20 * 200);
    CHECK(r.adjacency.dominates(sim.observed.recruitment_adjacency()));
    CHECK(r.best_value >= 0.0);

    AnnealResult again = simanneal(sim.observed, {2.0, 1.0}, TimingModel::exponential(1.0), sched);
    CHECK(again.gamma == r.gamma);
    CHECK(again.best_value == r.best_value);

    sched.total_steps = 333;
    CHECK(simanneal(sim.observed, {2.0, 1.0}, TimingModel::exponential(1.0), sched).steps == 333);
}

TEST_CASE("parallel chains keep the best")
{
    Simulation sim = test::simulate_instance(test::population(), 10, 9);
    AnnealSchedule sched;
    sched.seed = 5;
    sched.steps_per_temperature = 100;
    sched.chains = 4;
    AnnealResult r = simanneal(sim.observed, {2.0, 1.0}, TimingModel::exponential(1.0), sched);
    AnnealResult s = simanneal(sim.observed, {2.0, 1.0}, TimingModel::exponential(1.0), sched);
    CHECK(r.gamma == s.gamma);
    sched.chains = 1;
    AnnealResult one = simanneal(sim.observed, {2.0, 1.0}, TimingModel::exponential(1.0), sched);
    CHECK(r.best_value >= one.best_value);
}

TEST_CASE("bad schedules are rejected")
{
    Simulation sim = test::simulate_instance(test::population(), 6, 1);
    AnnealSchedule sched;
    sched.cooling = 1.0;
    CHECK_THROWS(simanneal(sim.observed, {2.0, 1.0}, TimingModel::exponential(1.0), sched));
}

}

TEST_SUITE("experiment") {

TEST_CASE("quartiles interpolate")
{
    auto q = quartiles({4.0, 1.0, 3.0, 2.0, 5.0});
    CHECK(q.q1 == 2.0);
    CHECK(q.median == 3.0);
    CHECK(q.q3 == 4.0);
    auto even = quartiles({1.0, 2.0, 3.0, 4.0});
    CHECK(even.median == 2.5);
    CHECK(even.q1 == 1.75);
    CHECK_THROWS(quartiles({}));
}

TEST_CASE("a replicate runs end to end")
{
    Graph g = test::population(150, 3, 2);
    ReplicateSpec spec;
    spec.rds.sample_size = 20;
    spec.anneal = true;
    spec.anneal_schedule.steps_per_temperature = 100;
    auto a = run_replicate(g, spec, 77);
    REQUIRE(a);
    CHECK(a->roc_lower);
    CHECK(a->corner_anneal);
    CHECK(a->roc_upper.auc >= 0.0);
    CHECK(a->roc_upper.auc <= 1.0);
    CHECK(a->roc_baseline.points.size() == 3);
    auto b = run_replicate(g, spec, 77);
    REQUIRE(b);
    CHECK(a->seed == b->seed);
    CHECK(a->upper.edge_weights == b->upper.edge_weights);
    CHECK(a->roc_upper.auc == b->roc_upper.auc);
    CHECK(*a->corner_anneal == *b->corner_anneal);
}

TEST_CASE("replicates give up after repeated early termination")
{
    GraphBuilder b(3);
    b.add_edge(0, 1);
    Graph g = std::move(b).build();
    ReplicateSpec spec;
    spec.rds.sample_size = 3;
    spec.attempts = 3;
    CHECK_FALSE(run_replicate(g, spec, 1));
}

}
