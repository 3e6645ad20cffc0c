#include <doctest.h>

#include <cmath>
#include <limits>

#include "support.hpp"
#include "vine/likelihood.hpp"

using namespace vine;
using doctest::Approx;

namespace {

std::vector<long> true_pendant(const Simulation &sim)
{
    std::vector<long> u(sim.observed.n);
    for (std::size_t i = 0; i < u.size(); ++i)
        u[i] = sim.observed.degrees[i] - long(sim.truth.adjacency.row_sum(i));
    return u;
}

// Random A >= A_R and 0 <= u <= u_max.
std::pair<AdjacencyMatrix, std::vector<long>> random_pair(const ObservedData &obs, Rng &rng)
{
    AdjacencyMatrix a = obs.recruitment_adjacency();
    double density = uniform01(rng);
    for (std::size_t i = 0; i < obs.n; ++i)
        for (std::size_t j = i + 1; j < obs.n; ++j)
            if (uniform01(rng) < density)
                a.set(i, j, true);
    long umax = *std::max_element(obs.degrees.begin(), obs.degrees.end());
    std::vector<long> u(obs.n);
    for (long &x : u)
        x = long(uniform_index(rng, std::uint64_t(umax + 1)));
    return {std::move(a), std::move(u)};
}

} // namespace

TEST_SUITE("likelihood") {

TEST_CASE("exponential matrices")
{
    Simulation sim = test::simulate_instance(test::population(), 10, 4);
    const ObservedData &o = sim.observed;
    ObservedMatrices m = build_matrices(o, TimingModel::exponential(1.7));
    for (std::size_t i = 0; i < o.n; ++i)
        for (std::size_t u = 0; u < o.n; ++u) {
            if (u < i) {
                CHECK(m.hazard(u, i) == Approx(1.7));
                CHECK(m.log_survival(u, i) == Approx(-1.7 * (o.times[i] - o.times[i - 1])));
                CHECK(m.weighted_hazard(u, i) == (o.coupon(u, i) ? m.hazard(u, i) : 0.0));
                CHECK(m.weighted_log_survival(u, i) == (o.coupon(u, i) ? m.log_survival(u, i) : 0.0));
            } else {
                CHECK(m.hazard(u, i) == 0.0);
                CHECK(m.log_survival(u, i) == 0.0);
            }
        }
}

TEST_CASE("weibull matrices on a hand-built sample")
{
    ObservedData o;
    o.n = 3;
    o.times = {0.0, 0.7, 1.9};
    o.degrees = {2, 2, 1};
    o.recruitment = {{0, 1}, {0, 2}};
    o.seeds = {0};
    o.coupons = {1, 1, 1,
                 0, 1, 1,
                 0, 0, 1};
    REQUIRE(validate(o).empty());
    auto wb = TimingModel::weibull(2.0, 1.0);
    ObservedMatrices m = build_matrices(o, wb);
    for (std::size_t i = 1; i < 3; ++i)
        for (std::size_t u = 0; u < i; ++u) {
            double s = o.times[i - 1] - o.times[u], t = o.times[i] - o.times[u];
            CHECK(m.hazard(u, i) == Approx(wb.conditional_hazard(s, t)).epsilon(1e-14));
            CHECK(m.log_survival(u, i) == Approx(wb.log_conditional_survival(s, t)).epsilon(1e-14));
            CHECK(m.tau(u, i) == Approx(s));
        }
    CHECK(m.non_seed == std::vector<std::uint8_t>{0, 1, 1});
}

TEST_CASE("single subject")
{
    ObservedData o;
    o.n = 1;
    o.times = {0.0};
    o.degrees = {0};
    o.seeds = {0};
    o.coupons = {1};
    ObservedMatrices m = build_matrices(o, TimingModel::exponential(1.0));
    CHECK(m.hazard(0, 0) == 0.0);
    std::vector<long> u{0};
    CHECK(log_likelihood_direct(o, AdjacencyMatrix(1), u, TimingModel::exponential(1.0)) == 0.0);
    CHECK(log_likelihood_matrix(AdjacencyMatrix(1), u, m) == 0.0);
}

TEST_CASE("matrix and event-by-event forms agree")
{
    for (const auto &tm : {TimingModel::exponential(1.0), TimingModel::weibull(1.6, 0.8)}) {
        Simulation sim = test::simulate_instance(test::population(), 8, 12, 3, tm);
        ObservedMatrices m = build_matrices(sim.observed, tm);
        Rng rng(1);
        double worst = 0.0;
        for (int k = 0; k < 500; ++k) {
            auto [a, u] = random_pair(sim.observed, rng);
            double x = log_likelihood_matrix(a, u, m), y = log_likelihood_direct(sim.observed, a, u, tm);
            REQUIRE(std::isfinite(x));
            worst = std::max(worst, std::abs(x - y));
        }
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("truth is finite and matches")
{
    Simulation sim = test::simulate_instance(test::population(), 3, 2);
    auto u = true_pendant(sim);
    auto tm = TimingModel::exponential(1.0);
    double x = log_likelihood_matrix(sim.truth.adjacency, u, build_matrices(sim.observed, tm));
    CHECK(std::isfinite(x));
    CHECK(x == Approx(log_likelihood_direct(sim.observed, sim.truth.adjacency, u, tm)).epsilon(1e-12));
}

TEST_CASE("missing recruiter exposure gives -inf")
{
    Simulation sim = test::simulate_instance(test::population(), 6, 2);
    std::vector<long> zero(6, 0);
    auto tm = TimingModel::exponential(1.0);
    CHECK(log_likelihood_matrix(AdjacencyMatrix(6), zero, build_matrices(sim.observed, tm)) ==
          -std::numeric_limits<double>::infinity());
    CHECK(log_likelihood_direct(sim.observed, AdjacencyMatrix(6), zero, tm) ==
          -std::numeric_limits<double>::infinity());
}

TEST_CASE("exponential likelihood ignores the time origin")
{
    Simulation sim = test::simulate_instance(test::population(), 12, 6);
    ObservedData shifted = sim.observed;
    for (double &t : shifted.times)
        t += 3.25;
    auto tm = TimingModel::exponential(1.3);
    auto u = true_pendant(sim);
    CHECK(log_likelihood_direct(shifted, sim.truth.adjacency, u, tm) ==
          Approx(log_likelihood_direct(sim.observed, sim.truth.adjacency, u, tm)).epsilon(1e-12));
}

TEST_CASE("doubling the rate lowers the likelihood at the truth")
{
    Simulation sim = test::simulate_instance(test::population(250, 3, 9), 100, 3);
    auto u = true_pendant(sim);
    double at1 = log_likelihood_direct(sim.observed, sim.truth.adjacency, u, TimingModel::exponential(1.0));
    double at2 = log_likelihood_direct(sim.observed, sim.truth.adjacency, u, TimingModel::exponential(2.0));
    CHECK(at2 < at1);
}

TEST_CASE("prior values")
{
    AdjacencyMatrix a(3);
    a.set(0, 1, true);
    std::vector<long> d{1, 1, 0}, u{0, 0, 0};
    CHECK(log_prior(a, u, d, {2.0, 1.0}) == 0.0);
    std::vector<long> u1{1, 0, 0};
    CHECK(log_prior(a, u1, d, {2.0, 1.0}) == Approx(-1.0));
    std::vector<long> u2{3, 4, 0};
    CHECK(log_prior(AdjacencyMatrix(3), u2, std::vector<long>{0, 0, 0}, {2.0, 2.0}) == Approx(-10.0));
    CHECK(log_prior(AdjacencyMatrix(3), u2, std::vector<long>{0, 0, 0}, {1.0, 1.0}) == Approx(-7.0));
    double inf = std::numeric_limits<double>::infinity();
    CHECK(log_prior(AdjacencyMatrix(3), u2, std::vector<long>{0, 0, 0}, {inf, 1.0}) == Approx(-4.0));
    CHECK(degree_excess(a, u1, d) == std::vector<double>{1, 0, 0});
    CHECK_THROWS(PenaltyConfig{0.5, 1.0}.check());
    CHECK_THROWS(PenaltyConfig{2.0, -1.0}.check());
}

TEST_CASE("penalty weight is monotone")
{
    Rng rng(3);
    for (int k = 0; k < 200; ++k) {
        AdjacencyMatrix a(5);
        std::vector<long> u(5), d(5);
        for (std::size_t i = 0; i < 5; ++i) {
            u[i] = long(uniform_index(rng, 4));
            d[i] = long(uniform_index(rng, 6));
            for (std::size_t j = i + 1; j < 5; ++j)
                if (uniform01(rng) < 0.3)
                    a.set(i, j, true);
        }
        auto ex = degree_excess(a, u, d);
        bool any = std::any_of(ex.begin(), ex.end(), [](double x) { return x > 0; });
        double lo = log_prior(a, u, d, {2.0, 0.5}), hi = log_prior(a, u, d, {2.0, 5.0});
        if (any)
            CHECK(hi < lo);
        else
            CHECK(hi == lo);
    }
}

TEST_CASE("theta step matches a grid search")
{
    Simulation sim = test::simulate_instance(test::population(250, 3, 9), 60, 5);
    auto u = true_pendant(sim);
    ThetaEstimate est = theta_step(sim.observed, sim.truth.adjacency, u, TimingModel::exponential(3.0));
    CHECK(est.converged);
    double best = -1, best_ll = -std::numeric_limits<double>::infinity();
    for (double lambda = 0.2; lambda < 4.0; lambda += 1e-3) {
        double ll = log_likelihood_direct(sim.observed, sim.truth.adjacency, u, TimingModel::exponential(lambda));
        if (ll > best_ll) {
            best_ll = ll;
            best = lambda;
        }
    }
    CHECK(std::abs(est.model.rate() - best) < 2e-3);
    CHECK(est.log_likelihood >= best_ll - 1e-9);
}

TEST_CASE("theta step scale equivariance")
{
    Simulation sim = test::simulate_instance(test::population(250, 3, 9), 60, 8);
    auto u = true_pendant(sim);
    ObservedData slow = sim.observed;
    for (double &t : slow.times)
        t *= 2.0;
    double a = theta_step(sim.observed, sim.truth.adjacency, u, TimingModel::exponential(1.0)).model.rate();
    double b = theta_step(slow, sim.truth.adjacency, u, TimingModel::exponential(1.0)).model.rate();
    CHECK(b == Approx(a / 2.0).epsilon(1e-5));
}

TEST_CASE("theta step for weibull recovers the shape")
{
    auto wb = TimingModel::weibull(2.0, 1.0);
    Simulation sim = test::simulate_instance(test::population(250, 5, 2), 150, 14, 3, wb);
    auto u = true_pendant(sim);
    ThetaEstimate est = theta_step(sim.observed, sim.truth.adjacency, u, TimingModel::weibull(1.0, 2.0));
    CHECK(est.model.family() == TimingFamily::weibull);
    CHECK(est.model.shape() > 1.3);
    CHECK(est.model.shape() < 3.0);
}

TEST_CASE("theta step needs events")
{
    ObservedData o;
    o.n = 1;
    o.times = {0.0};
    o.degrees = {0};
    o.seeds = {0};
    o.coupons = {1};
    std::vector<long> u{0};
    CHECK_THROWS_WITH(theta_step(o, AdjacencyMatrix(1), u, TimingModel::exponential(1.0)),
                      doctest::Contains("insufficient data"));
}

}
