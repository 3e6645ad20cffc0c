#include <doctest.h>

#include <cmath>
#include <limits>

#include "support.hpp"
#include "vine/bounds.hpp"

using namespace vine;
using doctest::Approx;

namespace {

const PenaltyConfig l1{1.0, 1.0};

double modular_value(const std::vector<double> &w, std::size_t mask)
{
    double s = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k)
        if (mask >> k & 1)
            s += w[k];
    return s;
}

double bound_value(const ModularBound &b, std::size_t mask)
{
    return modular_value(b.weights, mask) + b.offset;
}

Membership to_set(std::size_t mask, std::size_t n)
{
    Membership x(n);
    for (std::size_t k = 0; k < n; ++k)
        x[k] = mask >> k & 1;
    return x;
}

} // namespace

TEST_SUITE("bounds") {

TEST_CASE("softplus and logistic")
{
    CHECK(softplus(0.0) == Approx(std::log(2.0)));
    CHECK(softplus(-1000.0) == Approx(0.0));
    CHECK(softplus(1000.0) == 1000.0);
    CHECK(logistic(0.0) == 0.5);
    CHECK(logistic(800.0) == 1.0);
    CHECK(logistic(-800.0) >= 0.0);
}

TEST_CASE("log partition closed form")
{
    std::vector<double> zero(10, 0.0);
    CHECK(log_partition(zero, 0.0) == Approx(10 * std::log(2.0)).epsilon(1e-15));
    std::vector<double> tiny(10, -1000.0);
    CHECK(log_partition(tiny, 3.0) == Approx(3.0));
    Rng rng(5);
    for (int c = 0; c < 100; ++c) {
        std::size_t n = 1 + uniform_index(rng, 12);
        std::vector<double> w(n);
        for (double &x : w)
            x = 8.0 * uniform01(rng) - 4.0;
        double off = uniform01(rng) - 0.5;
        std::vector<double> terms(std::size_t(1) << n);
        for (std::size_t m = 0; m < terms.size(); ++m)
            terms[m] = modular_value(w, m) + off;
        CHECK(std::abs(log_partition(w, off) - test::log_sum_exp(terms)) < 1e-9);
    }
}

TEST_CASE("marginals of the modular distribution")
{
    Rng rng(2);
    std::vector<double> w(9);
    for (double &x : w)
        x = 6.0 * uniform01(rng) - 3.0;
    ModularBound b{w, 0.4, BoundKind::bar, {}};
    auto mu = marginals(b);
    std::vector<double> num(w.size(), 0.0);
    double z = 0.0;
    for (std::size_t m = 0; m < (std::size_t(1) << w.size()); ++m) {
        double p = std::exp(modular_value(w, m));
        z += p;
        for (std::size_t k = 0; k < w.size(); ++k)
            if (m >> k & 1)
                num[k] += p;
    }
    for (std::size_t k = 0; k < w.size(); ++k)
        CHECK(mu[k] == Approx(num[k] / z).epsilon(1e-12));
    ModularBound flat{std::vector<double>(3, 0.0), 0.0, BoundKind::lower, {}};
    CHECK(marginals(flat) == std::vector<double>(3, 0.5));
}

TEST_CASE("modular functions are their own bounds")
{
    std::vector<double> w{0.5, -1.25, 2.0, 0.0, -0.3};
    ModularOracle f(w);
    auto lo = greedy_lower_bound(f);
    CHECK(lo.bound.weights == w);
    CHECK(lo.bound.offset == 0.0);
    auto cache = semigradient_cache(f);
    Membership x{1, 0, 1, 0, 0};
    for (const auto &b : supergradients(f, x, cache)) {
        CHECK(b.weights == w);
        CHECK(b.offset == Approx(0.0));
    }
    auto m = m_function(cache);
    for (std::size_t k = 0; k < w.size(); ++k)
        CHECK(m[k] == Approx(-w[k]).epsilon(1e-12));
    auto ub = upper_bound(f);
    CHECK(log_partition(ub.bound) == Approx(log_partition(w, 0.0)).epsilon(1e-12));
    CHECK(ub.log_partitions[0] == Approx(ub.log_partitions[1]));
    CHECK(ub.log_partitions[1] == Approx(ub.log_partitions[2]));

    ModularOracle zero(std::vector<double>(4, 0.0));
    auto mz = m_function(semigradient_cache(zero));
    CHECK(mz == std::vector<double>(4, 0.0));
}

TEST_CASE("submodularity of the l1 posterior on random pairs")
{
    for (std::uint64_t inst = 0; inst < 6; ++inst) {
        auto s = test::small_instance(100 + inst, 6 + inst, 40, l1);
        auto &f = *s.f;
        const std::size_t n = f.ground_size();
        Rng rng(inst);
        for (int k = 0; k < 200; ++k) {
            Membership x(n), y(n), meet(n), join(n);
            for (std::size_t e = 0; e < n; ++e) {
                x[e] = uniform01(rng) < 0.5;
                y[e] = uniform01(rng) < 0.5;
                meet[e] = x[e] & y[e];
                join[e] = x[e] | y[e];
            }
            double lhs = f.evaluate(x) + f.evaluate(y), rhs = f.evaluate(meet) + f.evaluate(join);
            CHECK(lhs >= rhs - 1e-9);
        }
    }
}

TEST_CASE("the l2 penalty alone breaks submodularity")
{
    PenaltyConfig l2{2.0, 1.0};
    std::vector<double> none{0, 0}, a{1, 0}, b{0, 1}, both{1, 1};
    // F = -psi: F(a) + F(b) < F(a & b) + F(a | b).
    CHECK(-l2(a) - l2(b) < -l2(none) - l2(both));
}

TEST_CASE("lazy greedy equals naive greedy")
{
    for (std::uint64_t inst = 0; inst < 50; ++inst) {
        auto s = test::small_instance(300 + inst, 6 + inst % 7, 40, l1);
        auto lazy = greedy_lower_bound(*s.f);
        auto naive = greedy_lower_bound_naive(*s.f);
        CHECK(lazy.bound.weights == naive.bound.weights);
        CHECK(lazy.order == naive.order);
        CHECK(lazy.oracle_calls <= naive.oracle_calls);
    }
}

TEST_CASE("exhaustive sandwich and semigradient inequalities")
{
    for (std::uint64_t inst = 0; inst < 10; ++inst) {
        auto s = test::small_instance(500 + inst, 6 + inst % 5, 12, l1);
        auto &f = *s.f;
        const std::size_t n = f.ground_size();
        auto values = test::enumerate(f);
        double log_z = test::log_sum_exp(values);

        auto lo = greedy_lower_bound(f).bound;
        auto up = upper_bound(f);
        CHECK(log_partition(lo) <= log_z + 1e-9);
        CHECK(log_partition(up.bound) >= log_z - 1e-9);
        for (std::size_t m = 0; m < values.size(); ++m)
            REQUIRE(bound_value(lo, m) <= values[m] + 1e-9);

        auto cache = semigradient_cache(f);
        Rng rng(inst);
        for (int trial = 0; trial < 4; ++trial) {
            std::size_t anchor = uniform_index(rng, values.size());
            Membership x = to_set(anchor, n);
            for (const auto &b : supergradients(f, x, cache)) {
                CHECK(bound_value(b, anchor) == Approx(values[anchor]).epsilon(1e-12));
                for (std::size_t m = 0; m < values.size(); ++m)
                    REQUIRE(values[m] <= bound_value(b, m) + 1e-9);
            }
        }
    }
}

TEST_CASE("upper bound picks the least log-partition")
{
    auto s = test::small_instance(42, 9, 14, l1);
    auto up = upper_bound(*s.f);
    double least = *std::min_element(up.log_partitions.begin(), up.log_partitions.end());
    CHECK(log_partition(up.bound) == Approx(least).epsilon(1e-14));
    CHECK(up.bound.is_upper());
    CHECK(up.bound.anchor == up.solve.minimizer);
    auto cache = semigradient_cache(*s.f);
    auto three = supergradients(*s.f, up.bound.anchor, cache);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(log_partition(three[k]) == Approx(up.log_partitions[k]).epsilon(1e-14));
        CHECK(supergradient(*s.f, up.bound.anchor, three[k].kind, cache).weights == three[k].weights);
    }
}

TEST_CASE("bar log-partition equals F + m up to a constant")
{
    auto s = test::small_instance(77, 8, 12, l1);
    auto &f = *s.f;
    const std::size_t n = f.ground_size();
    auto values = test::enumerate(f);
    auto cache = semigradient_cache(f);
    auto m = m_function(cache);
    double shift = 0.0;
    for (std::size_t mask = 0; mask < values.size(); ++mask) {
        auto bar = supergradient(f, to_set(mask, n), BoundKind::bar, cache);
        double gap = log_partition(bar) - (values[mask] + modular_value(m, mask));
        if (mask == 0)
            shift = gap;
        CHECK(gap == Approx(shift).epsilon(1e-10));
    }
}

TEST_CASE("budgets")
{
    auto s = test::small_instance(8, 10, 30, l1);
    BoundOptions opts;
    opts.oracle_budget = 5;
    CHECK_THROWS_AS(greedy_lower_bound(*s.f, opts), OracleBudgetExceeded);
    CHECK_THROWS_AS(greedy_lower_bound_naive(*s.f, opts), OracleBudgetExceeded);
    CHECK_THROWS_AS(semigradient_cache(*s.f, opts), OracleBudgetExceeded);
    auto lo = greedy_lower_bound(*s.f);
    CHECK(lo.oracle_calls > 0);
}

TEST_CASE("parallel bounds equal serial bounds")
{
    auto s = test::small_instance(19, 12, 40, l1);
    BoundOptions par;
    par.execution = Execution::parallel;
    CHECK(greedy_lower_bound(*s.f).bound.weights == greedy_lower_bound(*s.f, par).bound.weights);
    CHECK(upper_bound(*s.f).bound.weights == upper_bound(*s.f, par).bound.weights);
}

TEST_CASE("affine ratio diagnostics")
{
    ModularBound lo{{0.5, -1.0}, 0.0, BoundKind::lower, {}};
    ModularBound up{{1.0, 0.0}, 0.25, BoundKind::bar, {0, 0}};
    auto r = affine_ratio_bounds(lo, up);
    double zu = std::exp(log_partition(up)), zl = std::exp(log_partition(lo));
    CHECK(r.low[0] == Approx(0.5 / zu));
    CHECK(r.high[1] == Approx(0.25 / zl));
}

TEST_CASE("bound kind names")
{
    for (auto k : {BoundKind::lower, BoundKind::grow, BoundKind::shrink, BoundKind::bar})
        CHECK(parse_bound_kind(to_string(k)) == k);
    CHECK_THROWS(parse_bound_kind("middle"));
}

}
