#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "vine/bounds.hpp"
#include "vine/min_norm_point.hpp"

using namespace vine;
using doctest::Approx;

namespace {

// Weighted graph cut plus a modular term, plus a constant.
class CutOracle final : public SetFunctionOracle {
public:
    CutOracle(std::size_t n, std::vector<std::tuple<std::size_t, std::size_t, double>> edges, std::vector<double> unary,
              double constant = 0.0)
        : edges_(std::move(edges)), unary_(std::move(unary)), constant_(constant), set_(n, 0)
    {
    }
    std::size_t ground_size() const override { return set_.size(); }
    bool contains(std::size_t e) const override { return set_[e]; }
    double value() const override
    {
        double v = constant_;
        for (auto [a, b, w] : edges_)
            if (set_[a] != set_[b])
                v += w;
        for (std::size_t e = 0; e < set_.size(); ++e)
            if (set_[e])
                v += unary_[e];
        return v;
    }
    double toggle_gain(std::size_t e) const override
    {
        auto *self = const_cast<CutOracle *>(this);
        double before = value();
        self->set_[e] ^= 1;
        double after = value();
        self->set_[e] ^= 1;
        return after - before;
    }
    void toggle(std::size_t e) override { set_[e] ^= 1; }
    void clear() override { std::fill(set_.begin(), set_.end(), 0); }
    std::unique_ptr<SetFunctionOracle> clone() const override { return std::make_unique<CutOracle>(*this); }

private:
    std::vector<std::tuple<std::size_t, std::size_t, double>> edges_;
    std::vector<double> unary_;
    double constant_;
    Membership set_;
};

CutOracle random_cut(std::size_t n, Rng &rng, double constant = 0.0)
{
    std::vector<std::tuple<std::size_t, std::size_t, double>> edges;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (uniform01(rng) < 0.35)
                edges.emplace_back(a, b, uniform01(rng));
    std::vector<double> unary(n);
    for (double &u : unary)
        u = 2.0 * uniform01(rng) - 1.2;
    return CutOracle(n, std::move(edges), std::move(unary), constant);
}

double exhaustive_min(SetFunctionOracle &g)
{
    auto values = test::enumerate(g);
    return *std::min_element(values.begin(), values.end()) - values[0];
}

} // namespace

TEST_SUITE("min_norm_point") {

TEST_CASE("modular minimisation")
{
    ModularOracle g({0.5, -1.0, 0.0, -0.25, 2.0});
    auto r = minimize_submodular(g);
    CHECK(r.converged);
    CHECK(r.minimizer == Membership{0, 1, 0, 1, 0});
    CHECK(r.value == Approx(-1.25));
}

TEST_CASE("zero function gives the empty set")
{
    ModularOracle g(std::vector<double>(6, 0.0));
    auto r = minimize_submodular(g);
    CHECK(r.minimizer == Membership(6, 0));
    CHECK(r.value == 0.0);
}

TEST_CASE("cut functions against enumeration")
{
    Rng rng(17);
    for (int k = 0; k < 30; ++k) {
        auto g = random_cut(4 + uniform_index(rng, 11), rng);
        double best = exhaustive_min(g);
        auto r = minimize_submodular(g);
        CHECK(r.converged);
        CHECK(r.value == Approx(best).epsilon(1e-9).scale(1.0));
        CHECK(g.evaluate(r.minimizer) - g.evaluate(Membership(g.ground_size(), 0)) == Approx(r.value));
        CHECK(r.gap <= r.epsilon);
    }
}

TEST_CASE("adding a constant changes nothing")
{
    Rng a(23), b(23);
    auto g = random_cut(12, a);
    auto h = random_cut(12, b, 41.5);
    auto rg = minimize_submodular(g), rh = minimize_submodular(h);
    CHECK(rg.minimizer == rh.minimizer);
    CHECK(rg.value == Approx(rh.value));
}

TEST_CASE("posterior plus m against enumeration")
{
    for (std::uint64_t inst = 0; inst < 10; ++inst) {
        auto s = test::small_instance(700 + inst, 6 + inst % 6, 14, {1.0, 1.0});
        auto m = m_function(semigradient_cache(*s.f));
        ModularShiftOracle g(s.f->clone(), m);
        double best = exhaustive_min(g);
        auto r = minimize_submodular(g);
        CHECK(r.converged);
        CHECK(std::abs(r.value - best) < 1e-7);
    }
}

TEST_CASE("budget stops the solver without converging")
{
    Rng rng(3);
    auto g = random_cut(14, rng);
    MinNormOptions opts;
    opts.oracle_budget = 20;
    auto r = minimize_submodular(g, opts);
    CHECK_FALSE(r.converged);
    CHECK(r.minimizer.size() == 14);
}

TEST_CASE("iteration counters are reported")
{
    Rng rng(8);
    auto g = random_cut(10, rng);
    auto r = minimize_submodular(g);
    CHECK(r.major_cycles >= 1);
    CHECK(r.oracle_calls >= 10);
    CHECK(r.point.size() == 10);
}

}
