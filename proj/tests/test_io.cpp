#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "support.hpp"
#include "vine/observed_io.hpp"

using namespace vine;

TEST_SUITE("io") {

TEST_CASE("shortest round-trip doubles")
{
    for (double x : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, -2.5, 5e-324})
        CHECK(parse_double(format_double(x)) == x);
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(2.0) == "2");
    CHECK(std::isinf(parse_double("inf")));
    CHECK(std::isinf(parse_double("-inf")));
    CHECK_THROWS(parse_double("1.5x"));
}

TEST_CASE("observed data round trip with provenance")
{
    Graph g = test::population();
    Simulation sim = test::simulate_instance(g, 20, 3);
    std::ostringstream out;
    write_observed(out, sim.observed, {{"tool", "test"}, {"master-seed", "3"}});
    CHECK(out.str().rfind("# tool: test\n", 0) == 0);
    std::istringstream in(out.str());
    ObservedData back = read_observed(in);
    CHECK(back == sim.observed);

    std::ostringstream again;
    write_observed(again, back, {{"tool", "test"}, {"master-seed", "3"}});
    CHECK(again.str() == out.str());
}

TEST_CASE("truth round trip")
{
    Graph g = test::population();
    Simulation sim = test::simulate_instance(g, 15, 8);
    std::ostringstream out;
    write_truth(out, sim.truth, g);
    std::istringstream in(out.str());
    TruthRecord rec = read_truth(in);
    CHECK(rec.adjacency == sim.truth.adjacency);
    REQUIRE(rec.events.size() == sim.truth.events.size());
    for (std::size_t k = 0; k < rec.events.size(); ++k) {
        CHECK(rec.events[k].recruiter == sim.truth.events[k].recruiter);
        CHECK(rec.events[k].time == sim.truth.events[k].time);
    }
    CHECK(rec.sample_labels.front() == g.label(sim.truth.sample_nodes.front()));
}

TEST_CASE("malformed observed files name the line")
{
    Graph g = test::population();
    Simulation sim = test::simulate_instance(g, 6, 3);
    std::ostringstream out;
    write_observed(out, sim.observed);
    std::string text = out.str();

    auto fails_at = [](const std::string &t) -> std::size_t {
        std::istringstream in(t);
        try {
            read_observed(in);
        } catch (const ParseError &e) {
            return e.line;
        }
        return 0;
    };
    std::string bad = text;
    bad.replace(bad.find("coupons\n") + 8, 1, "7");
    CHECK(fails_at(bad) > 0);
    CHECK(fails_at("vine-observed 2\n") == 1);
    CHECK(fails_at(text + "extra\n") > 0);
    CHECK(fails_at(text.substr(0, text.size() / 2)) > 0);
}

}
