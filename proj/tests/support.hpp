#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "vine/experiment.hpp"
#include "vine/objective.hpp"

namespace vine::test {

// Sparse heavy-tailed population used by most tests.
Graph population(std::size_t nodes = 60, std::size_t attach = 3, std::uint64_t seed = 11);

// First successful simulation from split_seed(seed, k), k = 0, 1, ...
Simulation simulate_instance(const Graph &g, std::size_t n, std::uint64_t seed, std::size_t coupons = 3,
                             const TimingModel &tm = TimingModel::exponential(1.0));

// A PosteriorObjective restricted to at most `size` elements drawn at random
// (edges and pendant bits mixed), the rest fixed at a random base set.
struct SmallInstance {
    Simulation sim;
    std::unique_ptr<PosteriorObjective> full;
    std::unique_ptr<RestrictedOracle> f;
};
SmallInstance small_instance(std::uint64_t seed, std::size_t n, std::size_t size, const PenaltyConfig &pc);

// F over every subset; index bit k = element k.
std::vector<double> enumerate(SetFunctionOracle &f);

double log_sum_exp(const std::vector<double> &v);

// Two-sided one-sample Kolmogorov-Smirnov test.
double ks_statistic(std::vector<double> xs, const std::function<double(double)> &cdf);
double ks_pvalue(double d, std::size_t n);

// Upper tail of the chi-square distribution.
double chi_square_pvalue(double stat, double dof);

} // namespace vine::test
