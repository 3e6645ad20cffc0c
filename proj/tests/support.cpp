#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace vine::test {

Graph population(std::size_t nodes, std::size_t attach, std::uint64_t seed)
{
    Rng rng(seed);
    return preferential_attachment(nodes, attach, rng);
}

Simulation simulate_instance(const Graph &g, std::size_t n, std::uint64_t seed, std::size_t coupons,
                             const TimingModel &tm)
{
    RdsConfig cfg;
    cfg.sample_size = n;
    cfg.coupons = coupons;
    cfg.timing = tm;
    for (std::uint64_t k = 0; k < 100; ++k) {
        cfg.rng_seed = split_seed(seed, k);
        auto out = simulate(g, cfg);
        if (auto *sim = std::get_if<Simulation>(&out))
            return std::move(*sim);
    }
    throw std::runtime_error("simulate_instance: every attempt terminated early");
}

SmallInstance small_instance(std::uint64_t seed, std::size_t n, std::size_t size, const PenaltyConfig &pc)
{
    static const Graph g = population();
    SmallInstance s;
    s.sim = simulate_instance(g, n, seed);
    s.full = std::make_unique<PosteriorObjective>(
        PosteriorObjective::from_observed(s.sim.observed, TimingModel::exponential(1.0), pc));
    const std::size_t dim = s.full->ground_size();
    Rng rng(split_seed(seed, 999));
    std::vector<std::size_t> all(dim);
    for (std::size_t e = 0; e < dim; ++e)
        all[e] = e;
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<std::size_t> chosen(all.begin(), all.begin() + long(std::min(size, dim)));
    std::sort(chosen.begin(), chosen.end());
    Membership base(dim, 0);
    for (std::size_t k = chosen.size(); k < dim; ++k)
        base[all[k]] = uniform01(rng) < 0.3;
    s.f = std::make_unique<RestrictedOracle>(*s.full, chosen, base);
    return s;
}

std::vector<double> enumerate(SetFunctionOracle &f)
{
    const std::size_t n = f.ground_size();
    if (n > 24)
        throw std::invalid_argument("enumerate: ground set too large");
    std::vector<double> out(std::size_t(1) << n);
    f.clear();
    out[0] = f.value();
    // Gray code: one toggle per subset.
    std::size_t mask = 0;
    for (std::size_t k = 1; k < out.size(); ++k) {
        std::size_t bit = std::size_t(__builtin_ctzll(k));
        f.toggle(bit);
        mask ^= std::size_t(1) << bit;
        out[mask] = f.value();
    }
    f.clear();
    return out;
}

double log_sum_exp(const std::vector<double> &v)
{
    double m = *std::max_element(v.begin(), v.end());
    double s = 0.0;
    for (double x : v)
        s += std::exp(x - m);
    return m + std::log(s);
}

double ks_statistic(std::vector<double> xs, const std::function<double(double)> &cdf)
{
    std::sort(xs.begin(), xs.end());
    const double n = double(xs.size());
    double d = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        double f = cdf(xs[k]);
        d = std::max({d, double(k + 1) / n - f, f - double(k) / n});
    }
    return d;
}

double ks_pvalue(double d, std::size_t n)
{
    double rn = std::sqrt(double(n));
    double lambda = (rn + 0.12 + 0.11 / rn) * d;
    if (lambda < 1e-3)
        return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 200; ++k) {
        double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 ? 2.0 : -2.0) * term;
        if (term < 1e-16)
            break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

double chi_square_pvalue(double stat, double dof)
{
    return boost::math::gamma_q(dof / 2.0, stat / 2.0);
}

} // namespace vine::test
