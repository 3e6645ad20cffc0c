#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>

#include "vine/likelihood.hpp"

namespace vine {

namespace {

// Potential-recruitee counts |I_u(i)| for u < i; fixed while theta varies.
struct Exposure {
    std::size_t n = 0;
    std::vector<double> count;  // row-major (u, i)
    std::vector<double> tau;
    std::vector<double> age;
};

Exposure exposure_counts(const ObservedData &obs, const AdjacencyMatrix &a, std::span<const long> pendant)
{
    const std::size_t n = obs.n;
    Exposure ex;
    ex.n = n;
    ex.count.assign(n * n, 0.0);
    ex.tau.assign(n * n, 0.0);
    ex.age.assign(n * n, 0.0);
    for (std::size_t u = 0; u < n; ++u) {
        // Suffix count of sampled neighbours of u that enter at or after i.
        long later = pendant[u];
        for (std::size_t k = u + 1; k < n; ++k)
            later += a.get(u, k) ? 1 : 0;
        for (std::size_t i = u + 1; i < n; ++i) {
            if (obs.coupon(u, i)) {
                ex.count[u * n + i] = double(later);
                ex.tau[u * n + i] = obs.times[i - 1] - obs.times[u];
                ex.age[u * n + i] = obs.times[i] - obs.times[u];
            }
            later -= a.get(u, i) ? 1 : 0;
        }
    }
    return ex;
}

double exposure_log_likelihood(const Exposure &ex, const ObservedData &obs, const TimingModel &tm)
{
    const std::size_t n = ex.n;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double hazard_sum = 0.0;
        for (std::size_t u = 0; u < i; ++u) {
            double k = ex.count[u * n + i];
            if (k == 0.0)
                continue;
            hazard_sum += k * tm.conditional_hazard(ex.tau[u * n + i], ex.age[u * n + i]);
            total += k * tm.log_conditional_survival(ex.tau[u * n + i], ex.age[u * n + i]);
        }
        if (!obs.is_seed(i)) {
            if (!(hazard_sum > 0.0))
                return -std::numeric_limits<double>::infinity();
            total += std::log(hazard_sum);
        }
    }
    return total;
}

struct LineResult {
    double x;
    double value;
    bool at_edge;
};

// Maximises f over [lo, hi] with Brent's method.
template <class F>
LineResult brent_maximize(F f, double lo, double hi)
{
    auto neg = [&](double x) {
        double v = f(x);
        return std::isfinite(v) ? -v : std::numeric_limits<double>::max();
    };
    constexpr int bits = std::numeric_limits<double>::digits / 2;
    boost::uintmax_t iters = 500;
    auto [x, fx] = boost::math::tools::brent_find_minima(neg, lo, hi, bits, iters);
    double margin = 1e-4 * (hi - lo);
    return {x, -fx, x - lo < margin || hi - x < margin};
}

} // namespace

ThetaEstimate theta_step(const ObservedData &obs, const AdjacencyMatrix &a, std::span<const long> pendant,
                         const TimingModel &initial)
{
    if (obs.n < 2 || obs.seeds.size() >= obs.n)
        throw std::invalid_argument("insufficient data: no recruitment events to fit the timing model");
    Exposure ex = exposure_counts(obs, a, pendant);
    ThetaEstimate est;

    if (initial.family() == TimingFamily::exponential) {
        double centre = std::log(initial.rate());
        auto f = [&](double log_rate) {
            return exposure_log_likelihood(ex, obs, TimingModel::exponential(std::exp(log_rate)));
        };
        auto r = brent_maximize(f, centre - 20.0, centre + 20.0);
        est.model = TimingModel::exponential(std::exp(r.x));
        est.log_likelihood = r.value;
        est.iterations = 1;
        est.boundary_warning = r.at_edge;
        return est;
    }

    double log_shape = std::log(initial.shape());
    double log_scale = std::log(initial.scale());
    const double scale_centre = log_scale;
    double current = exposure_log_likelihood(ex, obs, initial);
    est.converged = false;
    bool edge = false;
    for (std::size_t round = 0; round < 200; ++round) {
        auto by_shape = brent_maximize(
            [&](double x) {
                return exposure_log_likelihood(ex, obs, TimingModel::weibull(std::exp(x), std::exp(log_scale)));
            },
            std::log(0.02), std::log(50.0));
        log_shape = by_shape.x;
        auto by_scale = brent_maximize(
            [&](double x) {
                return exposure_log_likelihood(ex, obs, TimingModel::weibull(std::exp(log_shape), std::exp(x)));
            },
            scale_centre - 20.0, scale_centre + 20.0);
        log_scale = by_scale.x;
        edge = by_shape.at_edge || by_scale.at_edge;
        est.iterations = round + 1;
        double gain = by_scale.value - current;
        current = std::max(current, by_scale.value);
        if (std::abs(gain) < 1e-8) {
            est.converged = true;
            break;
        }
    }
    est.model = TimingModel::weibull(std::exp(log_shape), std::exp(log_scale));
    est.log_likelihood = exposure_log_likelihood(ex, obs, est.model);
    est.boundary_warning = edge || !est.converged;
    return est;
}

} // namespace vine
