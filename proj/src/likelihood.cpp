#include "vine/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace vine {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

void check_dims(const AdjacencyMatrix &a, std::span<const long> pendant, std::size_t n)
{
    if (a.size() != n || pendant.size() != n)
        throw std::invalid_argument(
            fmt::format("dimension mismatch: A is {}x{}, u has {} entries, data has {} subjects", a.size(), a.size(),
                        pendant.size(), n));
    for (long x : pendant)
        if (x < 0)
            throw std::invalid_argument("pendant counts must be nonnegative");
}

} // namespace

ObservedMatrices build_matrices(const ObservedData &obs, const TimingModel &tm)
{
    const std::size_t n = obs.n;
    if (obs.times.size() != n || obs.coupons.size() != n * n)
        throw std::invalid_argument("observed data dimensions are inconsistent");
    ObservedMatrices m;
    m.n = n;
    m.hazard = SquareMatrix(n);
    m.log_survival = SquareMatrix(n);
    m.weighted_hazard = SquareMatrix(n);
    m.weighted_log_survival = SquareMatrix(n);
    m.conditioning.assign(n * n, 0.0);
    m.non_seed.assign(n, 1);
    for (auto s : obs.seeds)
        m.non_seed.at(s) = 0;

    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t u = 0; u < i; ++u) {
            double tau = obs.times[i - 1] - obs.times[u];
            double age = obs.times[i] - obs.times[u];
            if (tau < 0.0 || age < tau)
                throw std::invalid_argument(
                    fmt::format("inconsistent recruitment times: tau({};{}) = {} with age {}", u, i, tau, age));
            m.conditioning[u * n + i] = tau;
            m.hazard(u, i) = tm.conditional_hazard(tau, age);
            m.log_survival(u, i) = tm.log_conditional_survival(tau, age);
            if (obs.coupon(u, i)) {
                m.weighted_hazard(u, i) = m.hazard(u, i);
                m.weighted_log_survival(u, i) = m.log_survival(u, i);
            }
        }
    }
    return m;
}

void PenaltyConfig::check() const
{
    if (!(p >= 1.0))
        throw std::invalid_argument("penalty norm order must be >= 1");
    if (!(omega >= 0.0) || !std::isfinite(omega))
        throw std::invalid_argument("penalty weight must be nonnegative");
}

double PenaltyConfig::operator()(std::span<const double> excess) const
{
    if (omega == 0.0)
        return 0.0;
    if (std::isinf(p)) {
        double mx = 0.0;
        for (double x : excess)
            mx = std::max(mx, std::abs(x));
        return omega * mx;
    }
    if (p == 1.0) {
        double s = 0.0;
        for (double x : excess)
            s += std::abs(x);
        return omega * s;
    }
    double s = 0.0;
    for (double x : excess)
        s += std::pow(std::abs(x), p);
    return omega * std::pow(s, 1.0 / p);
}

std::vector<double> degree_excess(const AdjacencyMatrix &a, std::span<const long> pendant,
                                  std::span<const long> degrees)
{
    std::vector<double> e(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        e[i] = double(std::max<long>(pendant[i] + long(a.row_sum(i)) - degrees[i], 0));
    return e;
}

double log_prior(const AdjacencyMatrix &a, std::span<const long> pendant, std::span<const long> degrees,
                 const PenaltyConfig &pc)
{
    check_dims(a, pendant, degrees.size());
    auto e = degree_excess(a, pendant, degrees);
    return -pc(e);
}

double log_likelihood_matrix(const AdjacencyMatrix &a, std::span<const long> pendant, const ObservedMatrices &m)
{
    const std::size_t n = m.n;
    check_dims(a, pendant, n);
    const auto &B = m.weighted_hazard;
    const auto &D = m.weighted_log_survival;

    // P = A B and Q = A D, dense.
    SquareMatrix P(n), Q(n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t u = 0; u < n; ++u) {
            if (!a.get(k, u))
                continue;
            for (std::size_t i = 0; i < n; ++i) {
                P(k, i) += B(u, i);
                Q(k, i) += D(u, i);
            }
        }

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double b = 0.0, delta = 0.0;
        for (std::size_t u = 0; u < n; ++u) {
            b += B(u, i) * double(pendant[u]);
            delta += D(u, i) * double(pendant[u]);
        }
        for (std::size_t k = i; k < n; ++k) {
            b += P(k, i);
            delta += Q(k, i);
        }
        if (m.non_seed[i]) {
            if (!(b > 0.0))
                return neg_inf;
            total += std::log(b);
        }
        total += delta;
    }
    return total;
}

double log_likelihood_direct(const ObservedData &obs, const AdjacencyMatrix &a, std::span<const long> pendant,
                             const TimingModel &tm)
{
    const std::size_t n = obs.n;
    check_dims(a, pendant, n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double hazard_sum = 0.0;
        double survival = 0.0;
        for (std::size_t u = 0; u < i; ++u) {
            if (!obs.coupon(u, i))
                continue;
            long recruitees = pendant[u];
            for (std::size_t k = i; k < n; ++k)
                recruitees += a.get(u, k) ? 1 : 0;
            if (recruitees == 0)
                continue;
            double tau = obs.times[i - 1] - obs.times[u];
            double age = obs.times[i] - obs.times[u];
            hazard_sum += double(recruitees) * tm.conditional_hazard(tau, age);
            survival += double(recruitees) * tm.log_conditional_survival(tau, age);
        }
        if (!obs.is_seed(i)) {
            if (!(hazard_sum > 0.0))
                return neg_inf;
            total += std::log(hazard_sum);
        }
        total += survival;
    }
    return total;
}

} // namespace vine
