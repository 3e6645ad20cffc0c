#include "vine/timing.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace vine {

std::string to_string(TimingFamily f)
{
    return f == TimingFamily::exponential ? "exponential" : "weibull";
}

TimingFamily parse_timing_family(const std::string &name)
{
    if (name == "exponential" || name == "exp")
        return TimingFamily::exponential;
    if (name == "weibull")
        return TimingFamily::weibull;
    throw std::invalid_argument("unknown timing family '" + name + "'");
}

TimingModel TimingModel::exponential(double rate)
{
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw std::invalid_argument("exponential rate must be positive and finite");
    return TimingModel(TimingFamily::exponential, rate, 0.0);
}

TimingModel TimingModel::weibull(double shape, double scale)
{
    if (!(shape > 0.0) || !(scale > 0.0) || !std::isfinite(shape) || !std::isfinite(scale))
        throw std::invalid_argument("Weibull shape and scale must be positive and finite");
    return TimingModel(TimingFamily::weibull, shape, scale);
}

TimingModel TimingModel::from_params(TimingFamily family, const std::vector<double> &params)
{
    if (family == TimingFamily::exponential) {
        if (params.size() != 1)
            throw std::invalid_argument("exponential model takes one parameter");
        return exponential(params[0]);
    }
    if (params.size() != 2)
        throw std::invalid_argument("Weibull model takes two parameters");
    return weibull(params[0], params[1]);
}

std::vector<double> TimingModel::params() const
{
    if (family_ == TimingFamily::exponential)
        return {p_[0]};
    return {p_[0], p_[1]};
}

double TimingModel::log_survival(double t) const
{
    if (t <= 0.0)
        return 0.0;
    if (family_ == TimingFamily::exponential)
        return -p_[0] * t;
    return -std::pow(t / p_[1], p_[0]);
}

double TimingModel::survival(double t) const
{
    return std::exp(log_survival(t));
}

double TimingModel::density(double t) const
{
    if (t < 0.0)
        return 0.0;
    if (family_ == TimingFamily::exponential)
        return p_[0] * std::exp(-p_[0] * t);
    if (t == 0.0)
        return p_[0] < 1.0 ? std::numeric_limits<double>::infinity() : (p_[0] == 1.0 ? 1.0 / p_[1] : 0.0);
    double z = t / p_[1];
    return p_[0] / p_[1] * std::pow(z, p_[0] - 1.0) * std::exp(-std::pow(z, p_[0]));
}

double TimingModel::hazard(double t) const
{
    if (t < 0.0)
        throw std::invalid_argument("hazard: negative time");
    if (!std::isfinite(log_survival(t)))
        throw SupportExhausted(fmt::format("survival underflows to zero at t={}", t));
    if (family_ == TimingFamily::exponential)
        return p_[0];
    double k = p_[0], sigma = p_[1];
    if (t == 0.0)
        return k < 1.0 ? std::numeric_limits<double>::infinity() : (k == 1.0 ? 1.0 / sigma : 0.0);
    return k / sigma * std::pow(t / sigma, k - 1.0);
}

void TimingModel::check_window(double s, double t) const
{
    if (s < 0.0)
        throw std::invalid_argument("conditioning time must be nonnegative");
    if (t < s)
        throw std::invalid_argument(fmt::format("evaluation time {} precedes conditioning time {}", t, s));
}

double TimingModel::log_conditional_survival(double s, double t) const
{
    check_window(s, t);
    if (t == s)
        return 0.0;
    if (family_ == TimingFamily::exponential)
        return -p_[0] * (t - s);
    return log_survival(t) - log_survival(s);
}

double TimingModel::conditional_survival(double s, double t) const
{
    return std::exp(log_conditional_survival(s, t));
}

double TimingModel::conditional_hazard(double s, double t) const
{
    check_window(s, t);
    return hazard(t);
}

double TimingModel::sample(Rng &rng) const
{
    double e = -std::log1p(-uniform01(rng));
    if (family_ == TimingFamily::exponential)
        return e / p_[0];
    return p_[1] * std::pow(e, 1.0 / p_[0]);
}

std::string TimingModel::describe() const
{
    if (family_ == TimingFamily::exponential)
        return fmt::format("exponential(rate={:.17g})", p_[0]);
    return fmt::format("weibull(shape={:.17g},scale={:.17g})", p_[0], p_[1]);
}

} // namespace vine
