#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "vine/random.hpp"

namespace vine {

enum class TimingFamily { exponential, weibull };

std::string to_string(TimingFamily f);
TimingFamily parse_timing_family(const std::string &name);

struct SupportExhausted : std::domain_error {
    using std::domain_error::domain_error;
};

// Inter-recruitment waiting-time distribution W with cdf D(t; theta).
//   Exponential(rate):        S(t) = exp(-rate t)
//   Weibull(shape, scale):    S(t) = exp(-(t/scale)^shape)
// Conditional quantities condition on W > s.
class TimingModel {
public:
    static TimingModel exponential(double rate);
    static TimingModel weibull(double shape, double scale);
    // Builds a model of `family` from its parameter vector (see params()).
    static TimingModel from_params(TimingFamily family, const std::vector<double> &params);

    TimingFamily family() const { return family_; }
    // {rate} for exponential, {shape, scale} for Weibull.
    std::vector<double> params() const;

    double log_survival(double t) const;
    double survival(double t) const;
    double density(double t) const;
    // rho(t) / S(t); throws SupportExhausted when S(t) underflows to zero.
    double hazard(double t) const;

    // log Pr[W > t | W > s]
    double log_conditional_survival(double s, double t) const;
    double conditional_survival(double s, double t) const;
    // Hazard of the conditional law at t. Conditioning on W > s scales both
    // the density and the survival by 1/S(s), so this equals hazard(t).
    double conditional_hazard(double s, double t) const;

    // Inverse-cdf draw.
    double sample(Rng &rng) const;

    double rate() const { return p_[0]; }
    double shape() const { return p_[0]; }
    double scale() const { return p_[1]; }

    std::string describe() const;

private:
    TimingModel(TimingFamily family, double a, double b) : family_(family), p_{a, b} {}
    void check_window(double s, double t) const;

    TimingFamily family_;
    std::array<double, 2> p_;
};

} // namespace vine
