#include "vine/objective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vine {

void SetFunctionOracle::assign(std::span<const std::uint8_t> x)
{
    if (x.size() != ground_size())
        throw std::invalid_argument("assign: membership vector has the wrong size");
    for (std::size_t e = 0; e < x.size(); ++e)
        if (contains(e) != (x[e] != 0))
            toggle(e);
}

Membership SetFunctionOracle::current() const
{
    Membership x(ground_size());
    for (std::size_t e = 0; e < x.size(); ++e)
        x[e] = contains(e);
    return x;
}

ModularOracle::ModularOracle(std::vector<double> weights)
    : weights_(std::move(weights)), set_(weights_.size(), 0)
{
}

double ModularOracle::value() const
{
    double s = 0.0;
    for (std::size_t e = 0; e < weights_.size(); ++e)
        if (set_[e])
            s += weights_[e];
    return s;
}

ModularShiftOracle::ModularShiftOracle(std::unique_ptr<SetFunctionOracle> base, std::vector<double> shift)
    : base_(std::move(base)), shift_(std::move(shift))
{
    if (shift_.size() != base_->ground_size())
        throw std::invalid_argument("modular shift has the wrong size");
}

double ModularShiftOracle::value() const
{
    double s = base_->value();
    for (std::size_t e = 0; e < shift_.size(); ++e)
        if (base_->contains(e))
            s += shift_[e];
    return s;
}

std::unique_ptr<SetFunctionOracle> ModularShiftOracle::clone() const
{
    return std::make_unique<ModularShiftOracle>(base_->clone(), shift_);
}

RestrictedOracle::RestrictedOracle(const SetFunctionOracle &inner, std::vector<std::size_t> elements,
                                   std::span<const std::uint8_t> base)
    : inner_(inner.clone()), elements_(std::move(elements)), base_(base.begin(), base.end())
{
    if (base_.size() != inner_->ground_size())
        throw std::invalid_argument("restriction base has the wrong size");
    for (auto e : elements_)
        if (e >= base_.size() || base_[e])
            throw std::invalid_argument("restricted element outside the ground set or inside the base");
    inner_->assign(base_);
    base_value_ = inner_->value();
}

RestrictedOracle::RestrictedOracle(const RestrictedOracle &other)
    : inner_(other.inner_->clone()), elements_(other.elements_), base_(other.base_), base_value_(other.base_value_)
{
}

void RestrictedOracle::clear()
{
    for (auto e : elements_)
        inner_->erase(e);
}

std::unique_ptr<SetFunctionOracle> RestrictedOracle::clone() const
{
    return std::unique_ptr<SetFunctionOracle>(new RestrictedOracle(*this));
}

PosteriorObjective::PosteriorObjective(GammaCodec codec, ObservedMatrices matrices, std::vector<long> degrees,
                                       PenaltyConfig penalty)
    : codec_(std::move(codec)), matrices_(std::move(matrices)), degrees_(std::move(degrees)), penalty_(penalty)
{
    penalty_.check();
    const std::size_t n = codec_.subjects();
    if (matrices_.n != n || degrees_.size() != n)
        throw std::invalid_argument("objective: codec, matrices and degrees disagree on the sample size");
    gamma_.assign(codec_.dimension(), 0);
    rebuild_cache();
    base_value_ = unnormalized();
    if (!std::isfinite(base_value_))
        throw std::invalid_argument("objective: the revealed recruitment graph has zero likelihood");
}

PosteriorObjective PosteriorObjective::from_observed(const ObservedData &obs, const TimingModel &tm,
                                                     const PenaltyConfig &penalty)
{
    return PosteriorObjective(GammaCodec::for_observed(obs), build_matrices(obs, tm), obs.degrees, penalty);
}

void PosteriorObjective::rebuild_cache()
{
    const std::size_t n = codec_.subjects();
    const auto &B = matrices_.weighted_hazard;
    const auto &D = matrices_.weighted_log_survival;
    auto decoded = codec_.decode(gamma_);

    hazard_sum_.assign(n, 0.0);
    survival_sum_.assign(n, 0.0);
    true_degree_.assign(n, 0);
    for (std::size_t u = 0; u < n; ++u) {
        true_degree_[u] = decoded.pendant[u] + long(decoded.adjacency.row_sum(u));
        double w = double(decoded.pendant[u]);
        for (std::size_t c = u + 1; c < n; ++c) {
            hazard_sum_[c] += w * B(u, c);
            survival_sum_[c] += w * D(u, c);
        }
    }
    for (auto [i, j] : decoded.adjacency.edges())
        for (std::size_t c = i + 1; c <= j; ++c) {
            hazard_sum_[c] += B(i, c);
            survival_sum_[c] += D(i, c);
        }

    excess_power_sum_ = 0.0;
    if (!std::isinf(penalty_.p))
        for (std::size_t v = 0; v < n; ++v)
            excess_power_sum_ += std::pow(excess(v, 0), penalty_.p);
}

double PosteriorObjective::penalty_value() const
{
    if (penalty_.omega == 0.0)
        return 0.0;
    if (std::isinf(penalty_.p)) {
        double mx = 0.0;
        for (std::size_t v = 0; v < true_degree_.size(); ++v)
            mx = std::max(mx, excess(v, 0));
        return penalty_.omega * mx;
    }
    if (penalty_.p == 1.0)
        return penalty_.omega * excess_power_sum_;
    return penalty_.omega * std::pow(std::max(excess_power_sum_, 0.0), 1.0 / penalty_.p);
}

// Penalty after adding da to the true degree of a and db to that of b
// (a == b allowed).
double PosteriorObjective::penalty_after(std::size_t a, long da, std::size_t b, long db) const
{
    if (penalty_.omega == 0.0)
        return 0.0;
    if (a == b) {
        da += db;
        db = 0;
    }
    if (std::isinf(penalty_.p)) {
        double mx = 0.0;
        for (std::size_t v = 0; v < true_degree_.size(); ++v) {
            long extra = v == a ? da : (v == b ? db : 0);
            mx = std::max(mx, excess(v, extra));
        }
        return penalty_.omega * mx;
    }
    const double p = penalty_.p;
    double s = excess_power_sum_ - std::pow(excess(a, 0), p) + std::pow(excess(a, da), p);
    if (a != b)
        s += std::pow(excess(b, db), p) - std::pow(excess(b, 0), p);
    if (p == 1.0)
        return penalty_.omega * s;
    return penalty_.omega * std::pow(std::max(s, 0.0), 1.0 / p);
}

double PosteriorObjective::unnormalized() const
{
    double total = 0.0;
    for (std::size_t c = 0; c < hazard_sum_.size(); ++c) {
        if (matrices_.non_seed[c]) {
            if (!(hazard_sum_[c] > 0.0))
                return -std::numeric_limits<double>::infinity();
            total += std::log(hazard_sum_[c]);
        }
        total += survival_sum_[c];
    }
    return total - penalty_value();
}

double PosteriorObjective::toggle_gain(std::size_t e) const
{
    if (e >= gamma_.size())
        throw std::out_of_range("objective element out of range");
    const double sign = gamma_[e] ? -1.0 : 1.0;
    const auto &B = matrices_.weighted_hazard;
    const auto &D = matrices_.weighted_log_survival;
    const auto &non_seed = matrices_.non_seed;

    std::size_t row, first, last;
    double scale;
    std::size_t a, b;
    long da, db;
    if (codec_.is_edge_element(e)) {
        auto [i, j] = codec_.edge(e);
        row = i;
        first = i + 1;
        last = j + 1;
        scale = sign;
        a = i;
        b = j;
        da = db = long(sign);
    } else {
        auto [s, k] = codec_.pendant_bit(e);
        row = s;
        first = s + 1;
        last = hazard_sum_.size();
        scale = sign * double(1L << k);
        a = b = s;
        da = long(scale);
        db = 0;
    }

    const double *brow = B.row(row).data();
    const double *drow = D.row(row).data();
    double gain = 0.0;
    for (std::size_t c = first; c < last; ++c) {
        double db_c = scale * brow[c];
        if (db_c != 0.0 && non_seed[c]) {
            double updated = hazard_sum_[c] + db_c;
            if (!(updated > 0.0))
                return -std::numeric_limits<double>::infinity();
            gain += std::log1p(db_c / hazard_sum_[c]);
        }
        gain += scale * drow[c];
    }
    gain -= penalty_after(a, da, b, db) - penalty_value();
    return gain;
}

void PosteriorObjective::toggle(std::size_t e)
{
    if (e >= gamma_.size())
        throw std::out_of_range("objective element out of range");
    const double sign = gamma_[e] ? -1.0 : 1.0;
    const auto &B = matrices_.weighted_hazard;
    const auto &D = matrices_.weighted_log_survival;
    gamma_[e] ^= 1;

    if (codec_.is_edge_element(e)) {
        auto [i, j] = codec_.edge(e);
        for (std::size_t c = i + 1; c <= j; ++c) {
            hazard_sum_[c] += sign * B(i, c);
            survival_sum_[c] += sign * D(i, c);
        }
        true_degree_[i] += long(sign);
        true_degree_[j] += long(sign);
    } else {
        auto [s, k] = codec_.pendant_bit(e);
        double w = sign * double(1L << k);
        for (std::size_t c = s + 1; c < hazard_sum_.size(); ++c) {
            hazard_sum_[c] += w * B(s, c);
            survival_sum_[c] += w * D(s, c);
        }
        true_degree_[s] += long(w);
    }

    if (!std::isinf(penalty_.p)) {
        excess_power_sum_ = 0.0;
        for (std::size_t v = 0; v < true_degree_.size(); ++v)
            excess_power_sum_ += std::pow(excess(v, 0), penalty_.p);
    }
}

void PosteriorObjective::clear()
{
    std::fill(gamma_.begin(), gamma_.end(), 0);
    rebuild_cache();
}

double PosteriorObjective::unnormalized_from_scratch(std::span<const std::uint8_t> gamma) const
{
    auto decoded = codec_.decode(gamma);
    double l = log_likelihood_matrix(decoded.adjacency, decoded.pendant, matrices_);
    return l + log_prior(decoded.adjacency, decoded.pendant, degrees_, penalty_);
}

} // namespace vine
