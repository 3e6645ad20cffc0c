#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "vine/gamma_codec.hpp"
#include "vine/likelihood.hpp"

namespace vine {

// A set function F over {0..N-1} carrying a current set X.
//
// toggle_gain() is const and touches only cached state, so any number of
// threads may score candidates against a frozen X; toggle() and clear()
// need exclusive access.
class SetFunctionOracle {
public:
    virtual ~SetFunctionOracle() = default;

    virtual std::size_t ground_size() const = 0;
    virtual bool contains(std::size_t e) const = 0;
    // F(X)
    virtual double value() const = 0;
    // F(X xor {e}) - F(X)
    virtual double toggle_gain(std::size_t e) const = 0;
    virtual void toggle(std::size_t e) = 0;
    // X := empty set
    virtual void clear() = 0;
    virtual std::unique_ptr<SetFunctionOracle> clone() const = 0;

    // F(X u {e}) - F(X) when e is absent, F(X) - F(X \ {e}) when present.
    double marginal_gain(std::size_t e) const
    {
        double g = toggle_gain(e);
        return contains(e) ? -g : g;
    }
    void insert(std::size_t e)
    {
        if (!contains(e))
            toggle(e);
    }
    void erase(std::size_t e)
    {
        if (contains(e))
            toggle(e);
    }
    void assign(std::span<const std::uint8_t> x);
    double evaluate(std::span<const std::uint8_t> x)
    {
        assign(x);
        return value();
    }
    Membership current() const;
};

// F(X) = sum of weights over X.
class ModularOracle final : public SetFunctionOracle {
public:
    explicit ModularOracle(std::vector<double> weights);

    std::size_t ground_size() const override { return weights_.size(); }
    bool contains(std::size_t e) const override { return set_[e] != 0; }
    double value() const override;
    double toggle_gain(std::size_t e) const override { return set_[e] ? -weights_[e] : weights_[e]; }
    void toggle(std::size_t e) override { set_[e] ^= 1; }
    void clear() override { std::fill(set_.begin(), set_.end(), 0); }
    std::unique_ptr<SetFunctionOracle> clone() const override { return std::make_unique<ModularOracle>(*this); }

    const std::vector<double> &weights() const { return weights_; }

private:
    std::vector<double> weights_;
    Membership set_;
};

// G(X) = F(X) + m(X) for a modular m.
class ModularShiftOracle final : public SetFunctionOracle {
public:
    ModularShiftOracle(std::unique_ptr<SetFunctionOracle> base, std::vector<double> shift);

    std::size_t ground_size() const override { return base_->ground_size(); }
    bool contains(std::size_t e) const override { return base_->contains(e); }
    double value() const override;
    double toggle_gain(std::size_t e) const override
    {
        return base_->toggle_gain(e) + (base_->contains(e) ? -shift_[e] : shift_[e]);
    }
    void toggle(std::size_t e) override { base_->toggle(e); }
    void clear() override { base_->clear(); }
    std::unique_ptr<SetFunctionOracle> clone() const override;

private:
    std::unique_ptr<SetFunctionOracle> base_;
    std::vector<double> shift_;
};

// Restriction of F to a subset of its ground set with the other elements
// fixed at `base`: G(X) = F(base u X) - F(base). Element k of G is element
// elements[k] of F; none of `elements` may lie in `base`.
class RestrictedOracle final : public SetFunctionOracle {
public:
    RestrictedOracle(const SetFunctionOracle &inner, std::vector<std::size_t> elements,
                     std::span<const std::uint8_t> base);

    std::size_t ground_size() const override { return elements_.size(); }
    bool contains(std::size_t e) const override { return inner_->contains(elements_[e]); }
    double value() const override { return inner_->value() - base_value_; }
    double toggle_gain(std::size_t e) const override { return inner_->toggle_gain(elements_[e]); }
    void toggle(std::size_t e) override { inner_->toggle(elements_[e]); }
    void clear() override;
    std::unique_ptr<SetFunctionOracle> clone() const override;

    const std::vector<std::size_t> &elements() const { return elements_; }

private:
    RestrictedOracle(const RestrictedOracle &other);
    std::unique_ptr<SetFunctionOracle> inner_;
    std::vector<std::size_t> elements_;
    Membership base_;
    double base_value_ = 0.0;
};

// The normalised log-posterior over gamma:
//   F(gamma) = Ft(gamma) - Ft(0),  Ft = l(t | A, theta) + log pi(A),
// with (A, u) = decode(gamma). The flat prior on theta cancels.
//
// Cached per current set: the hazard sums b (argument of beta), the survival
// sums delta, and the true degrees u + A 1. Toggling one element changes a
// single row slice of B and D, so gains and commits cost O(n).
class PosteriorObjective final : public SetFunctionOracle {
public:
    PosteriorObjective(GammaCodec codec, ObservedMatrices matrices, std::vector<long> degrees, PenaltyConfig penalty);
    static PosteriorObjective from_observed(const ObservedData &obs, const TimingModel &tm,
                                            const PenaltyConfig &penalty);

    std::size_t ground_size() const override { return codec_.dimension(); }
    bool contains(std::size_t e) const override { return gamma_[e] != 0; }
    double value() const override { return unnormalized() - base_value_; }
    double toggle_gain(std::size_t e) const override;
    void toggle(std::size_t e) override;
    void clear() override;
    std::unique_ptr<SetFunctionOracle> clone() const override
    {
        return std::make_unique<PosteriorObjective>(*this);
    }

    // l + log pi at the current set (not normalised).
    double unnormalized() const;
    // Ft(0)
    double base_value() const { return base_value_; }
    // Same quantity recomputed from the decoded (A, u) with the dense matrix
    // form; used to audit the cached path.
    double unnormalized_from_scratch(std::span<const std::uint8_t> gamma) const;

    const GammaCodec &codec() const { return codec_; }
    const ObservedMatrices &matrices() const { return matrices_; }
    const PenaltyConfig &penalty() const { return penalty_; }
    const std::vector<long> &degrees() const { return degrees_; }
    const std::vector<double> &hazard_sums() const { return hazard_sum_; }

private:
    void rebuild_cache();
    double penalty_value() const;
    double penalty_after(std::size_t a, long da, std::size_t b, long db) const;
    double excess(std::size_t v, long extra) const
    {
        return double(std::max<long>(true_degree_[v] + extra - degrees_[v], 0));
    }

    GammaCodec codec_;
    ObservedMatrices matrices_;
    std::vector<long> degrees_;
    PenaltyConfig penalty_;

    Membership gamma_;
    std::vector<double> hazard_sum_;    // b
    std::vector<double> survival_sum_;  // delta
    std::vector<long> true_degree_;     // u + A 1
    double excess_power_sum_ = 0.0;     // sum excess^p for finite p
    double base_value_ = 0.0;
};

} // namespace vine
