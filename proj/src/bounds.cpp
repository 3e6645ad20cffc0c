#include "vine/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace vine {

std::string to_string(BoundKind kind)
{
    switch (kind) {
    case BoundKind::lower: return "lower";
    case BoundKind::grow: return "grow";
    case BoundKind::shrink: return "shrink";
    case BoundKind::bar: return "bar";
    }
    return "lower";
}

BoundKind parse_bound_kind(const std::string &text)
{
    if (text == "lower")
        return BoundKind::lower;
    if (text == "grow")
        return BoundKind::grow;
    if (text == "shrink")
        return BoundKind::shrink;
    if (text == "bar")
        return BoundKind::bar;
    throw std::invalid_argument("unknown bound kind '" + text + "'");
}

double ModularBound::value(std::span<const std::uint8_t> x) const
{
    double s = offset;
    for (std::size_t i = 0; i < weights.size(); ++i)
        if (x[i])
            s += weights[i];
    return s;
}

double softplus(double x)
{
    return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double logistic(double x)
{
    if (x >= 0.0)
        return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

double log_partition(std::span<const double> weights, double offset)
{
    double s = offset;
    for (double w : weights)
        s += softplus(w);
    return s;
}

std::vector<double> marginals(const ModularBound &b)
{
    std::vector<double> p(b.weights.size());
    std::transform(b.weights.begin(), b.weights.end(), p.begin(), logistic);
    return p;
}

AffineRatioBounds affine_ratio_bounds(const ModularBound &lower, const ModularBound &upper)
{
    if (lower.weights.size() != upper.weights.size())
        throw std::invalid_argument("affine_ratio_bounds: size mismatch");
    const double z_lower = std::exp(log_partition(lower));
    const double z_upper = std::exp(log_partition(upper));
    AffineRatioBounds r;
    for (std::size_t i = 0; i < lower.weights.size(); ++i) {
        r.low.push_back((lower.weights[i] + lower.offset) / z_upper);
        r.high.push_back((upper.weights[i] + upper.offset) / z_lower);
    }
    return r;
}

namespace {

class CallCounter {
public:
    explicit CallCounter(std::uint64_t budget) : budget_(budget) {}
    void charge(std::uint64_t k)
    {
        if (budget_ && calls_ + k > budget_)
            throw OracleBudgetExceeded(budget_);
        calls_ += k;
    }
    std::uint64_t calls() const { return calls_; }

private:
    std::uint64_t budget_;
    std::uint64_t calls_ = 0;
};

} // namespace

LowerBoundResult greedy_lower_bound_naive(SetFunctionOracle &f, const BoundOptions &options)
{
    const std::size_t n = f.ground_size();
    CallCounter counter(options.oracle_budget);
    f.clear();
    LowerBoundResult r;
    r.bound.weights.assign(n, 0.0);
    r.bound.kind = BoundKind::lower;

    std::vector<std::size_t> remaining(n);
    for (std::size_t e = 0; e < n; ++e)
        remaining[e] = e;
    std::vector<double> gains(n);
    while (!remaining.empty()) {
        counter.charge(remaining.size());
        std::span<double> out(gains.data(), remaining.size());
        kernels::score_toggles(f, remaining, out, options.execution);
        std::size_t best = 0;
        for (std::size_t k = 1; k < remaining.size(); ++k)
            if (out[k] > out[best])
                best = k;
        std::size_t e = remaining[best];
        r.bound.weights[e] = out[best];
        r.order.push_back(e);
        f.toggle(e);
        remaining.erase(remaining.begin() + long(best));
    }
    r.oracle_calls = counter.calls();
    return r;
}

LowerBoundResult greedy_lower_bound(SetFunctionOracle &f, const BoundOptions &options)
{
    const std::size_t n = f.ground_size();
    CallCounter counter(options.oracle_budget);
    f.clear();
    LowerBoundResult r;
    r.bound.weights.assign(n, 0.0);
    r.bound.kind = BoundKind::lower;
    if (n == 0)
        return r;

    struct Entry {
        double gain;
        std::size_t element;
        std::size_t stamp;  // round at which gain was computed
    };
    // Max-heap on gain, lowest index first among equal gains.
    auto cmp = [](const Entry &a, const Entry &b) {
        return a.gain < b.gain || (a.gain == b.gain && a.element > b.element);
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);

    std::vector<double> initial(n);
    counter.charge(n);
    kernels::score_all(f, initial, options.execution);
    for (std::size_t e = 0; e < n; ++e)
        heap.push({initial[e], e, 0});

    for (std::size_t round = 0; round < n; ++round) {
        // Pop until a gain computed in this round sits on top.
        for (;;) {
            Entry top = heap.top();
            if (top.stamp == round)
                break;
            heap.pop();
            counter.charge(1);
            heap.push({f.toggle_gain(top.element), top.element, round});
        }
        Entry best = heap.top();
        heap.pop();
        // Refresh stale entries that rounding could put level with the winner.
        std::vector<Entry> near;
        while (!heap.empty() && heap.top().gain >= best.gain - options.lazy_slack * (1.0 + std::abs(best.gain))) {
            Entry e = heap.top();
            heap.pop();
            if (e.stamp != round) {
                counter.charge(1);
                e = {f.toggle_gain(e.element), e.element, round};
            }
            near.push_back(e);
        }
        for (auto &e : near) {
            if (cmp(best, e))
                std::swap(best, e);
        }
        for (const auto &e : near)
            heap.push(e);

        r.bound.weights[best.element] = best.gain;
        r.order.push_back(best.element);
        f.toggle(best.element);
    }
    r.oracle_calls = counter.calls();
    return r;
}

SemigradientCache semigradient_cache(SetFunctionOracle &f, const BoundOptions &options)
{
    const std::size_t n = f.ground_size();
    CallCounter counter(options.oracle_budget);
    SemigradientCache cache;
    cache.singleton.assign(n, 0.0);
    cache.complement.assign(n, 0.0);

    f.clear();
    const double empty_value = f.value();
    counter.charge(n);
    kernels::score_all(f, cache.singleton, options.execution);

    for (std::size_t e = 0; e < n; ++e)
        f.insert(e);
    cache.full_value = f.value() - empty_value;
    counter.charge(n);
    kernels::score_all(f, cache.complement, options.execution);
    for (auto &g : cache.complement)
        g = -g;
    cache.oracle_calls = counter.calls();
    return cache;
}

std::array<ModularBound, 3> supergradients(SetFunctionOracle &f, const Membership &x,
                                           const SemigradientCache &cache, const BoundOptions &options,
                                           std::uint64_t *oracle_calls)
{
    const std::size_t n = f.ground_size();
    if (x.size() != n || cache.singleton.size() != n)
        throw std::invalid_argument("supergradient: anchor or cache has the wrong size");
    CallCounter counter(options.oracle_budget);
    f.clear();
    const double empty_value = f.value();
    f.assign(x);
    const double fx = f.value() - empty_value;
    std::vector<double> local(n);
    counter.charge(n);
    kernels::score_all(f, local, options.execution);

    std::array<ModularBound, 3> out;
    const BoundKind kinds[3] = {BoundKind::grow, BoundKind::shrink, BoundKind::bar};
    for (int k = 0; k < 3; ++k) {
        auto &b = out[k];
        b.kind = kinds[k];
        b.anchor = x;
        b.weights.resize(n);
        double sx = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double w;
            if (x[j]) {
                w = kinds[k] == BoundKind::shrink ? -local[j] : cache.complement[j];
                sx += w;
            } else {
                w = kinds[k] == BoundKind::grow ? local[j] : cache.singleton[j];
            }
            b.weights[j] = w;
        }
        b.offset = fx - sx;
    }
    if (oracle_calls)
        *oracle_calls += counter.calls();
    return out;
}

ModularBound supergradient(SetFunctionOracle &f, const Membership &x, BoundKind kind,
                           const SemigradientCache &cache, const BoundOptions &options,
                           std::uint64_t *oracle_calls)
{
    if (kind == BoundKind::lower)
        throw std::invalid_argument("supergradient: kind must be grow, shrink or bar");
    auto all = supergradients(f, x, cache, options, oracle_calls);
    return all[kind == BoundKind::grow ? 0 : kind == BoundKind::shrink ? 1 : 2];
}

std::vector<double> m_function(const SemigradientCache &cache)
{
    std::vector<double> m(cache.singleton.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        m[i] = softplus(-cache.complement[i]) - softplus(cache.singleton[i]);
    return m;
}

UpperBoundResult upper_bound(SetFunctionOracle &f, const BoundOptions &options, const MinNormOptions &solver)
{
    UpperBoundResult r;
    SemigradientCache cache = semigradient_cache(f, options);
    r.oracle_calls = cache.oracle_calls;
    r.m = m_function(cache);

    MinNormOptions mn = solver;
    if (options.oracle_budget) {
        std::uint64_t left = options.oracle_budget - std::min(options.oracle_budget, r.oracle_calls);
        mn.oracle_budget = mn.oracle_budget ? std::min(mn.oracle_budget, left) : left;
    }
    ModularShiftOracle g(f.clone(), r.m);
    r.solve = minimize_submodular(g, mn);
    r.oracle_calls += r.solve.oracle_calls;
    r.converged = r.solve.converged;

    BoundOptions rest = options;
    if (options.oracle_budget)
        rest.oracle_budget = options.oracle_budget - std::min(options.oracle_budget, r.oracle_calls);
    if (options.oracle_budget && rest.oracle_budget == 0)
        throw OracleBudgetExceeded(options.oracle_budget);
    auto kinds = supergradients(f, r.solve.minimizer, cache, rest, &r.oracle_calls);
    std::size_t best = 0;
    for (std::size_t k = 0; k < 3; ++k) {
        r.log_partitions[k] = log_partition(kinds[k]);
        if (r.log_partitions[k] < r.log_partitions[best])
            best = k;
    }
    r.bound = std::move(kinds[best]);
    return r;
}

} // namespace vine
