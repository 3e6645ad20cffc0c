#include "vine/inference.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "vine/eval.hpp"

namespace vine {

std::string to_string(BoundChoice c)
{
    return c == BoundChoice::upper ? "upper" : "lower";
}

BoundChoice parse_bound_choice(const std::string &text)
{
    if (text == "upper")
        return BoundChoice::upper;
    if (text == "lower")
        return BoundChoice::lower;
    throw std::invalid_argument("unknown bound '" + text + "' (expected upper or lower)");
}

std::string to_string(PendantRule r)
{
    return r == PendantRule::marginals ? "marginals" : "completion";
}

PendantRule parse_pendant_rule(const std::string &text)
{
    if (text == "marginals")
        return PendantRule::marginals;
    if (text == "completion")
        return PendantRule::completion;
    throw std::invalid_argument("unknown pendant rule '" + text + "' (expected marginals or completion)");
}

AdjacencyMatrix InferenceResult::threshold(double zeta) const
{
    AdjacencyMatrix a = codec.revealed();
    for (std::size_t k = 0; k < edge_weights.size(); ++k)
        if (edge_weights[k] >= zeta) {
            auto [i, j] = codec.edge(k);
            a.set(i, j, true);
        }
    return a;
}

std::vector<long> InferenceResult::pendant_estimate() const
{
    const std::size_t n = codec.subjects(), bits = codec.bits_per_subject();
    std::vector<long> u(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        long v = 0;
        for (std::size_t k = 0; k < bits; ++k)
            if (logistic(pendant_weights[i * bits + k]) > 0.5)
                v += 1L << k;
        u[i] = std::min(v, codec.u_max());
    }
    return u;
}

std::vector<double> threshold_grid(std::span<const double> weights)
{
    std::vector<double> distinct(weights.begin(), weights.end());
    std::sort(distinct.begin(), distinct.end(), std::greater<>());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> grid{inf};
    for (double w : distinct)
        if (std::isfinite(w))
            grid.push_back(w);
    grid.push_back(-inf);
    return grid;
}

namespace {

// Free-pair indices by descending weight, ascending index on ties.
std::vector<std::size_t> by_weight(const std::vector<double> &w)
{
    std::vector<std::size_t> order(w.size());
    std::iota(order.begin(), order.end(), std::size_t(0));
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });
    return order;
}

InferenceResult assemble(BoundChoice choice, const ModularBound &bound, const PosteriorObjective &f,
                         double lz_lower, const UpperBoundResult &upper, const TimingModel &tm)
{
    InferenceResult res;
    res.choice = choice;
    res.bound = bound;
    res.codec = f.codec();
    const std::size_t n1 = res.codec.edge_elements();
    res.edge_weights.assign(bound.weights.begin(), bound.weights.begin() + long(n1));
    res.pendant_weights.assign(bound.weights.begin() + long(n1), bound.weights.end());
    res.log_partition_lower = lz_lower;
    res.log_partition_upper = log_partition(upper.bound);
    res.upper_kinds = upper.log_partitions;
    res.edge_marginals.resize(n1);
    std::transform(res.edge_weights.begin(), res.edge_weights.end(), res.edge_marginals.begin(), logistic);

    res.grid = threshold_grid(res.edge_weights);

    res.theta_trajectory = {tm};
    res.converged = choice == BoundChoice::lower || upper.converged;
    return res;
}

} // namespace

std::pair<InferenceResult, InferenceResult> infer_both(const ObservedData &obs, const PenaltyConfig &pc,
                                                       const TimingModel &tm, const InferenceOptions &options)
{
    auto start = std::chrono::steady_clock::now();
    if (auto problems = validate(obs); !problems.empty())
        throw std::invalid_argument("observed data is invalid: " + problems.front());
    PosteriorObjective f = PosteriorObjective::from_observed(obs, tm, pc);
    LowerBoundResult lower = greedy_lower_bound(f, options.oracle);
    UpperBoundResult upper = upper_bound(f, options.oracle, options.solver);
    const double lz_lower = log_partition(lower.bound);

    InferenceResult up = assemble(BoundChoice::upper, upper.bound, f, lz_lower, upper, tm);
    InferenceResult lo = assemble(BoundChoice::lower, lower.bound, f, lz_lower, upper, tm);
    up.oracle_calls = lo.oracle_calls = lower.oracle_calls + upper.oracle_calls;
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    up.wall_seconds = lo.wall_seconds = secs;
    return {std::move(up), std::move(lo)};
}

InferenceResult infer(const ObservedData &obs, const PenaltyConfig &pc, const TimingModel &tm,
                      const InferenceOptions &options)
{
    auto both = infer_both(obs, pc, tm, options);
    return options.bound == BoundChoice::upper ? std::move(both.first) : std::move(both.second);
}

double select_zeta(const InferenceResult &res, PosteriorObjective &f)
{
    const GammaCodec &codec = res.codec;
    if (f.ground_size() != codec.dimension())
        throw std::invalid_argument("select_zeta: objective does not match the inference codec");
    f.clear();
    auto u = res.pendant_estimate();
    for (std::size_t i = 0; i < codec.subjects(); ++i)
        for (std::size_t k = 0; k < codec.bits_per_subject(); ++k)
            if ((u[i] >> k) & 1)
                f.toggle(codec.pendant_element(i, k));

    auto order = by_weight(res.edge_weights);
    std::size_t next = 0;
    double best_zeta = res.grid.front();
    double best_value = -std::numeric_limits<double>::infinity();
    bool have = false;
    for (double zeta : res.grid) {
        while (next < order.size() && res.edge_weights[order[next]] >= zeta)
            f.toggle(order[next++]);
        double v = f.value();
        if (!have || v > best_value) {
            best_value = v;
            best_zeta = zeta;
            have = true;
        }
    }
    return best_zeta;
}

AlternationResult alternate(const ObservedData &obs, const PenaltyConfig &pc, const TimingModel &theta0,
                            std::size_t rounds, const InferenceOptions &options, const AdjacencyMatrix *truth)
{
    if (rounds == 0)
        throw std::invalid_argument("alternate: rounds must be at least 1");
    AlternationResult out;
    out.theta = theta0;
    std::vector<TimingModel> trajectory{theta0};
    std::optional<AdjacencyMatrix> previous;

    for (std::size_t r = 0; r < rounds; ++r) {
        InferenceResult res = infer(obs, pc, out.theta, options);
        double zeta;
        if (truth) {
            zeta = min_corner_distance(roc(res, *truth)).zeta;
            if (std::isnan(zeta))
                zeta = res.grid.front();
        } else {
            PosteriorObjective f = PosteriorObjective::from_observed(obs, out.theta, pc);
            zeta = select_zeta(res, f);
        }
        res.selected_zeta = zeta;
        out.adjacency = res.threshold(zeta);
        if (options.pendant == PendantRule::completion) {
            out.pendant.assign(obs.n, 0);
            for (std::size_t i = 0; i < obs.n; ++i)
                out.pendant[i] = std::clamp(obs.degrees[i] - long(out.adjacency.row_sum(i)), 0L, res.codec.u_max());
        } else {
            out.pendant = res.pendant_estimate();
        }
        out.rounds = r + 1;

        TimingModel before = out.theta;
        try {
            out.theta = theta_step(obs, out.adjacency, out.pendant, out.theta).model;
        } catch (const std::exception &) {
            out.theta_step_failed = true;
        }
        trajectory.push_back(out.theta);
        res.theta_trajectory = trajectory;
        out.last = std::move(res);
        if (out.theta_step_failed)
            break;

        auto p0 = before.params(), p1 = out.theta.params();
        double change = 0.0;
        for (std::size_t k = 0; k < p0.size(); ++k)
            change = std::max(change, std::abs(p1[k] - p0[k]) / std::max(std::abs(p0[k]), 1e-300));
        bool same_a = previous && *previous == out.adjacency;
        previous = out.adjacency;
        if (change < 1e-6 && same_a)
            break;
    }
    return out;
}

} // namespace vine
