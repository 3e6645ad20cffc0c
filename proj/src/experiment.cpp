#include "vine/experiment.hpp"

#include <algorithm>
#include <cmath>

namespace vine {

Graph preferential_attachment(std::size_t nodes, std::size_t edges_per_node, Rng &rng)
{
    const std::size_t m = edges_per_node;
    if (m == 0 || nodes < m + 1)
        throw std::invalid_argument("preferential_attachment: need at least m + 1 nodes and m >= 1");
    GraphBuilder b(nodes);
    // Every edge endpoint once per incidence, so a uniform pick is
    // degree-proportional.
    std::vector<NodeId> ends;
    for (std::size_t i = 0; i <= m; ++i)
        for (std::size_t j = i + 1; j <= m; ++j) {
            b.add_edge(i, j);
            ends.push_back(i);
            ends.push_back(j);
        }
    std::vector<NodeId> chosen;
    for (std::size_t v = m + 1; v < nodes; ++v) {
        chosen.clear();
        while (chosen.size() < m) {
            NodeId t = ends[uniform_index(rng, ends.size())];
            if (std::find(chosen.begin(), chosen.end(), t) == chosen.end())
                chosen.push_back(t);
        }
        for (NodeId t : chosen) {
            b.add_edge(v, t);
            ends.push_back(v);
            ends.push_back(t);
        }
    }
    return std::move(b).build();
}

std::optional<ReplicateOutcome> run_replicate(const Graph &g, const ReplicateSpec &spec, std::uint64_t seed)
{
    ReplicateOutcome out;
    bool drawn = false;
    for (std::size_t attempt = 0; attempt < spec.attempts && !drawn; ++attempt) {
        RdsConfig cfg = spec.rds;
        cfg.rng_seed = split_seed(seed, attempt);
        auto outcome = simulate(g, cfg);
        if (auto *sim = std::get_if<Simulation>(&outcome)) {
            out.seed = cfg.rng_seed;
            out.simulation = std::move(*sim);
            drawn = true;
        }
    }
    if (!drawn)
        return std::nullopt;

    const ObservedData &obs = out.simulation.observed;
    const AdjacencyMatrix &truth = out.simulation.truth.adjacency;
    auto [up, lo] = infer_both(obs, spec.penalty, spec.model, spec.inference);
    out.upper = std::move(up);
    out.roc_upper = roc(out.upper, truth, spec.convention);
    out.corner_upper = min_corner_distance(out.roc_upper);
    if (spec.lower) {
        out.lower = std::move(lo);
        out.roc_lower = roc(*out.lower, truth, spec.convention);
        out.corner_lower = min_corner_distance(*out.roc_lower);
    }
    out.roc_baseline = gr_baseline(out.upper.codec.revealed(), truth, spec.convention);
    out.corner_baseline = min_corner_distance(out.roc_baseline).distance;

    if (spec.anneal) {
        AnnealSchedule sched = spec.anneal_schedule;
        sched.seed = split_seed(seed, 0x5A);
        AnnealResult a = simanneal(obs, spec.penalty, spec.model, sched);
        Rates r = tpr_fpr(confusion(a.adjacency, truth), spec.convention);
        out.corner_anneal = corner_distance(r.tpr, r.fpr);
        out.anneal_value = a.best_value;
    }
    return out;
}

Quartiles quartiles(std::vector<double> values)
{
    if (values.empty())
        throw std::invalid_argument("quartiles: no values");
    std::sort(values.begin(), values.end());
    auto at = [&](double q) {
        double pos = q * double(values.size() - 1);
        auto lo = std::size_t(std::floor(pos));
        auto hi = std::min(lo + 1, values.size() - 1);
        return values[lo] + (pos - double(lo)) * (values[hi] - values[lo]);
    };
    return {at(0.25), at(0.5), at(0.75)};
}

} // namespace vine
