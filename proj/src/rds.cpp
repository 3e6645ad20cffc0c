#include "vine/rds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

#include <fmt/format.h>

namespace vine {

std::size_t RdsConfig::coupons_for(std::size_t subject) const
{
    return subject < coupons_per_subject.size() ? coupons_per_subject[subject] : coupons;
}

std::size_t RdsConfig::seed_total() const
{
    std::size_t total = 0;
    for (const auto &entry : seed_schedule)
        total += entry.nodes.empty() ? entry.count : entry.nodes.size();
    return total;
}

bool ObservedData::is_seed(std::size_t i) const
{
    return std::binary_search(seeds.begin(), seeds.end(), i);
}

std::vector<std::optional<std::size_t>> ObservedData::recruiters() const
{
    std::vector<std::optional<std::size_t>> parent(n);
    for (auto [r, c] : recruitment) {
        if (c >= n || r >= n || parent[c])
            throw std::invalid_argument("recruitment graph is not an arborescence forest");
        parent[c] = r;
    }
    return parent;
}

AdjacencyMatrix ObservedData::recruitment_adjacency() const
{
    AdjacencyMatrix a(n);
    for (auto [r, c] : recruitment)
        a.set(r, c, true);
    return a;
}

namespace {

enum class EventKind : int { seed = 0, recruit = 1 };

struct PendingEvent {
    double time;
    EventKind kind;
    std::size_t recruiter;  // subject index, or schedule entry for seeds
    NodeId target;

    auto key() const { return std::make_tuple(time, int(kind), recruiter, target); }
    bool operator>(const PendingEvent &o) const { return key() > o.key(); }
};

double standard_normal(Rng &rng)
{
    double u1 = uniform01(rng), u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

} // namespace

SimulationOutcome simulate(const Graph &g, const RdsConfig &cfg, Rng &rng)
{
    const std::size_t n = cfg.sample_size;
    if (n == 0)
        throw std::invalid_argument("sample size must be positive");
    if (cfg.seed_schedule.empty())
        throw std::invalid_argument("seed schedule is empty");
    bool initial = false;
    for (const auto &entry : cfg.seed_schedule) {
        if (entry.time < 0.0)
            throw std::invalid_argument("seed times must be nonnegative");
        if (entry.time == 0.0 && (entry.count > 0 || !entry.nodes.empty()))
            initial = true;
        for (NodeId v : entry.nodes)
            if (v >= g.node_count())
                throw std::invalid_argument(fmt::format("seed node {} not in graph", v));
    }
    if (!initial)
        throw std::invalid_argument("at least one seed must enter at time 0");
    if (cfg.seed_total() > n)
        throw std::invalid_argument("more seeds scheduled than the sample size");

    std::priority_queue<PendingEvent, std::vector<PendingEvent>, std::greater<>> queue;
    for (std::size_t k = 0; k < cfg.seed_schedule.size(); ++k)
        queue.push({cfg.seed_schedule[k].time, EventKind::seed, k, 0});

    constexpr std::size_t absent = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> subject_of(g.node_count(), absent);
    std::vector<std::size_t> coupons_left;
    Simulation sim;
    ObservedData &obs = sim.observed;
    SimulationTruth &truth = sim.truth;
    obs.n = n;
    obs.coupons.assign(n * n, 0);
    double last_time = -std::numeric_limits<double>::infinity();

    auto enroll = [&](NodeId v, std::optional<std::size_t> recruiter, double t) {
        std::size_t j = truth.sample_nodes.size();
        if (t <= last_time)
            t = std::nextafter(last_time, std::numeric_limits<double>::infinity());
        last_time = t;
        for (std::size_t i = 0; i < j; ++i)
            obs.coupons[i * n + j] = coupons_left[i] > 0 ? 1 : 0;
        if (recruiter) {
            --coupons_left[*recruiter];
            obs.recruitment.emplace_back(*recruiter, j);
        } else {
            obs.seeds.push_back(j);
        }
        subject_of[v] = j;
        truth.sample_nodes.push_back(v);
        truth.events.push_back({recruiter, j, t});
        obs.times.push_back(t);
        coupons_left.push_back(cfg.coupons_for(j));
        obs.coupons[j * n + j] = coupons_left[j] > 0 ? 1 : 0;
        if (coupons_left[j] == 0)
            return;
        for (NodeId w : g.neighbors(v))
            if (subject_of[w] == absent)
                queue.push({t + cfg.timing.sample(rng), EventKind::recruit, j, w});
    };

    while (truth.sample_nodes.size() < n) {
        if (queue.empty())
            return EarlyTermination{truth.sample_nodes.size(), last_time};
        PendingEvent ev = queue.top();
        queue.pop();

        if (ev.kind == EventKind::recruit) {
            if (subject_of[ev.target] != absent || coupons_left[ev.recruiter] == 0)
                continue;
            enroll(ev.target, ev.recruiter, ev.time);
            continue;
        }

        const SeedEntry &entry = cfg.seed_schedule[ev.recruiter];
        if (!entry.nodes.empty()) {
            for (NodeId v : entry.nodes) {
                if (truth.sample_nodes.size() == n)
                    break;
                if (subject_of[v] != absent)
                    throw std::invalid_argument(fmt::format("seed node {} already recruited", v));
                enroll(v, std::nullopt, ev.time);
            }
            continue;
        }
        for (std::size_t c = 0; c < entry.count && truth.sample_nodes.size() < n; ++c) {
            std::vector<NodeId> free_nodes;
            for (NodeId v = 0; v < g.node_count(); ++v)
                if (subject_of[v] == absent)
                    free_nodes.push_back(v);
            if (free_nodes.empty())
                return EarlyTermination{truth.sample_nodes.size(), last_time};
            enroll(free_nodes[uniform_index(rng, free_nodes.size())], std::nullopt, ev.time);
        }
    }

    std::vector<long> gr_degree(n, 0);
    for (auto [r, c] : obs.recruitment) {
        ++gr_degree[r];
        ++gr_degree[c];
    }
    obs.degrees.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        long d = long(g.degree(truth.sample_nodes[i]));
        if (cfg.degree_noise > 0.0)
            d = std::lround(double(d) * std::exp(cfg.degree_noise * standard_normal(rng)));
        obs.degrees[i] = std::max(d, gr_degree[i]);
    }

    truth.induced = induced_subgraph(g, truth.sample_nodes);
    truth.adjacency = to_adjacency(truth.induced);
    return sim;
}

SimulationOutcome simulate(const Graph &g, const RdsConfig &cfg)
{
    Rng rng(cfg.rng_seed);
    return simulate(g, cfg, rng);
}

std::vector<std::string> validate(const ObservedData &obs)
{
    std::vector<std::string> issues;
    const std::size_t n = obs.n;
    if (obs.coupons.size() != n * n)
        issues.push_back(fmt::format("coupon matrix has {} entries, expected {}", obs.coupons.size(), n * n));
    if (obs.degrees.size() != n)
        issues.push_back(fmt::format("degree vector has {} entries, expected {}", obs.degrees.size(), n));
    if (obs.times.size() != n)
        issues.push_back(fmt::format("time vector has {} entries, expected {}", obs.times.size(), n));
    if (!issues.empty())
        return issues;

    for (std::size_t k = 0; k < n; ++k)
        if (!std::isfinite(obs.times[k]))
            issues.push_back(fmt::format("non-finite time at index {}", k));
    for (std::size_t k = 1; k < n; ++k)
        if (!(obs.times[k] > obs.times[k - 1]))
            issues.push_back(fmt::format("non-monotone times at index {}", k));

    if (n > 0 && obs.seeds.empty())
        issues.push_back("no seeds");
    if (!std::is_sorted(obs.seeds.begin(), obs.seeds.end())
        || std::adjacent_find(obs.seeds.begin(), obs.seeds.end()) != obs.seeds.end())
        issues.push_back("seed list not strictly ascending");
    for (auto s : obs.seeds)
        if (s >= n)
            issues.push_back(fmt::format("seed index {} out of range", s));
    if (n > 0 && !obs.is_seed(0))
        issues.push_back("first subject is not a seed");

    std::vector<int> in_degree(n, 0);
    std::vector<long> gr_degree(n, 0);
    bool forest = true;
    for (auto [r, c] : obs.recruitment) {
        if (r >= n || c >= n) {
            issues.push_back(fmt::format("recruitment edge ({},{}) out of range", r, c));
            forest = false;
            continue;
        }
        if (r >= c) {
            issues.push_back(fmt::format("recruiter {} did not enter before recruitee {}", r, c));
            forest = false;
        }
        ++in_degree[c];
        ++gr_degree[r];
        ++gr_degree[c];
        if (obs.coupon(r, c) == 0)
            issues.push_back(fmt::format("recruiter {} held no coupon before event {}", r, c));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (in_degree[i] > 1)
            forest = false;
        bool root = in_degree[i] == 0;
        if (root != obs.is_seed(i))
            forest = false;
    }
    if (!forest)
        issues.push_back("not an arborescence forest rooted at the seed set");

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            auto c = obs.coupons[i * n + j];
            if (c > 1)
                issues.push_back(fmt::format("coupon entry ({},{}) is not binary", i, j));
            else if (j < i && c != 0)
                issues.push_back(fmt::format("subject {} holds a coupon before entering (event {})", i, j));
        }
        for (std::size_t j = i + 1; j < n; ++j)
            if (obs.coupon(i, j) && !obs.coupon(i, j - 1)) {
                issues.push_back(fmt::format("coupons of subject {} increase at event {}", i, j));
                break;
            }
        if (obs.degrees[i] < gr_degree[i])
            issues.push_back(fmt::format("reported degree {} of subject {} below recruitment degree {}",
                                         obs.degrees[i], i, gr_degree[i]));
    }
    return issues;
}

} // namespace vine
