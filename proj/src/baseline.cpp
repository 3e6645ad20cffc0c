#include "vine/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vine/random.hpp"

namespace vine {

RocResult gr_baseline_from_tpr(double tpr)
{
    RocResult r;
    const double inf = std::numeric_limits<double>::infinity();
    r.points = {{std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0}, {inf, 0.0, tpr}, {-inf, 1.0, 1.0}};
    r.auc = auc(r.points);
    return r;
}

RocResult gr_baseline(const AdjacencyMatrix &revealed, const AdjacencyMatrix &truth, Convention convention)
{
    Rates rates = tpr_fpr(confusion(revealed, truth), convention);
    RocResult r = gr_baseline_from_tpr(rates.tpr);
    r.points[1].fpr = rates.fpr;
    r.auc = auc(r.points);
    r.convention = convention;
    r.degenerate = rates.degenerate;
    return r;
}

namespace {

double quartile_range(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    auto at = [&](double q) {
        double pos = q * double(v.size() - 1);
        auto lo = std::size_t(std::floor(pos));
        auto hi = std::min(lo + 1, v.size() - 1);
        return v[lo] + (pos - double(lo)) * (v[hi] - v[lo]);
    };
    return at(0.75) - at(0.25);
}

struct Chain {
    Membership best;
    double best_value = 0.0;
    std::uint64_t steps = 0, accepted = 0;
    std::vector<double> temperatures, trace;
};

Chain run_chain(PosteriorObjective &f, double t0, const AnnealSchedule &s, std::uint64_t per_stage,
                std::uint64_t cap, std::uint64_t seed)
{
    const std::size_t n = f.ground_size();
    Rng rng(seed);
    f.clear();
    Chain c;
    double current = f.value();
    c.best = f.current();
    c.best_value = current;
    double t = t0;
    for (std::size_t stage = 0; stage < s.stages && c.steps < cap; ++stage) {
        c.temperatures.push_back(t);
        for (std::uint64_t k = 0; k < per_stage && c.steps < cap; ++k) {
            ++c.steps;
            auto e = std::size_t(uniform_index(rng, n));
            double gain = f.toggle_gain(e);
            if (!(gain > -std::numeric_limits<double>::infinity()))
                continue;
            bool accept = gain >= 0.0 || uniform01(rng) < std::exp(gain / t);
            if (!accept)
                continue;
            f.toggle(e);
            current += gain;
            ++c.accepted;
            if (current > c.best_value) {
                c.best_value = current;
                c.best = f.current();
            }
        }
        c.trace.push_back(c.best_value);
        t *= s.cooling;
    }
    return c;
}

} // namespace

AnnealResult simanneal(PosteriorObjective &f, const AnnealSchedule &schedule)
{
    if (!(schedule.cooling > 0.0 && schedule.cooling < 1.0))
        throw std::invalid_argument("anneal: cooling factor must lie in (0, 1)");
    if (schedule.stages == 0 || schedule.chains == 0)
        throw std::invalid_argument("anneal: stages and chains must be positive");
    const std::size_t n = f.ground_size();
    AnnealResult out;
    const GammaCodec &codec = f.codec();
    if (n == 0) {
        out.adjacency = codec.revealed();
        out.pendant.assign(codec.subjects(), 0);
        return out;
    }

    double t0 = schedule.initial_temperature;
    if (!(t0 > 0.0)) {
        Rng rng(split_seed(schedule.seed, 0xA11EA1));
        f.clear();
        std::vector<double> samples;
        for (int k = 0; k < 100; ++k) {
            double g = f.toggle_gain(std::size_t(uniform_index(rng, n)));
            if (std::isfinite(g))
                samples.push_back(std::abs(g));
        }
        t0 = samples.size() >= 2 ? quartile_range(samples) : 0.0;
        if (!(t0 > 0.0))
            t0 = 1.0;
    }
    out.initial_temperature = t0;

    const std::uint64_t per_stage = schedule.steps_per_temperature ? schedule.steps_per_temperature : 50 * n;
    const std::uint64_t cap = schedule.total_steps ? schedule.total_steps : per_stage * schedule.stages;

    std::vector<Chain> chains(schedule.chains);
    if (schedule.chains == 1) {
        chains[0] = run_chain(f, t0, schedule, per_stage, cap, split_seed(schedule.seed, 0));
    } else {
        const long count = long(schedule.chains);
#pragma omp parallel for schedule(dynamic)
        for (long k = 0; k < count; ++k) {
            PosteriorObjective local = f;
            chains[std::size_t(k)] = run_chain(local, t0, schedule, per_stage, cap, split_seed(schedule.seed, k));
        }
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < chains.size(); ++k)
        if (chains[k].best_value > chains[best].best_value)
            best = k;
    for (const auto &c : chains) {
        out.steps += c.steps;
        out.accepted += c.accepted;
    }
    Chain &w = chains[best];
    out.gamma = w.best;
    out.best_value = w.best_value;
    out.temperatures = w.temperatures;
    out.best_trace = w.trace;
    f.assign(out.gamma);
    out.best_value = f.value();
    auto decoded = codec.decode(out.gamma);
    out.adjacency = std::move(decoded.adjacency);
    out.pendant = std::move(decoded.pendant);
    return out;
}

AnnealResult simanneal(const ObservedData &obs, const PenaltyConfig &pc, const TimingModel &tm,
                       const AnnealSchedule &schedule)
{
    PosteriorObjective f = PosteriorObjective::from_observed(obs, tm, pc);
    return simanneal(f, schedule);
}

} // namespace vine
