#include "vine/min_norm_point.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace vine {

namespace {

double dot(const std::vector<double> &a, const std::vector<double> &b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

struct ChainResult {
    std::vector<double> vertex;
    std::size_t best_prefix = 0;  // number of leading elements
    double best_value = 0.0;
    std::vector<std::size_t> order;
    double range = 0.0;
};

// Greedy vertex of the base polytope minimising <w, q>: visit elements by
// ascending w (ties by index) and record marginal gains along the chain.
ChainResult greedy_chain(SetFunctionOracle &g, const std::vector<double> &w, double offset)
{
    const std::size_t n = w.size();
    ChainResult r;
    r.order.resize(n);
    std::iota(r.order.begin(), r.order.end(), std::size_t(0));
    std::stable_sort(r.order.begin(), r.order.end(), [&](std::size_t a, std::size_t b) { return w[a] < w[b]; });
    r.vertex.assign(n, 0.0);
    g.clear();
    double prefix = g.value() - offset;
    r.best_value = prefix;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t e = r.order[k];
        double gain = g.toggle_gain(e);
        g.toggle(e);
        r.vertex[e] = gain;
        prefix += gain;
        r.range = std::max(r.range, std::abs(prefix));
        if (prefix < r.best_value) {
            r.best_value = prefix;
            r.best_prefix = k + 1;
        }
    }
    return r;
}

// Upper-triangular R with R'R = Gram + shift * 11', kept in sync with the
// active vertex set.
class ShiftedCholesky {
public:
    explicit ShiftedCholesky(double shift) : shift_(shift) {}

    std::size_t size() const { return r_.size(); }

    // Appends a vertex given its inner products with the active set and
    // itself. Returns false when the vertex is affinely dependent.
    bool append(const std::vector<double> &cross, double self)
    {
        const std::size_t k = r_.size();
        std::vector<double> col(k);
        for (std::size_t i = 0; i < k; ++i) {
            double s = cross[i] + shift_;
            for (std::size_t l = 0; l < i; ++l)
                s -= r_[l][i] * col[l];
            col[i] = s / r_[i][i];
        }
        double diag2 = self + shift_;
        for (double c : col)
            diag2 -= c * c;
        if (!(diag2 > 1e-12 * (self + shift_)))
            return false;
        for (std::size_t i = 0; i < k; ++i)
            r_[i].push_back(col[i]);
        r_.emplace_back(k + 1, 0.0);
        r_[k][k] = std::sqrt(diag2);
        return true;
    }

    // Drops vertex j and restores triangular form with Givens rotations.
    void remove(std::size_t j)
    {
        for (auto &row : r_)
            row.erase(row.begin() + long(j));
        const std::size_t k = r_.size();
        for (std::size_t l = j; l + 1 < k; ++l) {
            double a = r_[l][l], b = r_[l + 1][l];
            double h = std::hypot(a, b);
            if (h == 0.0)
                continue;
            double c = a / h, s = b / h;
            for (std::size_t col = l; col < k - 1; ++col) {
                double x = r_[l][col], y = r_[l + 1][col];
                r_[l][col] = c * x + s * y;
                r_[l + 1][col] = -s * x + c * y;
            }
        }
        r_.pop_back();
    }

    // Rebuilds the factor from an explicit Gram matrix.
    bool refactor(const std::vector<std::vector<double>> &gram)
    {
        r_.clear();
        for (std::size_t k = 0; k < gram.size(); ++k) {
            std::vector<double> cross(gram[k].begin(), gram[k].begin() + long(k));
            if (!append(cross, gram[k][k]))
                return false;
        }
        return true;
    }

    // Solves (Gram + shift 11') alpha = 1.
    std::vector<double> solve_ones() const
    {
        const std::size_t k = r_.size();
        std::vector<double> z(k);
        for (std::size_t i = 0; i < k; ++i) {
            double s = 1.0;
            for (std::size_t l = 0; l < i; ++l)
                s -= r_[l][i] * z[l];
            z[i] = s / r_[i][i];
        }
        for (std::size_t i = k; i-- > 0;) {
            double s = z[i];
            for (std::size_t l = i + 1; l < k; ++l)
                s -= r_[i][l] * z[l];
            z[i] = s / r_[i][i];
        }
        return z;
    }

private:
    double shift_;
    std::vector<std::vector<double>> r_;
};

struct ActiveSet {
    std::vector<std::vector<double>> points;
    std::vector<std::vector<double>> gram;
    std::vector<double> weights;

    void add(std::vector<double> q)
    {
        std::vector<double> row(points.size() + 1);
        for (std::size_t i = 0; i < points.size(); ++i) {
            row[i] = dot(points[i], q);
            gram[i].push_back(row[i]);
        }
        row.back() = dot(q, q);
        gram.push_back(std::move(row));
        points.push_back(std::move(q));
        weights.push_back(0.0);
    }

    void remove(std::size_t j)
    {
        points.erase(points.begin() + long(j));
        weights.erase(weights.begin() + long(j));
        gram.erase(gram.begin() + long(j));
        for (auto &row : gram)
            row.erase(row.begin() + long(j));
    }

    std::vector<double> combine(const std::vector<double> &coef) const
    {
        std::vector<double> x(points.front().size(), 0.0);
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t e = 0; e < x.size(); ++e)
                x[e] += coef[i] * points[i][e];
        return x;
    }
};

double residual_drift(const ActiveSet &active, const std::vector<double> &y)
{
    double yy = dot(y, y);
    double worst = 0.0;
    for (const auto &q : active.points)
        worst = std::max(worst, std::abs(dot(q, y) - yy));
    return worst / std::max(1.0, yy);
}

} // namespace

MinNormResult minimize_submodular(SetFunctionOracle &g, const MinNormOptions &options)
{
    const std::size_t n = g.ground_size();
    MinNormResult result;
    result.minimizer.assign(n, 0);
    g.clear();
    const double offset = g.value();
    result.oracle_calls = 1;
    if (n == 0) {
        result.converged = true;
        return result;
    }

    const std::size_t max_cycles = options.max_major_cycles ? options.max_major_cycles : 10 * n;
    auto budget_left = [&](std::uint64_t need) {
        return options.oracle_budget == 0 || result.oracle_calls + need <= options.oracle_budget;
    };

    double best_value = 0.0;
    Membership best_set(n, 0);
    auto consider_chain = [&](const ChainResult &chain) {
        if (chain.best_value < best_value) {
            best_value = chain.best_value;
            std::fill(best_set.begin(), best_set.end(), 0);
            for (std::size_t k = 0; k < chain.best_prefix; ++k)
                best_set[chain.order[k]] = 1;
        }
    };

    ChainResult first = greedy_chain(g, std::vector<double>(n, 0.0), offset);
    result.oracle_calls += n;
    consider_chain(first);
    const double epsilon = options.epsilon >= 0.0 ? options.epsilon : 1e-7 * (1.0 + first.range);
    result.epsilon = epsilon;

    ActiveSet active;
    double shift = std::max(1.0, dot(first.vertex, first.vertex));
    ShiftedCholesky chol(shift);
    active.add(first.vertex);
    active.weights[0] = 1.0;
    chol.append({}, active.gram[0][0]);
    std::vector<double> x = first.vertex;

    bool wolfe_optimal = false;
    while (result.major_cycles < max_cycles) {
        if (!budget_left(n))
            break;
        ++result.major_cycles;
        ChainResult chain = greedy_chain(g, x, offset);
        result.oracle_calls += n;
        consider_chain(chain);

        double lower = 0.0;
        for (double v : x)
            lower += std::min(v, 0.0);
        result.gap = best_value - lower;
        if (result.gap <= epsilon)
            break;

        double xx = dot(x, x);
        if (xx - dot(x, chain.vertex) <= 1e-12 * std::max(1.0, xx)) {
            wolfe_optimal = true;
            break;
        }

        std::vector<double> cross(active.points.size());
        for (std::size_t i = 0; i < cross.size(); ++i)
            cross[i] = dot(active.points[i], chain.vertex);
        if (!chol.append(cross, dot(chain.vertex, chain.vertex))) {
            // Numerically inside the current affine hull: no further progress.
            wolfe_optimal = true;
            break;
        }
        active.add(std::move(chain.vertex));

        for (;;) {
            ++result.minor_cycles;
            std::vector<double> alpha = chol.solve_ones();
            double total = std::accumulate(alpha.begin(), alpha.end(), 0.0);
            std::vector<double> mu(alpha.size());
            for (std::size_t i = 0; i < mu.size(); ++i)
                mu[i] = alpha[i] / total;

            std::vector<double> y = active.combine(mu);
            if (residual_drift(active, y) > 1e-8) {
                chol = ShiftedCholesky(shift);
                while (!chol.refactor(active.gram)) {
                    // Drop the lightest vertex until the hull is well posed.
                    auto j = std::size_t(std::min_element(active.weights.begin(), active.weights.end())
                                         - active.weights.begin());
                    active.remove(j);
                    chol = ShiftedCholesky(shift);
                }
                double wsum = std::accumulate(active.weights.begin(), active.weights.end(), 0.0);
                for (auto &w : active.weights)
                    w /= wsum;
                alpha = chol.solve_ones();
                total = std::accumulate(alpha.begin(), alpha.end(), 0.0);
                mu.resize(alpha.size());
                for (std::size_t i = 0; i < mu.size(); ++i)
                    mu[i] = alpha[i] / total;
                y = active.combine(mu);
            }

            constexpr double tiny = 1e-12;
            if (*std::min_element(mu.begin(), mu.end()) > tiny) {
                active.weights = mu;
                x = std::move(y);
                break;
            }
            double theta = 1.0;
            for (std::size_t i = 0; i < mu.size(); ++i)
                if (mu[i] <= tiny) {
                    double denom = active.weights[i] - mu[i];
                    if (denom > 0.0)
                        theta = std::min(theta, active.weights[i] / denom);
                }
            for (std::size_t i = 0; i < mu.size(); ++i)
                active.weights[i] = (1.0 - theta) * active.weights[i] + theta * mu[i];
            std::size_t lightest = std::size_t(std::min_element(active.weights.begin(), active.weights.end())
                                               - active.weights.begin());
            for (std::size_t i = active.weights.size(); i-- > 0;)
                if (active.weights[i] <= tiny || i == lightest) {
                    active.remove(i);
                    chol.remove(i);
                }
            double wsum = std::accumulate(active.weights.begin(), active.weights.end(), 0.0);
            for (auto &w : active.weights)
                w /= wsum;
            x = active.combine(active.weights);
            if (active.points.size() == 1)
                break;
        }
    }

    // Candidate sets from the final point.
    constexpr double zero_band = 1e-9;
    Membership negative(n, 0), with_ties(n, 0);
    for (std::size_t e = 0; e < n; ++e) {
        negative[e] = x[e] < -zero_band;
        with_ties[e] = x[e] <= zero_band;
    }
    auto cardinality = [](const Membership &m) { return std::count(m.begin(), m.end(), 1); };
    auto better = [&](double v, const Membership &m, double bv, const Membership &bm) {
        double tol = 1e-12 * (1.0 + std::abs(bv));
        return v < bv - tol || (std::abs(v - bv) <= tol && cardinality(m) < cardinality(bm));
    };
    for (const Membership *cand : {&negative, &with_ties}) {
        double v = g.evaluate(*cand) - offset;
        ++result.oracle_calls;
        if (better(v, *cand, best_value, best_set)) {
            best_value = v;
            best_set = *cand;
        }
    }

    double lower = 0.0;
    for (double v : x)
        lower += std::min(v, 0.0);
    result.gap = std::max(0.0, best_value - lower);
    result.converged = result.gap <= epsilon || wolfe_optimal;
    result.minimizer = std::move(best_set);
    result.value = best_value;
    result.point = std::move(x);
    return result;
}

} // namespace vine
