#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "vine/kernels.hpp"
#include "vine/min_norm_point.hpp"
#include "vine/objective.hpp"

namespace vine {

enum class BoundKind { lower, grow, shrink, bar };

std::string to_string(BoundKind kind);
BoundKind parse_bound_kind(const std::string &text);

// Affine function s(gamma) + c over the normalised F (F(empty) = 0).
struct ModularBound {
    std::vector<double> weights;
    double offset = 0.0;
    BoundKind kind = BoundKind::lower;
    Membership anchor;  // empty for lower bounds

    double value(std::span<const std::uint8_t> x) const;
    bool is_upper() const { return kind != BoundKind::lower; }
};

// log(1 + e^x) without overflow.
double softplus(double x);
double logistic(double x);

// c + sum softplus(s_i): log of sum over all gamma of exp(s(gamma) + c).
double log_partition(std::span<const double> weights, double offset);
inline double log_partition(const ModularBound &b) { return log_partition(b.weights, b.offset); }

// Marginals of the distribution proportional to exp(s(gamma)).
std::vector<double> marginals(const ModularBound &b);

// Diagnostics only: the per-element ratios (s_l({i}) + c_l) / Z(s_u, c_u) and
// (s_u({i}) + c_u) / Z(s_l, c_l). These are not probabilities.
struct AffineRatioBounds {
    std::vector<double> low;
    std::vector<double> high;
};
AffineRatioBounds affine_ratio_bounds(const ModularBound &lower, const ModularBound &upper);

class OracleBudgetExceeded : public std::runtime_error {
public:
    explicit OracleBudgetExceeded(std::uint64_t budget)
        : std::runtime_error("oracle budget of " + std::to_string(budget) + " evaluations exhausted")
    {
    }
};

struct BoundOptions {
    Execution execution = Execution::serial;
    std::uint64_t oracle_budget = 0;  // 0 = unlimited
    // Stale lazy-greedy bounds within this much of a fresh gain are refreshed
    // before the fresh element is accepted.
    double lazy_slack = 1e-9;
};

struct LowerBoundResult {
    ModularBound bound;
    std::vector<std::size_t> order;
    std::uint64_t oracle_calls = 0;
};

// Greedy permutation: v_j = argmax gain over the remaining elements (lowest
// index on ties), s_{v_j} = that gain. The lazy variant keeps stale gains in
// a max-heap and matches the naive double loop whenever F is submodular.
LowerBoundResult greedy_lower_bound(SetFunctionOracle &f, const BoundOptions &options = {});
LowerBoundResult greedy_lower_bound_naive(SetFunctionOracle &f, const BoundOptions &options = {});

// F({j}) and F(V) - F(V \ {j}), both normalised.
struct SemigradientCache {
    std::vector<double> singleton;
    std::vector<double> complement;
    double full_value = 0.0;
    std::uint64_t oracle_calls = 0;
};
SemigradientCache semigradient_cache(SetFunctionOracle &f, const BoundOptions &options = {});

// Supergradient of the given upper kind at x with offset F(x) - s(x).
//   grow:   j in x -> F(V) - F(V \ j),    j not in x -> F(x + j) - F(x)
//   shrink: j in x -> F(x) - F(x \ j),    j not in x -> F({j})
//   bar:    j in x -> F(V) - F(V \ j),    j not in x -> F({j})
ModularBound supergradient(SetFunctionOracle &f, const Membership &x, BoundKind kind,
                           const SemigradientCache &cache, const BoundOptions &options = {},
                           std::uint64_t *oracle_calls = nullptr);

// All three upper kinds from one scan at x, in the order grow, shrink, bar.
std::array<ModularBound, 3> supergradients(SetFunctionOracle &f, const Membership &x,
                                           const SemigradientCache &cache, const BoundOptions &options = {},
                                           std::uint64_t *oracle_calls = nullptr);

// m_i = softplus(-(F(V) - F(V \ i))) - softplus(F({i})).
std::vector<double> m_function(const SemigradientCache &cache);

struct UpperBoundResult {
    ModularBound bound;
    std::array<double, 3> log_partitions{};  // grow, shrink, bar at the anchor
    std::vector<double> m;
    MinNormResult solve;
    bool converged = true;
    std::uint64_t oracle_calls = 0;
};

// Anchor x = argmin F + m, then the supergradient with the least
// log-partition among grow, shrink and bar (that order on ties).
UpperBoundResult upper_bound(SetFunctionOracle &f, const BoundOptions &options = {},
                             const MinNormOptions &solver = {});

} // namespace vine
