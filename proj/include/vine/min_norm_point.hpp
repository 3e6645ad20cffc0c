#pragma once

#include <cstdint>
#include <vector>

#include "vine/objective.hpp"

namespace vine {

struct MinNormOptions {
    // Duality-gap tolerance; negative selects 1e-7 * (1 + range of G seen on
    // the first greedy chain).
    double epsilon = -1.0;
    // Major-cycle limit; 0 selects 10 * N.
    std::size_t max_major_cycles = 0;
    // Limit on marginal-gain evaluations; 0 = unlimited.
    std::uint64_t oracle_budget = 0;
};

struct MinNormResult {
    Membership minimizer;
    double value = 0.0;  // G(minimizer) - G(empty)
    bool converged = false;
    double gap = 0.0;    // certified: value - min G <= gap
    double epsilon = 0.0;
    std::size_t major_cycles = 0;
    std::size_t minor_cycles = 0;
    std::uint64_t oracle_calls = 0;
    std::vector<double> point;  // final point of the base polytope
};

// Unconstrained minimisation of a submodular G by the Fujishige-Wolfe
// minimum-norm-point method on the base polytope of G - G(empty). Vertices
// come from the greedy ordering oracle; the affine-hull step keeps a Cholesky
// factor of the shifted Gram matrix and refactors it when the optimality
// residual drifts above 1e-8.
//
// The returned set is the best of: {i : y_i < 0} with the near-zero
// coordinates (|y_i| <= 1e-9) left out or added as a group, and the best
// prefix of any greedy chain evaluated along the way. Ties go to the smaller
// set, so G == 0 yields the empty set. The oracle's current set is
// clobbered.
MinNormResult minimize_submodular(SetFunctionOracle &g, const MinNormOptions &options = {});

} // namespace vine
