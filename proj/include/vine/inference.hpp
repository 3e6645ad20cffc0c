#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "vine/bounds.hpp"
#include "vine/gamma_codec.hpp"
#include "vine/likelihood.hpp"
#include "vine/observed_io.hpp"

namespace vine {

enum class BoundChoice { upper, lower };

std::string to_string(BoundChoice c);
BoundChoice parse_bound_choice(const std::string &text);

// How the A-step picks the pendant counts handed to the theta step.
//   marginals:  pendant_estimate(), the rounded mu marginals
//   completion: max(d_i - (A 1)_i, 0) clamped to u_max, i.e. every reported
//               tie not matched inside the sample is pendant
enum class PendantRule { marginals, completion };

std::string to_string(PendantRule r);
PendantRule parse_pendant_rule(const std::string &text);

struct InferenceOptions {
    BoundChoice bound = BoundChoice::upper;
    PendantRule pendant = PendantRule::marginals;
    BoundOptions oracle;
    MinNormOptions solver;
};

struct InferenceResult {
    BoundChoice choice = BoundChoice::upper;
    ModularBound bound;                 // the bound the weights come from
    GammaCodec codec;
    std::vector<double> edge_weights;     // s^alpha, one per free pair
    std::vector<double> pendant_weights;  // s^mu, subject-major, N2 per subject
    double log_partition_lower = 0.0;
    double log_partition_upper = 0.0;
    std::array<double, 3> upper_kinds{};  // grow, shrink, bar log-partitions
    std::vector<double> edge_marginals;
    // Descending: +inf, distinct edge weights, -inf.
    std::vector<double> grid;
    std::vector<TimingModel> theta_trajectory;
    std::optional<double> selected_zeta;
    bool converged = true;
    std::uint64_t oracle_calls = 0;
    double wall_seconds = 0.0;  // not serialised

    // A_R plus every free pair with weight >= zeta.
    AdjacencyMatrix threshold(double zeta) const;
    // Pendant counts from the mu marginals rounded at 1/2, clamped to u_max.
    std::vector<long> pendant_estimate() const;
};

// +inf, the distinct finite weights in descending order, -inf.
std::vector<double> threshold_grid(std::span<const double> weights);

InferenceResult infer(const ObservedData &obs, const PenaltyConfig &pc, const TimingModel &tm,
                      const InferenceOptions &options = {});
// Both bounds from one objective: (upper, lower). `options.bound` is ignored.
std::pair<InferenceResult, InferenceResult> infer_both(const ObservedData &obs, const PenaltyConfig &pc,
                                                       const TimingModel &tm, const InferenceOptions &options = {});

// Grid point maximising F(encode(threshold(zeta), pendant_estimate())). Ties
// go to the larger zeta.
double select_zeta(const InferenceResult &res, PosteriorObjective &f);

struct AlternationResult {
    AdjacencyMatrix adjacency;
    std::vector<long> pendant;
    TimingModel theta = TimingModel::exponential(1.0);
    InferenceResult last;
    std::size_t rounds = 0;
    bool theta_step_failed = false;
};

// A-step / theta-step alternation. Without `truth` the A-step picks zeta by
// select_zeta; with it, by least corner distance against the truth.
AlternationResult alternate(const ObservedData &obs, const PenaltyConfig &pc, const TimingModel &theta0,
                            std::size_t rounds, const InferenceOptions &options = {},
                            const AdjacencyMatrix *truth = nullptr);

// Inference file:
//
//   vine-inference 1
//   bound <lower|upper> <kind>
//   n <n> u-max <u> bits <N2>
//   revealed <m>          followed by `i j` pairs
//   edge-weights <N1>     followed by `i j weight`
//   pendant-weights <n*N2>
//   marginals <N1>
//   log-partition <lower> <upper>
//   upper-kinds <grow> <shrink> <bar>
//   converged <0|1> oracle-calls <k>
//   selected-zeta <z|none>
//   theta <rounds>        followed by `family p1 [p2]`
void write_inference(std::ostream &out, const InferenceResult &res, const Provenance &meta = {});
InferenceResult read_inference(std::istream &in);

} // namespace vine
