#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vine/graph.hpp"
#include "vine/inference.hpp"

namespace vine {

enum class Convention { standard, paper_literal };

std::string to_string(Convention c);
Convention parse_convention(const std::string &text);

// Counts over the unordered pairs i < j.
struct Confusion {
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    friend bool operator==(const Confusion &, const Confusion &) = default;
};

Confusion confusion(const AdjacencyMatrix &estimate, const AdjacencyMatrix &truth);

struct Rates {
    double tpr = 0.0;
    double fpr = 0.0;
    // Standard convention with no positives or no negatives; the affected
    // rate is reported as 0.
    bool degenerate = false;
};

// standard: TP / (TP + FN), FP / (FP + TN); paper-literal: both over C(n, 2).
Rates tpr_fpr(const Confusion &c, Convention convention = Convention::standard);

struct RocPoint {
    double zeta = 0.0;  // NaN for the (0, 0) anchor
    double fpr = 0.0;
    double tpr = 0.0;
};

struct RocResult {
    std::vector<RocPoint> points;  // anchor, then zeta from +inf down to -inf
    double auc = 0.0;
    Convention convention = Convention::standard;
    bool degenerate = false;
};

// Trapezoidal area under the polyline.
double auc(const std::vector<RocPoint> &points);

// ROC of the threshold family A_R + {free pairs with weight >= zeta}.
// Pairs with equal weight enter together.
RocResult roc(const GammaCodec &codec, std::span<const double> edge_weights, const AdjacencyMatrix &truth,
              Convention convention = Convention::standard);
inline RocResult roc(const InferenceResult &res, const AdjacencyMatrix &truth,
                     Convention convention = Convention::standard)
{
    return roc(res.codec, res.edge_weights, truth, convention);
}

double corner_distance(double tpr, double fpr);

struct CornerPoint {
    double distance = 0.0;
    double zeta = 0.0;
    double tpr = 0.0;
    double fpr = 0.0;
};
// Least corner distance over the curve's points (the anchor included).
CornerPoint min_corner_distance(const RocResult &r);

// CSV with header `zeta,fpr,tpr`, 17 significant digits.
void write_roc_csv(std::ostream &out, const RocResult &r);
// 640 x 480 SVG with axes, the curve and, when non-empty, a baseline polyline.
void write_roc_svg(std::ostream &out, const RocResult &curve, const RocResult &baseline, const std::string &title);

} // namespace vine
