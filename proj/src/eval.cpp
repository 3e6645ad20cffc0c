#include "vine/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include <fmt/format.h>

namespace vine {

std::string to_string(Convention c)
{
    return c == Convention::standard ? "standard" : "paper-literal";
}

Convention parse_convention(const std::string &text)
{
    if (text == "standard")
        return Convention::standard;
    if (text == "paper-literal" || text == "literal")
        return Convention::paper_literal;
    throw std::invalid_argument("unknown convention '" + text + "' (expected standard or paper-literal)");
}

Confusion confusion(const AdjacencyMatrix &estimate, const AdjacencyMatrix &truth)
{
    if (estimate.size() != truth.size())
        throw std::invalid_argument(
            fmt::format("confusion: dimension mismatch ({} vs {})", estimate.size(), truth.size()));
    Confusion c;
    const std::size_t n = truth.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            bool e = estimate.get(i, j), t = truth.get(i, j);
            if (e && t)
                ++c.tp;
            else if (e)
                ++c.fp;
            else if (t)
                ++c.fn;
            else
                ++c.tn;
        }
    return c;
}

Rates tpr_fpr(const Confusion &c, Convention convention)
{
    Rates r;
    if (convention == Convention::paper_literal) {
        double pairs = double(c.tp + c.fp + c.fn + c.tn);
        if (pairs == 0.0) {
            r.degenerate = true;
            return r;
        }
        r.tpr = double(c.tp) / pairs;
        r.fpr = double(c.fp) / pairs;
        return r;
    }
    if (c.tp + c.fn == 0)
        r.degenerate = true;
    else
        r.tpr = double(c.tp) / double(c.tp + c.fn);
    if (c.fp + c.tn == 0)
        r.degenerate = true;
    else
        r.fpr = double(c.fp) / double(c.fp + c.tn);
    return r;
}

double auc(const std::vector<RocPoint> &points)
{
    double area = 0.0;
    for (std::size_t k = 1; k < points.size(); ++k)
        area += (points[k].fpr - points[k - 1].fpr) * (points[k].tpr + points[k - 1].tpr) / 2.0;
    return area;
}

RocResult roc(const GammaCodec &codec, std::span<const double> edge_weights, const AdjacencyMatrix &truth,
              Convention convention)
{
    if (truth.size() != codec.subjects())
        throw std::invalid_argument("roc: truth has the wrong dimension");
    if (edge_weights.size() != codec.edge_elements())
        throw std::invalid_argument("roc: weight vector does not match the codec");
    if (!truth.dominates(codec.revealed()))
        throw std::invalid_argument("roc: truth lacks a revealed recruitment edge");

    RocResult r;
    r.convention = convention;
    auto push = [&](double zeta, const Confusion &c) {
        Rates rates = tpr_fpr(c, convention);
        r.degenerate = r.degenerate || rates.degenerate;
        r.points.push_back({zeta, rates.fpr, rates.tpr});
    };
    r.points.push_back({std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0});

    Confusion c = confusion(codec.revealed(), truth);
    push(std::numeric_limits<double>::infinity(), c);

    std::vector<std::size_t> order(edge_weights.size());
    std::iota(order.begin(), order.end(), std::size_t(0));
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return edge_weights[a] > edge_weights[b]; });
    std::size_t k = 0;
    while (k < order.size()) {
        double w = edge_weights[order[k]];
        for (; k < order.size() && edge_weights[order[k]] == w; ++k) {
            auto [i, j] = codec.edge(order[k]);
            if (truth.get(i, j)) {
                ++c.tp;
                --c.fn;
            } else {
                ++c.fp;
                --c.tn;
            }
        }
        if (std::isfinite(w))
            push(w, c);
    }
    push(-std::numeric_limits<double>::infinity(), c);
    r.auc = auc(r.points);
    return r;
}

double corner_distance(double tpr, double fpr)
{
    return std::sqrt((1.0 - tpr) * (1.0 - tpr) + fpr * fpr);
}

CornerPoint min_corner_distance(const RocResult &r)
{
    if (r.points.empty())
        throw std::invalid_argument("min_corner_distance: no points");
    CornerPoint best;
    best.distance = std::numeric_limits<double>::infinity();
    for (const auto &p : r.points) {
        double d = corner_distance(p.tpr, p.fpr);
        if (d < best.distance)
            best = {d, p.zeta, p.tpr, p.fpr};
    }
    return best;
}

namespace {

std::string csv_number(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    return fmt::format("{:.17g}", x);
}

} // namespace

void write_roc_csv(std::ostream &out, const RocResult &r)
{
    if (r.points.empty())
        throw std::invalid_argument("no points");
    out << "zeta,fpr,tpr\n";
    for (const auto &p : r.points)
        out << csv_number(p.zeta) << ',' << csv_number(p.fpr) << ',' << csv_number(p.tpr) << '\n';
}

void write_roc_svg(std::ostream &out, const RocResult &curve, const RocResult &baseline, const std::string &title)
{
    if (curve.points.empty())
        throw std::invalid_argument("no points");
    constexpr double width = 640, height = 480, left = 70, right = 30, top = 40, bottom = 60;
    const double pw = width - left - right, ph = height - top - bottom;
    auto px = [&](double fpr) { return left + fpr * pw; };
    auto py = [&](double tpr) { return top + (1.0 - tpr) * ph; };
    auto polyline = [&](const RocResult &r) {
        std::string pts;
        for (const auto &p : r.points)
            pts += fmt::format("{}{:.6g},{:.6g}", pts.empty() ? "" : " ", p.fpr, p.tpr);
        return pts;
    };
    auto escape = [](const std::string &s) {
        std::string e;
        for (char c : s) {
            if (c == '<')
                e += "&lt;";
            else if (c == '>')
                e += "&gt;";
            else if (c == '&')
                e += "&amp;";
            else
                e += c;
        }
        return e;
    };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" height=\"480\" "
           "viewBox=\"0 0 640 480\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n";
    out << fmt::format("<text x=\"{:.1f}\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" "
                       "text-anchor=\"middle\">{}</text>\n",
                       width / 2, escape(title));
    out << fmt::format("<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"none\" "
                       "stroke=\"black\"/>\n",
                       left, top, pw, ph);
    for (int k = 0; k <= 5; ++k) {
        double v = k / 5.0;
        out << fmt::format("<line x1=\"{0:.3f}\" y1=\"{1:.3f}\" x2=\"{0:.3f}\" y2=\"{2:.3f}\" stroke=\"black\"/>\n",
                           px(v), top + ph, top + ph + 5);
        out << fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\" font-family=\"sans-serif\" font-size=\"11\" "
                           "text-anchor=\"middle\">{:.1f}</text>\n",
                           px(v), top + ph + 18, v);
        out << fmt::format("<line x1=\"{0:.3f}\" y1=\"{1:.3f}\" x2=\"{2:.3f}\" y2=\"{1:.3f}\" stroke=\"black\"/>\n",
                           left - 5, py(v), left);
        out << fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\" font-family=\"sans-serif\" font-size=\"11\" "
                           "text-anchor=\"end\">{:.1f}</text>\n",
                           left - 8, py(v) + 4, v);
    }
    out << fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"13\" "
                       "text-anchor=\"middle\">FPR</text>\n",
                       left + pw / 2, height - 15);
    out << fmt::format("<text x=\"18\" y=\"{0:.1f}\" font-family=\"sans-serif\" font-size=\"13\" "
                       "text-anchor=\"middle\" transform=\"rotate(-90 18 {0:.1f})\">TPR</text>\n",
                       top + ph / 2);
    out << fmt::format("<line x1=\"{:.3f}\" y1=\"{:.3f}\" x2=\"{:.3f}\" y2=\"{:.3f}\" stroke=\"#bbbbbb\" "
                       "stroke-dasharray=\"4 4\"/>\n",
                       px(0), py(0), px(1), py(1));
    // Curves are drawn in (FPR, TPR) data coordinates.
    out << fmt::format("<g transform=\"translate({:.1f} {:.1f}) scale({:.1f} {:.1f})\">\n", left, top + ph, pw, -ph);
    if (!baseline.points.empty())
        out << "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\" vector-effect=\"non-scaling-stroke\" "
               "points=\""
            << polyline(baseline) << "\"/>\n";
    out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" vector-effect=\"non-scaling-stroke\" "
           "points=\""
        << polyline(curve) << "\"/>\n";
    out << "</g>\n";
    out << fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"12\" "
                       "fill=\"#1f77b4\">inferred AUC {:.4f}</text>\n",
                       left + pw - 170, top + ph - 40, curve.auc);
    if (!baseline.points.empty())
        out << fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"12\" "
                           "fill=\"#d62728\">G_R AUC {:.4f}</text>\n",
                           left + pw - 170, top + ph - 22, baseline.auc);
    out << "</svg>\n";
}

} // namespace vine
