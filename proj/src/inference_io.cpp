#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include <fmt/format.h>

#include "vine/inference.hpp"

namespace vine {

void write_inference(std::ostream &out, const InferenceResult &res, const Provenance &meta)
{
    const GammaCodec &codec = res.codec;
    write_provenance(out, meta);
    out << "vine-inference 1\n";
    out << "bound " << to_string(res.choice) << ' ' << to_string(res.bound.kind) << '\n';
    out << "offset " << format_double(res.bound.offset) << '\n';
    out << "anchor ";
    if (res.bound.anchor.empty())
        out << '-';
    for (auto b : res.bound.anchor)
        out << (b ? '1' : '0');
    out << '\n';
    out << "n " << codec.subjects() << " u-max " << codec.u_max() << " bits " << codec.bits_per_subject() << '\n';
    auto revealed = codec.revealed().edges();
    out << "revealed " << revealed.size() << '\n';
    for (auto [i, j] : revealed)
        out << i << ' ' << j << '\n';
    out << "edge-weights " << res.edge_weights.size() << '\n';
    for (std::size_t k = 0; k < res.edge_weights.size(); ++k) {
        auto [i, j] = codec.edge(k);
        out << i << ' ' << j << ' ' << format_double(res.edge_weights[k]) << '\n';
    }
    out << "pendant-weights " << res.pendant_weights.size() << '\n';
    for (double w : res.pendant_weights)
        out << format_double(w) << '\n';
    out << "marginals " << res.edge_marginals.size() << '\n';
    for (double p : res.edge_marginals)
        out << format_double(p) << '\n';
    out << "log-partition " << format_double(res.log_partition_lower) << ' '
        << format_double(res.log_partition_upper) << '\n';
    out << "upper-kinds " << format_double(res.upper_kinds[0]) << ' ' << format_double(res.upper_kinds[1]) << ' '
        << format_double(res.upper_kinds[2]) << '\n';
    out << "converged " << (res.converged ? 1 : 0) << " oracle-calls " << res.oracle_calls << '\n';
    out << "selected-zeta " << (res.selected_zeta ? format_double(*res.selected_zeta) : std::string("none")) << '\n';
    out << "theta " << res.theta_trajectory.size() << '\n';
    for (const auto &tm : res.theta_trajectory) {
        out << to_string(tm.family());
        for (double p : tm.params())
            out << ' ' << format_double(p);
        out << '\n';
    }
}

InferenceResult read_inference(std::istream &in)
{
    TokenReader reader(in);
    reader.expect_literal("vine-inference");
    if (reader.expect_integer("format version") != 1)
        throw ParseError(reader.line(), "unsupported inference version");

    InferenceResult res;
    reader.expect_literal("bound");
    try {
        res.choice = parse_bound_choice(reader.expect("bound choice"));
        res.bound.kind = parse_bound_kind(reader.expect("bound kind"));
    } catch (const std::invalid_argument &e) {
        throw ParseError(reader.line(), e.what());
    }
    reader.expect_literal("offset");
    res.bound.offset = reader.expect_double("offset");
    reader.expect_literal("anchor");
    auto anchor = reader.expect("anchor");
    if (anchor != "-")
        for (char c : anchor) {
            if (c != '0' && c != '1')
                throw ParseError(reader.line(), "anchor must be a 0/1 string");
            res.bound.anchor.push_back(c == '1');
        }

    reader.expect_literal("n");
    auto n = reader.expect_integer("sample size");
    reader.expect_literal("u-max");
    auto u_max = reader.expect_integer("u-max");
    reader.expect_literal("bits");
    auto bits = reader.expect_integer("bits");
    if (n < 0 || n > (1 << 16) || u_max < 0)
        throw ParseError(reader.line(), "sample size or u-max out of range");

    AdjacencyMatrix revealed{std::size_t(n)};
    reader.expect_literal("revealed");
    auto m = reader.expect_integer("revealed edge count");
    for (long long k = 0; k < m; ++k) {
        auto i = reader.expect_integer("subject"), j = reader.expect_integer("subject");
        if (i < 0 || j < 0 || i >= n || j >= n || i == j)
            throw ParseError(reader.line(), fmt::format("revealed pair ({}, {}) out of range", i, j));
        revealed.set(std::size_t(i), std::size_t(j), true);
    }
    res.codec = GammaCodec(std::move(revealed), u_max);
    if (std::size_t(bits) != res.codec.bits_per_subject())
        throw ParseError(reader.line(), "bit width does not match u-max");

    reader.expect_literal("edge-weights");
    if (std::size_t(reader.expect_integer("edge count")) != res.codec.edge_elements())
        throw ParseError(reader.line(), "edge-weight count does not match the revealed graph");
    for (std::size_t k = 0; k < res.codec.edge_elements(); ++k) {
        auto i = reader.expect_integer("subject"), j = reader.expect_integer("subject");
        auto [ei, ej] = res.codec.edge(k);
        if (i != (long long)ei || j != (long long)ej)
            throw ParseError(reader.line(), fmt::format("edge weight {} is for ({}, {}), expected ({}, {})", k, i, j,
                                                        ei, ej));
        res.edge_weights.push_back(reader.expect_double("weight"));
    }
    reader.expect_literal("pendant-weights");
    auto pw = reader.expect_integer("pendant weight count");
    if (std::size_t(pw) != res.codec.subjects() * res.codec.bits_per_subject())
        throw ParseError(reader.line(), "pendant-weight count mismatch");
    for (long long k = 0; k < pw; ++k)
        res.pendant_weights.push_back(reader.expect_double("weight"));
    reader.expect_literal("marginals");
    auto mc = reader.expect_integer("marginal count");
    if (std::size_t(mc) != res.edge_weights.size())
        throw ParseError(reader.line(), "marginal count mismatch");
    for (long long k = 0; k < mc; ++k)
        res.edge_marginals.push_back(reader.expect_double("marginal"));
    reader.expect_literal("log-partition");
    res.log_partition_lower = reader.expect_double("log-partition");
    res.log_partition_upper = reader.expect_double("log-partition");
    reader.expect_literal("upper-kinds");
    for (auto &v : res.upper_kinds)
        v = reader.expect_double("log-partition");
    reader.expect_literal("converged");
    res.converged = reader.expect_integer("flag") != 0;
    reader.expect_literal("oracle-calls");
    res.oracle_calls = std::uint64_t(reader.expect_integer("count"));
    reader.expect_literal("selected-zeta");
    auto z = reader.expect("zeta");
    if (z != "none")
        res.selected_zeta = parse_double(z);
    reader.expect_literal("theta");
    auto rounds = reader.expect_integer("round count");
    for (long long r = 0; r < rounds; ++r) {
        TimingFamily fam;
        try {
            fam = parse_timing_family(reader.expect("family"));
        } catch (const std::invalid_argument &e) {
            throw ParseError(reader.line(), e.what());
        }
        std::vector<double> params{reader.expect_double("parameter")};
        if (fam == TimingFamily::weibull)
            params.push_back(reader.expect_double("parameter"));
        res.theta_trajectory.push_back(TimingModel::from_params(fam, params));
    }
    std::string extra;
    if (reader.next(extra))
        throw ParseError(reader.line(), "trailing content '" + extra + "'");

    res.bound.weights = res.edge_weights;
    res.bound.weights.insert(res.bound.weights.end(), res.pendant_weights.begin(), res.pendant_weights.end());
    res.grid = threshold_grid(res.edge_weights);
    return res;
}

} // namespace vine
