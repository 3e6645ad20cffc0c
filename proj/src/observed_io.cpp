#include "vine/observed_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "vine/graph.hpp"

namespace vine {

std::string format_double(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc())
        throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

double parse_double(const std::string &token)
{
    if (token == "inf" || token == "+inf")
        return std::numeric_limits<double>::infinity();
    if (token == "-inf")
        return -std::numeric_limits<double>::infinity();
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), x);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw std::invalid_argument("malformed decimal '" + token + "'");
    return x;
}

void write_provenance(std::ostream &out, const Provenance &meta)
{
    for (const auto &[key, value] : meta)
        out << "# " << key << ": " << value << '\n';
}

bool TokenReader::fill()
{
    std::string line;
    while (std::getline(in_, line)) {
        ++line_;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream fields(line);
        pending_.clear();
        cursor_ = 0;
        for (std::string tok; fields >> tok;)
            pending_.push_back(tok);
        return true;
    }
    return false;
}

bool TokenReader::next(std::string &token)
{
    while (cursor_ >= pending_.size())
        if (!fill())
            return false;
    token = pending_[cursor_++];
    return true;
}

std::string TokenReader::expect(const char *what)
{
    std::string tok;
    if (!next(tok))
        throw ParseError(line_, fmt::format("unexpected end of input, expected {}", what));
    return tok;
}

void TokenReader::expect_literal(const std::string &literal)
{
    auto tok = expect(literal.c_str());
    if (tok != literal)
        throw ParseError(line_, fmt::format("expected '{}', found '{}'", literal, tok));
}

long long TokenReader::expect_integer(const char *what)
{
    auto tok = expect(what);
    long long value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(line_, fmt::format("malformed {} '{}'", what, tok));
    return value;
}

double TokenReader::expect_double(const char *what)
{
    auto tok = expect(what);
    try {
        return parse_double(tok);
    } catch (const std::invalid_argument &) {
        throw ParseError(line_, fmt::format("malformed {} '{}'", what, tok));
    }
}

namespace {

std::size_t expect_count(TokenReader &reader, const char *what, std::size_t limit)
{
    long long v = reader.expect_integer(what);
    if (v < 0 || std::size_t(v) > limit)
        throw ParseError(reader.line(), fmt::format("{} {} out of range", what, v));
    return std::size_t(v);
}

} // namespace

void write_observed(std::ostream &out, const ObservedData &obs, const Provenance &meta)
{
    write_provenance(out, meta);
    out << "vine-observed 1\n";
    out << "n " << obs.n << '\n';
    out << "seeds " << obs.seeds.size() << '\n';
    for (auto s : obs.seeds)
        out << s << '\n';
    out << "degrees\n";
    for (std::size_t i = 0; i < obs.degrees.size(); ++i)
        out << (i ? " " : "") << obs.degrees[i];
    out << '\n';
    out << "times\n";
    for (double t : obs.times)
        out << format_double(t) << '\n';
    out << "recruitment " << obs.recruitment.size() << '\n';
    for (auto [r, c] : obs.recruitment)
        out << r << ' ' << c << '\n';
    out << "coupons\n";
    for (std::size_t i = 0; i < obs.n; ++i) {
        for (std::size_t j = 0; j < obs.n; ++j)
            out << (obs.coupon(i, j) ? '1' : '0');
        out << '\n';
    }
}

ObservedData read_observed(std::istream &in)
{
    TokenReader reader(in);
    reader.expect_literal("vine-observed");
    if (reader.expect_integer("format version") != 1)
        throw ParseError(reader.line(), "unsupported observed-data version");

    ObservedData obs;
    reader.expect_literal("n");
    obs.n = expect_count(reader, "sample size", 1u << 20);
    const std::size_t n = obs.n;

    reader.expect_literal("seeds");
    std::size_t m = expect_count(reader, "seed count", n);
    for (std::size_t k = 0; k < m; ++k)
        obs.seeds.push_back(expect_count(reader, "seed index", n - 1));

    reader.expect_literal("degrees");
    for (std::size_t i = 0; i < n; ++i)
        obs.degrees.push_back(long(reader.expect_integer("degree")));

    reader.expect_literal("times");
    for (std::size_t i = 0; i < n; ++i)
        obs.times.push_back(reader.expect_double("time"));

    reader.expect_literal("recruitment");
    std::size_t e = expect_count(reader, "recruitment edge count", n * n);
    for (std::size_t k = 0; k < e; ++k) {
        auto r = expect_count(reader, "recruiter", n - 1);
        auto c = expect_count(reader, "recruitee", n - 1);
        obs.recruitment.emplace_back(r, c);
    }

    reader.expect_literal("coupons");
    obs.coupons.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        auto row = reader.expect("coupon row");
        if (row.size() != n)
            throw ParseError(reader.line(), fmt::format("coupon row {} has {} entries, expected {}", i, row.size(), n));
        for (std::size_t j = 0; j < n; ++j) {
            if (row[j] != '0' && row[j] != '1')
                throw ParseError(reader.line(), fmt::format("coupon entry ({},{}) is not 0/1", i, j));
            obs.coupons[i * n + j] = row[j] == '1';
        }
    }
    std::string extra;
    if (reader.next(extra))
        throw ParseError(reader.line(), "trailing content '" + extra + "'");
    return obs;
}

void write_truth(std::ostream &out, const SimulationTruth &truth, const Graph &g, const Provenance &meta)
{
    write_provenance(out, meta);
    const std::size_t n = truth.sample_nodes.size();
    out << "vine-truth 1\n";
    out << "n " << n << '\n';
    out << "sample-nodes\n";
    for (auto v : truth.sample_nodes)
        out << g.label(v) << '\n';
    auto edges = truth.adjacency.edges();
    out << "edges " << edges.size() << '\n';
    for (auto [i, j] : edges)
        out << i << ' ' << j << '\n';
    out << "events " << truth.events.size() << '\n';
    for (const auto &ev : truth.events) {
        if (ev.recruiter)
            out << *ev.recruiter;
        else
            out << '-';
        out << ' ' << ev.recruitee << ' ' << format_double(ev.time) << '\n';
    }
}

TruthRecord read_truth(std::istream &in)
{
    TokenReader reader(in);
    reader.expect_literal("vine-truth");
    if (reader.expect_integer("format version") != 1)
        throw ParseError(reader.line(), "unsupported truth version");
    reader.expect_literal("n");
    std::size_t n = expect_count(reader, "sample size", 1u << 20);

    TruthRecord rec;
    reader.expect_literal("sample-nodes");
    for (std::size_t i = 0; i < n; ++i)
        rec.sample_labels.push_back(reader.expect("node label"));

    reader.expect_literal("edges");
    std::size_t m = expect_count(reader, "edge count", n * n);
    rec.adjacency = AdjacencyMatrix(n);
    for (std::size_t k = 0; k < m; ++k) {
        auto i = expect_count(reader, "edge endpoint", n - 1);
        auto j = expect_count(reader, "edge endpoint", n - 1);
        if (i == j)
            throw ParseError(reader.line(), "self-loop in truth edges");
        rec.adjacency.set(i, j, true);
    }

    reader.expect_literal("events");
    std::size_t ne = expect_count(reader, "event count", n);
    for (std::size_t k = 0; k < ne; ++k) {
        RecruitmentEvent ev;
        auto r = reader.expect("recruiter");
        if (r != "-") {
            long long v = 0;
            auto [ptr, ec] = std::from_chars(r.data(), r.data() + r.size(), v);
            if (ec != std::errc() || ptr != r.data() + r.size() || v < 0 || std::size_t(v) >= n)
                throw ParseError(reader.line(), "malformed recruiter '" + r + "'");
            ev.recruiter = std::size_t(v);
        }
        ev.recruitee = expect_count(reader, "recruitee", n - 1);
        ev.time = reader.expect_double("event time");
        rec.events.push_back(ev);
    }
    return rec;
}

} // namespace vine
