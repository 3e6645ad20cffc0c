#include "vine/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace vine {

std::span<const NodeId> Graph::neighbors(NodeId v) const
{
    if (v >= node_count())
        throw std::out_of_range("node id " + std::to_string(v) + " out of range");
    return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

bool Graph::has_edge(NodeId u, NodeId v) const
{
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::string Graph::label(NodeId v) const
{
    if (v < labels_.size())
        return labels_[v];
    return std::to_string(v);
}

NodeId GraphBuilder::add_node()
{
    return node_count_++;
}

void GraphBuilder::ensure_nodes(std::size_t count)
{
    node_count_ = std::max(node_count_, count);
}

bool GraphBuilder::add_edge(NodeId u, NodeId v)
{
    if (u == v)
        return false;
    if (u > v)
        std::swap(u, v);
    if (!seen_.insert(std::uint64_t(u) << 32 | v).second)
        return false;
    ensure_nodes(v + 1);
    edges_.emplace_back(u, v);
    return true;
}

Graph GraphBuilder::build() &&
{
    Graph g;
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    std::vector<std::size_t> degree(node_count_, 0);
    for (auto [u, v] : edges_) {
        ++degree[u];
        ++degree[v];
    }
    g.offsets_.assign(node_count_ + 1, 0);
    for (std::size_t v = 0; v < node_count_; ++v)
        g.offsets_[v + 1] = g.offsets_[v] + degree[v];
    g.adjacency_.resize(g.offsets_.back());
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [u, v] : edges_) {
        g.adjacency_[fill[u]++] = v;
        g.adjacency_[fill[v]++] = u;
    }
    for (std::size_t v = 0; v < node_count_; ++v)
        std::sort(g.adjacency_.begin() + g.offsets_[v], g.adjacency_.begin() + g.offsets_[v + 1]);

    g.edges_ = std::move(edges_);
    g.labels_ = std::move(labels_);
    if (!g.labels_.empty() && g.labels_.size() != node_count_)
        throw std::logic_error("label count does not match node count");
    return g;
}

namespace {

bool parse_id(std::string_view token, long long &value)
{
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    return ec == std::errc() && ptr == token.data() + token.size();
}

} // namespace

EdgeListLoad load_edge_list(std::istream &in)
{
    std::unordered_map<long long, NodeId> index;
    std::vector<std::string> labels;
    std::unordered_set<std::uint64_t> seen;
    GraphBuilder builder;
    EdgeListLoad result;

    auto intern = [&](long long id, const std::string &token) {
        auto [it, inserted] = index.try_emplace(id, labels.size());
        if (inserted) {
            labels.push_back(token);
            builder.ensure_nodes(labels.size());
        }
        return it->second;
    };

    std::string line;
    std::size_t line_no = 0;
    std::size_t pairs = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;

        std::istringstream fields(line);
        std::string a, b, extra;
        if (!(fields >> a >> b))
            throw ParseError(line_no, "expected two node ids");
        if (fields >> extra)
            throw ParseError(line_no, "unexpected token '" + extra + "'");
        long long ia = 0, ib = 0;
        if (!parse_id(a, ia))
            throw ParseError(line_no, "malformed node id '" + a + "'");
        if (!parse_id(b, ib))
            throw ParseError(line_no, "malformed node id '" + b + "'");
        ++pairs;

        NodeId u = intern(ia, a);
        NodeId v = intern(ib, b);
        if (u == v) {
            ++result.self_loops_dropped;
            continue;
        }
        auto lo = std::min(u, v), hi = std::max(u, v);
        if (!seen.insert((std::uint64_t(lo) << 32) | hi).second) {
            ++result.duplicates_dropped;
            continue;
        }
        builder.add_edge(lo, hi);
    }
    if (pairs == 0)
        throw ParseError(line_no, "edge list is empty");

    builder.set_labels(std::move(labels));
    result.graph = std::move(builder).build();
    return result;
}

EdgeListLoad load_edge_list_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open edge list '" + path + "'");
    return load_edge_list(in);
}

void write_edge_list(std::ostream &out, const Graph &g)
{
    // Node v must first appear after nodes 0..v-1 so a reload assigns the
    // same ids. Each node is introduced by an edge to an earlier node, or by
    // a `v v` line when it has none; the remaining edges follow.
    std::vector<NodeId> intro(g.node_count(), SIZE_MAX);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        auto nb = g.neighbors(v);
        if (!nb.empty() && nb.front() < v) {
            intro[v] = nb.front();
            out << g.label(nb.front()) << ' ' << g.label(v) << '\n';
        } else {
            out << g.label(v) << ' ' << g.label(v) << '\n';
        }
    }
    for (auto [u, v] : g.edges())
        if (intro[v] != u)
            out << g.label(u) << ' ' << g.label(v) << '\n';
}

Graph induced_subgraph(const Graph &g, std::span<const NodeId> nodes)
{
    std::vector<std::size_t> position(g.node_count(), SIZE_MAX);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        NodeId v = nodes[k];
        if (v >= g.node_count())
            throw std::invalid_argument("induced_subgraph: node " + std::to_string(v) + " not in graph");
        if (position[v] != SIZE_MAX)
            throw std::invalid_argument("induced_subgraph: node " + std::to_string(v) + " listed twice");
        position[v] = k;
    }

    GraphBuilder builder(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        for (NodeId w : g.neighbors(nodes[k])) {
            std::size_t pw = position[w];
            if (pw != SIZE_MAX && pw > k)
                builder.add_edge(k, pw);
        }
    }
    if (!g.labels().empty()) {
        std::vector<std::string> labels;
        labels.reserve(nodes.size());
        for (NodeId v : nodes)
            labels.push_back(g.labels()[v]);
        builder.set_labels(std::move(labels));
    }
    return std::move(builder).build();
}

AdjacencyMatrix::AdjacencyMatrix(std::size_t n)
    : n_(n), stride_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0)
{
}

void AdjacencyMatrix::set(std::size_t i, std::size_t j, bool value)
{
    if (i >= n_ || j >= n_)
        throw std::out_of_range("adjacency index out of range");
    if (i == j)
        throw std::invalid_argument("adjacency matrix has a zero diagonal");
    auto write = [&](std::size_t r, std::size_t c) {
        auto &word = bits_[r * stride_ + (c >> 6)];
        std::uint64_t mask = std::uint64_t(1) << (c & 63);
        word = value ? (word | mask) : (word & ~mask);
    };
    write(i, j);
    write(j, i);
}

std::size_t AdjacencyMatrix::row_sum(std::size_t i) const
{
    std::size_t total = 0;
    for (std::size_t w = 0; w < stride_; ++w)
        total += std::popcount(bits_[i * stride_ + w]);
    return total;
}

std::size_t AdjacencyMatrix::edge_count() const
{
    std::size_t total = 0;
    for (auto word : bits_)
        total += std::popcount(word);
    return total / 2;
}

std::vector<Edge> AdjacencyMatrix::edges() const
{
    std::vector<Edge> out;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            if (get(i, j))
                out.emplace_back(i, j);
    return out;
}

bool AdjacencyMatrix::dominates(const AdjacencyMatrix &other) const
{
    if (other.n_ != n_)
        return false;
    for (std::size_t k = 0; k < bits_.size(); ++k)
        if ((other.bits_[k] & ~bits_[k]) != 0)
            return false;
    return true;
}

AdjacencyMatrix to_adjacency(const Graph &g)
{
    AdjacencyMatrix a(g.node_count());
    for (auto [u, v] : g.edges())
        a.set(u, v, true);
    return a;
}

Graph from_adjacency(const AdjacencyMatrix &a)
{
    GraphBuilder builder(a.size());
    for (auto [u, v] : a.edges())
        builder.add_edge(u, v);
    return std::move(builder).build();
}

} // namespace vine
