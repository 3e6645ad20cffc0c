#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <unordered_set>
#include <vector>

namespace vine {

using NodeId = std::size_t;
using Edge = std::pair<NodeId, NodeId>;

struct ParseError : std::runtime_error {
    ParseError(std::size_t line, const std::string &what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

// Undirected simple graph with dense 0-based node ids. Immutable once built
// through GraphBuilder.
class Graph {
public:
    Graph() = default;

    std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const { return edges_.size(); }

    // Edges with first < second, sorted lexicographically.
    const std::vector<Edge> &edges() const { return edges_; }

    // Sorted neighbour list.
    std::span<const NodeId> neighbors(NodeId v) const;
    std::size_t degree(NodeId v) const { return neighbors(v).size(); }
    bool has_edge(NodeId u, NodeId v) const;

    // External ids, one per node; empty for generated graphs.
    const std::vector<std::string> &labels() const { return labels_; }
    std::string label(NodeId v) const;

    friend bool operator==(const Graph &a, const Graph &b) {
        return a.node_count() == b.node_count() && a.edges_ == b.edges_;
    }

private:
    friend class GraphBuilder;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_;
    std::vector<NodeId> adjacency_;
    std::vector<std::string> labels_;
};

class GraphBuilder {
public:
    explicit GraphBuilder(std::size_t node_count = 0) : node_count_(node_count) {}

    NodeId add_node();
    void ensure_nodes(std::size_t count);
    // Returns false for a self-loop or an edge already present.
    bool add_edge(NodeId u, NodeId v);
    void set_labels(std::vector<std::string> labels) { labels_ = std::move(labels); }

    std::size_t node_count() const { return node_count_; }
    Graph build() &&;

private:
    std::size_t node_count_;
    std::vector<Edge> edges_;
    std::unordered_set<std::uint64_t> seen_;
    std::vector<std::string> labels_;
};

struct EdgeListLoad {
    Graph graph;
    std::size_t duplicates_dropped = 0;
    std::size_t self_loops_dropped = 0;
};

// Reads `u v` integer pairs, one per line; `#` starts a comment line.
// Ids are compacted to 0..n-1 in first-seen order, originals kept as labels.
EdgeListLoad load_edge_list(std::istream &in);
EdgeListLoad load_edge_list_file(const std::string &path);

// Writes edges using node labels when present. Isolated nodes are written as
// `v v` lines so that a reload recovers the same node set.
void write_edge_list(std::ostream &out, const Graph &g);

// Subgraph on `nodes`, relabelled by list position.
Graph induced_subgraph(const Graph &g, std::span<const NodeId> nodes);

// Symmetric zero-diagonal bit matrix, packed 64 bits per word with a fixed
// row stride.
class AdjacencyMatrix {
public:
    AdjacencyMatrix() = default;
    explicit AdjacencyMatrix(std::size_t n);

    std::size_t size() const { return n_; }

    bool get(std::size_t i, std::size_t j) const {
        return (bits_[i * stride_ + (j >> 6)] >> (j & 63)) & 1u;
    }
    // Sets both (i,j) and (j,i). Diagonal writes are rejected.
    void set(std::size_t i, std::size_t j, bool value);

    std::size_t row_sum(std::size_t i) const;
    std::size_t edge_count() const;
    std::vector<Edge> edges() const;

    // Entrywise A >= other.
    bool dominates(const AdjacencyMatrix &other) const;

    friend bool operator==(const AdjacencyMatrix &a, const AdjacencyMatrix &b) {
        return a.n_ == b.n_ && a.bits_ == b.bits_;
    }

private:
    std::size_t n_ = 0;
    std::size_t stride_ = 0;
    std::vector<std::uint64_t> bits_;
};

AdjacencyMatrix to_adjacency(const Graph &g);
Graph from_adjacency(const AdjacencyMatrix &a);

} // namespace vine
