#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "vine/graph.hpp"
#include "vine/rds.hpp"

namespace vine {

// Membership vector over a ground set; 1 = element present.
using Membership = std::vector<std::uint8_t>;

struct DecodedGamma {
    AdjacencyMatrix adjacency;
    std::vector<long> pendant;
};

// Bijection between the binary vector gamma = (alpha, mu) and the pair (A, u).
//
// Elements [0, N1) are the free pairs (i, j), i < j, not revealed by the
// recruitment graph, in lexicographic order. Element N1 + i * N2 + k is bit k
// of u_i. N2 is the bit width of u_max, so every 0 <= u_i <= u_max encodes.
class GammaCodec {
public:
    GammaCodec() = default;
    GammaCodec(AdjacencyMatrix revealed, long u_max);
    // u_max = max reported degree.
    static GammaCodec for_observed(const ObservedData &obs);

    std::size_t subjects() const { return revealed_.size(); }
    std::size_t edge_elements() const { return free_edges_.size(); }       // N1
    std::size_t bits_per_subject() const { return bits_; }                   // N2
    std::size_t dimension() const { return free_edges_.size() + subjects() * bits_; }  // N
    long u_max() const { return u_max_; }
    const AdjacencyMatrix &revealed() const { return revealed_; }
    const std::vector<Edge> &free_edges() const { return free_edges_; }

    bool is_edge_element(std::size_t e) const { return e < free_edges_.size(); }
    const Edge &edge(std::size_t e) const { return free_edges_.at(e); }
    // (subject, bit) of a pendant element.
    std::pair<std::size_t, std::size_t> pendant_bit(std::size_t e) const;
    std::size_t pendant_element(std::size_t subject, std::size_t bit) const;
    // Element index of a free pair, or dimension() when (i, j) is revealed.
    std::size_t edge_element(std::size_t i, std::size_t j) const;

    // Throws when A does not contain the revealed edges or u is out of range.
    Membership encode(const AdjacencyMatrix &a, std::span<const long> pendant) const;
    DecodedGamma decode(std::span<const std::uint8_t> gamma) const;

private:
    AdjacencyMatrix revealed_;
    long u_max_ = 0;
    std::size_t bits_ = 0;
    std::vector<Edge> free_edges_;
    std::vector<std::size_t> pair_index_;  // row-major n x n, dimension() when not free
};

} // namespace vine
