#include "vine/gamma_codec.hpp"

#include <algorithm>
#include <bit>

#include <fmt/format.h>

namespace vine {

GammaCodec::GammaCodec(AdjacencyMatrix revealed, long u_max)
    : revealed_(std::move(revealed)), u_max_(u_max)
{
    if (u_max < 0)
        throw std::invalid_argument("u_max must be nonnegative");
    bits_ = std::size_t(std::bit_width(static_cast<unsigned long>(u_max)));
    const std::size_t n = revealed_.size();
    pair_index_.assign(n * n, SIZE_MAX);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!revealed_.get(i, j)) {
                pair_index_[i * n + j] = pair_index_[j * n + i] = free_edges_.size();
                free_edges_.emplace_back(i, j);
            }
    std::size_t dim = dimension();
    std::replace(pair_index_.begin(), pair_index_.end(), SIZE_MAX, dim);
}

GammaCodec GammaCodec::for_observed(const ObservedData &obs)
{
    long u_max = 0;
    for (long d : obs.degrees)
        u_max = std::max(u_max, d);
    return GammaCodec(obs.recruitment_adjacency(), u_max);
}

std::pair<std::size_t, std::size_t> GammaCodec::pendant_bit(std::size_t e) const
{
    if (e < free_edges_.size() || e >= dimension())
        throw std::out_of_range(fmt::format("element {} is not a pendant bit", e));
    std::size_t off = e - free_edges_.size();
    return {off / bits_, off % bits_};
}

std::size_t GammaCodec::pendant_element(std::size_t subject, std::size_t bit) const
{
    if (subject >= subjects() || bit >= bits_)
        throw std::out_of_range("pendant bit out of range");
    return free_edges_.size() + subject * bits_ + bit;
}

std::size_t GammaCodec::edge_element(std::size_t i, std::size_t j) const
{
    return pair_index_.at(i * subjects() + j);
}

Membership GammaCodec::encode(const AdjacencyMatrix &a, std::span<const long> pendant) const
{
    const std::size_t n = subjects();
    if (a.size() != n || pendant.size() != n)
        throw std::invalid_argument("encode: dimension mismatch");
    if (!a.dominates(revealed_))
        throw std::invalid_argument("encode: adjacency lacks a revealed recruitment edge");
    Membership gamma(dimension(), 0);
    for (std::size_t e = 0; e < free_edges_.size(); ++e)
        gamma[e] = a.get(free_edges_[e].first, free_edges_[e].second);
    for (std::size_t i = 0; i < n; ++i) {
        if (pendant[i] < 0 || pendant[i] > u_max_)
            throw std::invalid_argument(fmt::format("encode: u_{} = {} outside [0, {}]", i, pendant[i], u_max_));
        for (std::size_t k = 0; k < bits_; ++k)
            gamma[pendant_element(i, k)] = (pendant[i] >> k) & 1;
    }
    return gamma;
}

DecodedGamma GammaCodec::decode(std::span<const std::uint8_t> gamma) const
{
    if (gamma.size() != dimension())
        throw std::invalid_argument("decode: gamma has the wrong dimension");
    DecodedGamma out{revealed_, std::vector<long>(subjects(), 0)};
    for (std::size_t e = 0; e < free_edges_.size(); ++e)
        if (gamma[e])
            out.adjacency.set(free_edges_[e].first, free_edges_[e].second, true);
    for (std::size_t i = 0; i < subjects(); ++i)
        for (std::size_t k = 0; k < bits_; ++k)
            if (gamma[pendant_element(i, k)])
                out.pendant[i] += long(1) << k;
    return out;
}

} // namespace vine
