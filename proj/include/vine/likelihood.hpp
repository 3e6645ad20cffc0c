#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vine/graph.hpp"
#include "vine/rds.hpp"
#include "vine/timing.hpp"

namespace vine {

// Row-major square matrix of doubles.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    std::size_t size() const { return n_; }
    double &operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * n_, n_}; }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

// Hazard and log-survival matrices of one realisation under a fixed timing
// model. Entries (u, i) are populated only for u < i:
//   H(u,i) = hazard at age t_i - t_u, conditioned on survival to t_{i-1} - t_u
//   S(u,i) = log Pr[W > t_i - t_u | W > t_{i-1} - t_u]
//   B = C o H,  D = C o S
struct ObservedMatrices {
    std::size_t n = 0;
    SquareMatrix hazard;
    SquareMatrix log_survival;
    SquareMatrix weighted_hazard;        // B
    SquareMatrix weighted_log_survival;  // D
    std::vector<std::uint8_t> non_seed;  // m
    std::vector<double> conditioning;    // tau(u;i) stored row-major, 0 where undefined

    double tau(std::size_t u, std::size_t i) const { return conditioning[u * n + i]; }
};

ObservedMatrices build_matrices(const ObservedData &obs, const TimingModel &tm);

// psi(x) = omega * ||x||_p, p in [1, inf].
struct PenaltyConfig {
    double p = 2.0;
    double omega = 1.0;

    double operator()(std::span<const double> excess) const;
    void check() const;
};

// Log-likelihood from the matrix form
//   l = m' log(B'u + LowerTri(AB)' 1) + 1'(D'u + LowerTri(AD)' 1),
// with LowerTri keeping entries (k, i), k >= i. Evaluated literally with a
// dense product; -inf when a non-seed column of the hazard sum vanishes.
double log_likelihood_matrix(const AdjacencyMatrix &a, std::span<const long> pendant, const ObservedMatrices &m);

// Event-by-event log-likelihood: for each subject i the recruiter term
// log sum_u |I_u(i)| H and the survival terms sum_j |I_j(i)| log S, with
// |I_u(i)| = C(u,i) (sum_{k>=i} A(u,k) + u_u). Evaluates the timing model
// directly and never touches ObservedMatrices.
double log_likelihood_direct(const ObservedData &obs, const AdjacencyMatrix &a, std::span<const long> pendant,
                             const TimingModel &tm);

// -psi(max(u + A 1 - d, 0)).
double log_prior(const AdjacencyMatrix &a, std::span<const long> pendant, std::span<const long> degrees,
                 const PenaltyConfig &pc);

// Degree excess max(u + A 1 - d, 0).
std::vector<double> degree_excess(const AdjacencyMatrix &a, std::span<const long> pendant,
                                  std::span<const long> degrees);

// Result of maximising l(t | A, theta) over theta with A and u held fixed.
struct ThetaEstimate {
    TimingModel model = TimingModel::exponential(1.0);
    double log_likelihood = 0.0;
    std::size_t iterations = 0;
    bool converged = true;
    // Optimum hit the search bracket; the returned value is the best found.
    bool boundary_warning = false;
};

// Brent search over log-parameters; coordinate ascent for Weibull.
// `initial` supplies the family and the centre of the search bracket.
ThetaEstimate theta_step(const ObservedData &obs, const AdjacencyMatrix &a, std::span<const long> pendant,
                         const TimingModel &initial);

} // namespace vine
