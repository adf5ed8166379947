#ifndef SPECPOLY_GRAPH_HPP
#define SPECPOLY_GRAPH_HPP

#include <random>

#include "specpoly/sparse.hpp"

namespace specpoly {

/// Graph Laplacian L = D - W built from the off-diagonal magnitudes of a
/// symmetric matrix: w_ij = |a_ij| for i != j, D = diag(row sums of W).
/// The absolute value keeps the weights nonnegative (hence L positive
/// semidefinite) for inputs with mixed-sign off-diagonals.
inline SparseSymMatrix laplacian_from_offdiagonal(const SparseSymMatrix& a)
{
    const std::size_t n = a.n();
    std::vector<Triplet> trip;
    trip.reserve(a.nnz() + n);
    Vector deg(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k) {
            const std::size_t j = a.col_idx()[k];
            if (j == i) continue;
            const double w = std::abs(a.values()[k]);
            deg[i] += w;
            trip.push_back({i, j, -w});
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (deg[i] != 0.0) trip.push_back({i, i, deg[i]});
    return SparseSymMatrix::from_triplets(n, std::move(trip));
}

/// Combinatorial Laplacian of an Erdos-Renyi G(n,p) graph. Each of the
/// C(n,2) pairs is drawn once from a seeded generator, so the result is
/// bitwise deterministic for a fixed (n, p, seed).
inline SparseSymMatrix gen_erdos_renyi_laplacian(std::size_t n, double p, std::uint64_t seed)
{
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("gen_erdos_renyi_laplacian: need 0 < p < 1");
    std::mt19937_64 rng(seed);
    std::vector<Triplet> trip;
    Vector deg(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            // uniform in [0,1) from the top 53 bits; avoids distribution
            // differences across standard library implementations
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            if (u < p) {
                trip.push_back({i, j, -1.0});
                trip.push_back({j, i, -1.0});
                deg[i] += 1.0;
                deg[j] += 1.0;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (deg[i] != 0.0) trip.push_back({i, i, deg[i]});
    return SparseSymMatrix::from_triplets(n, std::move(trip));
}

} // namespace specpoly

#endif
