#ifndef SPECPOLY_LANCZOS_HPP
#define SPECPOLY_LANCZOS_HPP

#include <random>

#include "specpoly/eig.hpp"
#include "specpoly/interval.hpp"

namespace specpoly {

/// Symmetric Lanczos factorization A Q ~ Q T with Q = [q_0 .. q_m],
/// T the (m+1) x (m+1) Jacobi matrix (diagonal alpha, off-diagonal gamma)
/// and q_0 = b / ||b||. m equals the requested K unless an invariant
/// subspace was captured early (breakdown), in which case the
/// factorization is truncated and exact.
struct LanczosFactorization {
    std::vector<Vector> q; // m+1 orthonormal basis vectors
    Vector alpha;          // m+1
    Vector gamma;          // m
    double bnorm = 0.0;
    bool breakdown = false;

    std::size_t size() const { return alpha.size(); }
};

/// Run K steps of symmetric Lanczos. Full reorthogonalization (two modified
/// Gram-Schmidt passes against all previous vectors) is on by default; the
/// subspaces here are small enough that the O(nK^2) cost is noise.
template <typename Op>
LanczosFactorization lanczos_factor(const Op& a, const Vector& b, std::size_t K, bool reorth = true)
{
    const std::size_t n = b.size();
    if (K + 1 > n) throw std::invalid_argument("lanczos_factor: K+1 must not exceed n");
    const double bnorm = detail::norm2(b);
    if (bnorm == 0.0) throw std::invalid_argument("lanczos_factor: b must be nonzero");

    const double breakdown_tol = 1e-13 * a.gershgorin_bound();

    LanczosFactorization fac;
    fac.bnorm = bnorm;
    fac.q.reserve(K + 1);
    fac.q.push_back(b);
    detail::scale_inplace(fac.q[0], 1.0 / bnorm);

    for (std::size_t j = 0; j <= K; ++j) {
        Vector w = a.matvec(fac.q[j]);
        const double aj = detail::dot(fac.q[j], w);
        fac.alpha.push_back(aj);
        if (j == K) break;

        detail::axpy(-aj, fac.q[j], w);
        if (j > 0) detail::axpy(-fac.gamma[j - 1], fac.q[j - 1], w);
        if (reorth) {
            for (int pass = 0; pass < 2; ++pass)
                for (const Vector& qi : fac.q)
                    detail::axpy(-detail::dot(qi, w), qi, w);
        }
        const double g = detail::norm2(w);
        if (g <= breakdown_tol) {
            fac.breakdown = true; // invariant subspace captured; result exact
            break;
        }
        fac.gamma.push_back(g);
        detail::scale_inplace(w, 1.0 / g);
        fac.q.push_back(std::move(w));
    }
    return fac;
}

/// ||b|| Q f(T) e_1 assembled from a factorization and the eigendecomposition
/// of its tridiagonal matrix.
template <typename F>
Vector lanczos_combine(const LanczosFactorization& fac, const EigenDecomposition& td, F&& f)
{
    const std::size_t m = fac.size();
    Vector y(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        const double vk1 = td.vec(0, k); // first component of eigenvector k
        const double w = f(td.eigenvalues[k]) * vk1 * fac.bnorm;
        for (std::size_t i = 0; i < m; ++i) y[i] += td.vec(i, k) * w;
    }
    Vector out(fac.q.front().size(), 0.0);
    for (std::size_t i = 0; i < m; ++i) detail::axpy(y[i], fac.q[i], out);
    return out;
}

/// Lanczos approximation of f(A)b: ||b|| Q f(T) e_1 with T eigendecomposed
/// by the tridiagonal QL solver.
template <typename Op, typename F>
Vector lanczos_fAb(const Op& a, const Vector& b, std::size_t K, F&& f, bool reorth = true)
{
    const LanczosFactorization fac = lanczos_factor(a, b, K, reorth);
    const EigenDecomposition td = symtridiag_eig(fac.alpha, fac.gamma);
    return lanczos_combine(fac, td, f);
}

/// Ritz values of the Lanczos factorization (ascending).
template <typename Op>
Vector lanczos_ritz_values(const Op& a, const Vector& b, std::size_t K, bool reorth = true)
{
    const LanczosFactorization fac = lanczos_factor(a, b, K, reorth);
    return symtridiag_eig(fac.alpha, fac.gamma).eigenvalues;
}

/// Estimate an interval containing the spectrum: extremal Ritz values of a
/// seeded Lanczos run, expanded by `margin` of the Ritz width per side.
/// The containment guarantee is only verified a posteriori at desk scale;
/// callers that know exact bounds should pass them directly downstream.
template <typename Op>
SpectralInterval spectral_interval(const Op& a, double margin, std::size_t iters, std::uint64_t seed)
{
    if (iters < 2) throw std::invalid_argument("spectral_interval: need iters >= 2");
    const std::size_t n = a.n();
    if (n == 0) throw std::invalid_argument("spectral_interval: empty matrix");
    if (n == 1) {
        Vector e1{1.0};
        const double d = a.matvec(e1)[0];
        return widen_if_degenerate({d, d});
    }

    std::mt19937_64 rng(detail::substream_seed(seed, 0x1a2b3c));
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector b(n);
    for (double& v : b) v = normal(rng);

    const std::size_t K = std::min(iters, n - 1);
    const Vector ritz = lanczos_ritz_values(a, b, K, true);
    SpectralInterval iv{ritz.front(), ritz.back()};
    const double w = iv.width();
    iv.lo -= margin * w;
    iv.hi += margin * w;
    return widen_if_degenerate(iv);
}

} // namespace specpoly

#endif
