#ifndef SPECPOLY_EIG_HPP
#define SPECPOLY_EIG_HPP

#include <algorithm>
#include <cmath>
#include <limits>

#include "specpoly/sparse.hpp"

namespace specpoly {

/// Full symmetric eigendecomposition. Column k of `vectors` (row-major,
/// n x n) is the eigenvector for eigenvalues[k]; eigenvalues ascend.
struct EigenDecomposition {
    std::size_t n = 0;
    Vector eigenvalues;
    std::vector<double> vectors;

    double vec(std::size_t i, std::size_t k) const { return vectors[i * n + k]; }

    /// V f(Lambda) V^T b — the matrix function applied through the
    /// decomposition.
    template <typename F>
    Vector apply_function(F&& f, const Vector& b) const
    {
        if (b.size() != n) throw std::invalid_argument("apply_function: dimension mismatch");
        Vector y(n, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += vectors[i * n + k] * b[i];
            y[k] = s * f(eigenvalues[k]);
        }
        Vector out(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += vectors[i * n + k] * y[k];
            out[i] = s;
        }
        return out;
    }
};

namespace detail {

// Symmetric tridiagonal QL with implicit Wilkinson shifts and eigenvector
// accumulation. d: diagonal (length n), e: off-diagonal with e[i] coupling
// rows i and i+1 (length n, e[n-1] = 0). V: row-major n x n, pre-initialized
// to the identity or to an orthogonal reduction to be accumulated onto.
// Derived from the EISPACK tql2 routine.
inline void tql2(Vector& d, Vector& e, std::vector<double>& V, std::size_t n, long max_total_iter)
{
    if (n == 0) return;
    const double eps = std::numeric_limits<double>::epsilon();
    double f = 0.0;
    double tst1 = 0.0;
    long total_iter = 0;

    for (std::size_t l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
        std::size_t m = l;
        while (m < n) {
            if (std::abs(e[m]) <= eps * tst1) break;
            ++m;
        }
        if (m > l) {
            do {
                if (++total_iter > max_total_iter)
                    throw std::runtime_error("tql2: no convergence (iteration budget exhausted)");

                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0) r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                const double dl1 = d[l + 1];
                double h = g - d[l];
                for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
                f += h;

                p = d[m];
                double c = 1.0, c2 = c, c3 = c;
                const double el1 = e[l + 1];
                double s = 0.0, s2 = 0.0;
                for (std::size_t ii = m; ii-- > l;) {
                    const std::size_t i = ii;
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = std::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for (std::size_t k = 0; k < n; ++k) {
                        h = V[k * n + (i + 1)];
                        V[k * n + (i + 1)] = s * V[k * n + i] + c * h;
                        V[k * n + i] = c * V[k * n + i] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::abs(e[l]) > eps * tst1);
        }
        d[l] += f;
        e[l] = 0.0;
    }

    // ascending order, carrying eigenvector columns along
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::size_t k = i;
        double p = d[i];
        for (std::size_t j = i + 1; j < n; ++j)
            if (d[j] < p) { k = j; p = d[j]; }
        if (k != i) {
            d[k] = d[i];
            d[i] = p;
            for (std::size_t r = 0; r < n; ++r)
                std::swap(V[r * n + i], V[r * n + k]);
        }
    }
}

// Householder reduction of a symmetric matrix (stored in V, row-major) to
// tridiagonal form with accumulated transformations, after EISPACK tred2.
// On return V holds the orthogonal accumulation, d the diagonal and e the
// off-diagonal in EISPACK convention (e[i] couples rows i-1 and i).
inline void tred2(std::vector<double>& V, std::size_t n, Vector& d, Vector& e)
{
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) d[j] = V[(n - 1) * n + j];

    for (std::size_t i = n - 1; i > 0; --i) {
        double scale = 0.0;
        double h = 0.0;
        for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
        if (scale == 0.0) {
            e[i] = d[i - 1];
            for (std::size_t j = 0; j < i; ++j) {
                d[j] = V[(i - 1) * n + j];
                V[i * n + j] = 0.0;
                V[j * n + i] = 0.0;
            }
        } else {
            for (std::size_t k = 0; k < i; ++k) {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            double f = d[i - 1];
            double g = std::sqrt(h);
            if (f > 0) g = -g;
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

            for (std::size_t j = 0; j < i; ++j) {
                f = d[j];
                V[j * n + i] = f;
                g = e[j] + V[j * n + j] * f;
                for (std::size_t k = j + 1; k < i; ++k) {
                    g += V[k * n + j] * d[k];
                    e[k] += V[k * n + j] * f;
                }
                e[j] = g;
            }
            double f2 = 0.0;
            for (std::size_t j = 0; j < i; ++j) {
                e[j] /= h;
                f2 += e[j] * d[j];
            }
            const double hh = f2 / (h + h);
            for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
            for (std::size_t j = 0; j < i; ++j) {
                f = d[j];
                g = e[j];
                for (std::size_t k = j; k < i; ++k)
                    V[k * n + j] -= f * e[k] + g * d[k];
                d[j] = V[(i - 1) * n + j];
                V[i * n + j] = 0.0;
            }
        }
        d[i] = h;
    }

    for (std::size_t i = 0; i + 1 < n; ++i) {
        V[(n - 1) * n + i] = V[i * n + i];
        V[i * n + i] = 1.0;
        const double h = d[i + 1];
        if (h != 0.0) {
            for (std::size_t k = 0; k <= i; ++k) d[k] = V[k * n + (i + 1)] / h;
            for (std::size_t j = 0; j <= i; ++j) {
                double g = 0.0;
                for (std::size_t k = 0; k <= i; ++k) g += V[k * n + (i + 1)] * V[k * n + j];
                for (std::size_t k = 0; k <= i; ++k) V[k * n + j] -= g * d[k];
            }
        }
        for (std::size_t k = 0; k <= i; ++k) V[k * n + (i + 1)] = 0.0;
    }
    for (std::size_t j = 0; j < n; ++j) {
        d[j] = V[(n - 1) * n + j];
        V[(n - 1) * n + j] = 0.0;
    }
    V[(n - 1) * n + (n - 1)] = 1.0;
    e[0] = 0.0;
}

} // namespace detail

/// Eigendecomposition of a symmetric tridiagonal matrix given its diagonal
/// and off-diagonal. Implicit-shift QL; eigenvalues ascending.
inline EigenDecomposition symtridiag_eig(const Vector& diag, const Vector& offdiag)
{
    const std::size_t n = diag.size();
    if (n == 0) throw std::invalid_argument("symtridiag_eig: empty matrix");
    if (offdiag.size() + 1 != n)
        throw std::invalid_argument("symtridiag_eig: offdiag must have size n-1");

    EigenDecomposition out;
    out.n = n;
    out.eigenvalues = diag;
    Vector e(n, 0.0);
    std::copy(offdiag.begin(), offdiag.end(), e.begin());
    out.vectors.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) out.vectors[i * n + i] = 1.0;
    detail::tql2(out.eigenvalues, e, out.vectors, n, 30L * static_cast<long>(n));
    return out;
}

/// Eigendecomposition of a dense symmetric matrix (row-major, n x n):
/// Householder tridiagonalization followed by implicit QL, transforms
/// accumulated. Intended for the desk-scale oracle.
inline EigenDecomposition dense_sym_eig(std::vector<double> a, std::size_t n)
{
    if (n == 0) throw std::invalid_argument("dense_sym_eig: empty matrix");
    if (a.size() != n * n) throw std::invalid_argument("dense_sym_eig: bad buffer size");
    if (n > 10000) throw std::invalid_argument("dense_sym_eig: matrix too large for the dense oracle");

    EigenDecomposition out;
    out.n = n;
    out.vectors = std::move(a);
    Vector d, e;
    detail::tred2(out.vectors, n, d, e);
    // shift to e[i] coupling rows i and i+1
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    out.eigenvalues = std::move(d);
    detail::tql2(out.eigenvalues, e, out.vectors, n, 30L * static_cast<long>(n));
    return out;
}

inline EigenDecomposition dense_sym_eig(const SparseSymMatrix& a)
{
    return dense_sym_eig(a.to_dense(), a.n());
}

} // namespace specpoly

#endif
