#ifndef SPECPOLY_TESTS_HELPERS_HPP
#define SPECPOLY_TESTS_HELPERS_HPP

#include <random>

#include "specpoly/specpoly.hpp"

namespace testutil {

using specpoly::Vector;

inline double rel_diff(const Vector& a, const Vector& b)
{
    double d = 0.0, s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double e = a[i] - b[i];
        d += e * e;
        s += b[i] * b[i];
    }
    return std::sqrt(d / s);
}

inline double max_abs_diff(const Vector& a, const Vector& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

/// Dense random symmetric matrix with N(0,1)/sqrt(n) entries (spectrum
/// roughly in [-2.2, 2.2]); returned row-major.
inline std::vector<double> random_sym_dense(std::size_t n, std::uint64_t seed, double scale = -1.0)
{
    if (scale < 0.0) scale = 1.0 / std::sqrt(static_cast<double>(n));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> a(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double v = normal(rng) * scale;
            a[i * n + j] = v;
            a[j * n + i] = v;
        }
    return a;
}

inline specpoly::SparseSymMatrix sparse_from_dense(const std::vector<double>& a, std::size_t n)
{
    std::vector<specpoly::Triplet> t;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (a[i * n + j] != 0.0) t.push_back({i, j, a[i * n + j]});
    return specpoly::SparseSymMatrix::from_triplets(n, std::move(t));
}

/// Plain dense reference product, independent of the CSR code path.
inline Vector dense_matvec(const std::vector<double>& a, std::size_t n, const Vector& x)
{
    Vector y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += a[i * n + j] * x[j];
        y[i] = s;
    }
    return y;
}

/// Gaussian elimination with partial pivoting; oracle-side linear solve.
inline Vector solve_dense(std::vector<double> a, Vector rhs)
{
    const std::size_t n = rhs.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a[i * n + k]) > std::abs(a[piv * n + k])) piv = i;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
            std::swap(rhs[k], rhs[piv]);
        }
        const double d = a[k * n + k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = a[i * n + k] / d;
            if (m == 0.0) continue;
            for (std::size_t j = k; j < n; ++j) a[i * n + j] -= m * a[k * n + j];
            rhs[i] -= m * rhs[k];
        }
    }
    Vector x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = rhs[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a[i * n + j] * x[j];
        x[i] = s / a[i * n + i];
    }
    return x;
}

/// Interpolation oracle: solve the Vandermonde system in the affinely mapped
/// variable (monomials in t = to_unit(z)), then evaluate by Horner. Entirely
/// independent of the divided-difference path.
class MappedVandermondeInterp {
public:
    MappedVandermondeInterp(const Vector& nodes, const Vector& values, specpoly::SpectralInterval iv)
        : iv_(iv)
    {
        const std::size_t n = nodes.size();
        std::vector<double> vm(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double t = iv_.to_unit(nodes[i]);
            double p = 1.0;
            for (std::size_t j = 0; j < n; ++j) {
                vm[i * n + j] = p;
                p *= t;
            }
        }
        coeffs_ = solve_dense(std::move(vm), values);
    }

    double operator()(double z) const
    {
        const double t = iv_.to_unit(z);
        double acc = 0.0;
        for (std::size_t j = coeffs_.size(); j-- > 0;) acc = acc * t + coeffs_[j];
        return acc;
    }

private:
    specpoly::SpectralInterval iv_;
    Vector coeffs_;
};

/// Weighted least-squares oracle: normal equations in the Chebyshev basis of
/// the mapped variable. Independent of the Stieltjes recurrence path.
class WeightedLsOracle {
public:
    template <typename F>
    WeightedLsOracle(const specpoly::DiscreteMeasure& mu, F&& f, std::size_t K,
                     specpoly::SpectralInterval iv)
        : iv_(iv)
    {
        const std::size_t M = mu.size();
        const std::size_t m = K + 1;
        std::vector<double> design(M * m, 0.0);
        for (std::size_t r = 0; r < M; ++r) {
            const double t = iv_.to_unit(mu.x[r]);
            double tm1 = 1.0, tm2 = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                design[r * m + j] = tm1;
                const double next = j == 0 ? t : 2.0 * t * tm1 - tm2;
                tm2 = tm1;
                tm1 = next;
            }
        }
        std::vector<double> ata(m * m, 0.0);
        Vector atb(m, 0.0);
        for (std::size_t r = 0; r < M; ++r) {
            const double w = mu.w[r];
            if (w == 0.0) continue;
            const double fr = f(mu.x[r]);
            for (std::size_t i = 0; i < m; ++i) {
                atb[i] += w * design[r * m + i] * fr;
                for (std::size_t j = 0; j < m; ++j)
                    ata[i * m + j] += w * design[r * m + i] * design[r * m + j];
            }
        }
        coeffs_ = solve_dense(std::move(ata), std::move(atb));
    }

    double operator()(double z) const
    {
        const double t = iv_.to_unit(z);
        double acc = 0.0, tm1 = 1.0, tm2 = 0.0;
        for (std::size_t j = 0; j < coeffs_.size(); ++j) {
            acc += coeffs_[j] * tm1;
            const double next = j == 0 ? t : 2.0 * t * tm1 - tm2;
            tm2 = tm1;
            tm1 = next;
        }
        return acc;
    }

private:
    specpoly::SpectralInterval iv_;
    Vector coeffs_;
};

template <typename F>
double weighted_residual(const specpoly::DiscreteMeasure& mu, F&& f, const std::function<double(double)>& p)
{
    double r = 0.0;
    for (std::size_t m = 0; m < mu.size(); ++m) {
        const double e = f(mu.x[m]) - p(mu.x[m]);
        r += mu.w[m] * e * e;
    }
    return r;
}

/// Shared desk-scale graph fixture: a seeded G(500, 0.2) Laplacian with its
/// dense eigendecomposition and a KPM-estimated CDF. Built once per binary.
struct GnpFixture {
    specpoly::SparseSymMatrix L;
    specpoly::EigenDecomposition eig;
    specpoly::SpectralInterval interval;
    specpoly::SpectralCDF cdf;
};

inline const GnpFixture& gnp500()
{
    static const GnpFixture fx = [] {
        GnpFixture f;
        f.L = specpoly::gen_erdos_renyi_laplacian(500, 0.2, 2026);
        f.eig = specpoly::dense_sym_eig(f.L);
        f.interval = specpoly::widen_if_degenerate(
            {f.eig.eigenvalues.front(), f.eig.eigenvalues.back()});
        const auto counts = specpoly::estimate_counts(f.L, f.interval, 10, 10, 30, 11);
        f.cdf = specpoly::fit_cdf(counts, f.L.n(), f.interval);
        return f;
    }();
    return fx;
}

inline double exp_neg(double x) { return std::exp(-x); }

} // namespace testutil

#endif
