#ifndef SPECPOLY_ORTHO_HPP
#define SPECPOLY_ORTHO_HPP

#include <string>

#include "specpoly/cdf.hpp"
#include "specpoly/interval.hpp"

namespace specpoly {

/// Discrete measure sum_m w_m delta(x - x_m) defining the inner product
/// <f,g> = sum_m w_m f(x_m) g(x_m). Abscissae strictly increasing, weights
/// nonnegative; zero-weight points are retained (they simply contribute
/// nothing).
struct DiscreteMeasure {
    Vector x;
    Vector w;

    std::size_t size() const { return x.size(); }

    std::size_t positive_weight_count() const
    {
        std::size_t c = 0;
        for (double v : w)
            if (v > 0.0) ++c;
        return c;
    }

    double total_weight() const
    {
        double s = 0.0;
        for (double v : w) s += v;
        return s;
    }

    void validate() const
    {
        if (x.size() != w.size() || x.size() < 2)
            throw std::invalid_argument("DiscreteMeasure: need matching arrays, size >= 2");
        for (std::size_t m = 0; m + 1 < x.size(); ++m)
            if (!(x[m] < x[m + 1]))
                throw std::invalid_argument("DiscreteMeasure: abscissae must increase strictly");
        for (double v : w)
            if (v < 0.0) throw std::invalid_argument("DiscreteMeasure: negative weight");
    }
};

/// Measure on M evenly spaced points of the interval, weighted by the
/// estimated spectral density (the analytic derivative of the fitted CDF).
inline DiscreteMeasure build_measure(const SpectralCDF& cdf, SpectralInterval interval, std::size_t M)
{
    interval.validate();
    if (M < 2) throw std::invalid_argument("build_measure: need M >= 2");
    DiscreteMeasure mu;
    mu.x.resize(M);
    mu.w.resize(M);
    for (std::size_t m = 0; m < M; ++m) {
        const double frac = static_cast<double>(m) / static_cast<double>(M - 1);
        mu.x[m] = std::clamp(interval.lo * (1.0 - frac) + interval.hi * frac,
                             interval.lo, interval.hi);
        const double w = cdf.deriv(mu.x[m]);
        mu.w[m] = w > 0.0 ? w : 0.0;
    }
    if (mu.positive_weight_count() < 2)
        throw std::invalid_argument("build_measure: fewer than 2 positive weights");
    return mu;
}

/// Monic polynomials orthogonal under a discrete measure, represented by
/// their three-term recurrence pi_{k+1} = (x - alpha_k) pi_k - beta_k
/// pi_{k-1}. alpha and beta hold indices 0..K-1 (beta_0 = sum of weights by
/// convention); norm2[k] = <pi_k, pi_k> for k = 0..K.
struct OrthoBasis {
    Vector alpha;
    Vector beta;
    Vector norm2;
    DiscreteMeasure measure;

    std::size_t degree() const { return alpha.size(); }

    /// beta_k = <pi_k,pi_k>/<pi_{k-1},pi_{k-1}> for any k <= degree (the
    /// entry one past the recurrence arrays is available through norm2).
    double beta_at(std::size_t k) const
    {
        if (k == 0) return beta.empty() ? norm2[0] : beta[0];
        return norm2[k] / norm2[k - 1];
    }

    /// pi_0..pi_K evaluated at z.
    Vector eval_all(double z, std::size_t K) const
    {
        Vector p(K + 1);
        p[0] = 1.0;
        if (K >= 1) p[1] = (z - alpha[0]) * p[0];
        for (std::size_t k = 1; k < K; ++k)
            p[k + 1] = (z - alpha[k]) * p[k] - beta[k] * p[k - 1];
        return p;
    }
};

/// Stieltjes procedure: generate recurrence coefficients for polynomials
/// orthogonal under the measure by iterating the vector recurrence on the
/// abscissae and forming discrete inner products as it goes. Fails with a
/// breakdown error when the measure cannot support the requested degree.
inline OrthoBasis stieltjes_basis(DiscreteMeasure measure, std::size_t K)
{
    measure.validate();
    const std::size_t M = measure.size();
    if (K > M - 1) throw std::invalid_argument("stieltjes_basis: K must be <= M-1");
    if (measure.positive_weight_count() < K + 1)
        throw std::invalid_argument("stieltjes_basis: fewer than K+1 positive weights");

    OrthoBasis basis;
    basis.alpha.resize(K);
    basis.beta.resize(K);
    basis.norm2.resize(K + 1);

    Vector prev(M, 0.0), cur(M, 1.0);
    double nrm_prev = 0.0;
    double nrm = measure.total_weight(); // <pi_0, pi_0> = beta_0
    basis.norm2[0] = nrm;
    if (!(nrm > 0.0)) throw std::runtime_error("stieltjes_basis: measure has zero total weight");

    for (std::size_t k = 0; k < K; ++k) {
        double tpp = 0.0;
        for (std::size_t m = 0; m < M; ++m)
            tpp += measure.w[m] * measure.x[m] * cur[m] * cur[m];
        basis.alpha[k] = tpp / nrm;
        basis.beta[k] = k == 0 ? nrm : nrm / nrm_prev;

        Vector next(M);
        const double bk = k == 0 ? 0.0 : basis.beta[k];
        for (std::size_t m = 0; m < M; ++m)
            next[m] = (measure.x[m] - basis.alpha[k]) * cur[m] - bk * prev[m];

        double nrm_next = 0.0;
        for (std::size_t m = 0; m < M; ++m)
            nrm_next += measure.w[m] * next[m] * next[m];
        if (!(nrm_next > 0.0) || !std::isfinite(nrm_next))
            throw std::runtime_error("stieltjes_basis: breakdown at k=" + std::to_string(k + 1) +
                                     " (measure effectively supported on too few points)");

        basis.norm2[k + 1] = nrm_next;
        prev = std::move(cur);
        cur = std::move(next);
        nrm_prev = nrm;
        nrm = nrm_next;
    }
    basis.measure = std::move(measure);
    return basis;
}

/// Orthogonal expansion p_K = sum_k gamma_k pi_k with the recurrence
/// coefficients needed to evaluate it at scalars or apply it to a matrix.
struct OrthoExpansion {
    Vector alpha; // 0..K-1
    Vector beta;  // 0..K-1
    Vector gamma; // 0..K

    std::size_t degree() const { return gamma.empty() ? 0 : gamma.size() - 1; }
};

/// Expansion coefficients gamma_k = <f,pi_k>/<pi_k,pi_k> of f in the basis;
/// the resulting polynomial is the weighted-least-squares minimizer of
/// sum_m w_m [f(x_m) - p(x_m)]^2 over polynomials of degree K.
template <typename F>
OrthoExpansion ortho_expand(F&& f, const OrthoBasis& basis, std::size_t K)
{
    if (K > basis.degree()) throw std::invalid_argument("ortho_expand: degree exceeds basis");
    const DiscreteMeasure& mu = basis.measure;
    const std::size_t M = mu.size();

    OrthoExpansion ex;
    ex.alpha.assign(basis.alpha.begin(), basis.alpha.begin() + static_cast<long>(K));
    ex.beta.assign(basis.beta.begin(), basis.beta.begin() + static_cast<long>(K));
    ex.gamma.assign(K + 1, 0.0);

    Vector fx(M);
    for (std::size_t m = 0; m < M; ++m) fx[m] = f(mu.x[m]);

    Vector prev(M, 0.0), cur(M, 1.0);
    for (std::size_t k = 0; k <= K; ++k) {
        double ip = 0.0;
        for (std::size_t m = 0; m < M; ++m) ip += mu.w[m] * fx[m] * cur[m];
        ex.gamma[k] = ip / basis.norm2[k];
        if (k == K) break;
        Vector next(M);
        const double bk = k == 0 ? 0.0 : basis.beta[k];
        for (std::size_t m = 0; m < M; ++m)
            next[m] = (mu.x[m] - basis.alpha[k]) * cur[m] - bk * prev[m];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return ex;
}

inline double ortho_eval(const OrthoExpansion& ex, double z)
{
    const std::size_t K = ex.degree();
    double prev = 0.0, cur = 1.0;
    double acc = ex.gamma[0];
    for (std::size_t k = 0; k < K; ++k) {
        const double bk = k == 0 ? 0.0 : ex.beta[k];
        const double next = (z - ex.alpha[k]) * cur - bk * prev;
        acc += ex.gamma[k + 1] * next;
        prev = cur;
        cur = next;
    }
    return acc;
}

/// p(A)b by the matrix form of the three-term recurrence; exactly degree()
/// matvecs.
template <typename Op>
Vector ortho_apply(const OrthoExpansion& ex, const Op& a, const Vector& b)
{
    if (a.n() != b.size()) throw std::invalid_argument("ortho_apply: dimension mismatch");
    const std::size_t K = ex.degree();
    Vector acc(b.size(), 0.0);
    Vector prev(b.size(), 0.0);
    Vector cur = b;
    detail::axpy(ex.gamma[0], cur, acc);
    for (std::size_t k = 0; k < K; ++k) {
        Vector next = a.matvec(cur);
        const double bk = k == 0 ? 0.0 : ex.beta[k];
        for (std::size_t i = 0; i < next.size(); ++i)
            next[i] -= ex.alpha[k] * cur[i] + bk * prev[i];
        detail::axpy(ex.gamma[k + 1], next, acc);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return acc;
}

} // namespace specpoly

#endif
