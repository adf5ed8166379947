#ifndef SPECPOLY_CHEBYSHEV_HPP
#define SPECPOLY_CHEBYSHEV_HPP

#include <cmath>
#include <numbers>

#include "specpoly/common.hpp"
#include "specpoly/interval.hpp"

namespace specpoly {

/// First-kind Chebyshev series c_0 + sum_k c_k T_k(t) on the affinely
/// mapped interval (t = interval.to_unit(z)).
struct ChebySeries {
    SpectralInterval interval;
    Vector coeffs; // c_0 .. c_K

    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

/// Jackson damping factors g_0..g_K for a degree-K series. g_0 = 1, so the
/// damped series keeps the constant term of the original.
inline Vector jackson_factors(std::size_t K)
{
    const double a = std::numbers::pi / static_cast<double>(K + 2);
    Vector g(K + 1);
    const double cot_a = std::cos(a) / std::sin(a);
    for (std::size_t k = 0; k <= K; ++k) {
        const double ka = static_cast<double>(k) * a;
        g[k] = ((static_cast<double>(K - k) + 2.0) * std::cos(ka) + std::sin(ka) * cot_a) /
               (static_cast<double>(K) + 2.0);
    }
    return g;
}

/// Chebyshev expansion of the step 1{lambda <= xi} on the interval, in
/// closed form via the arccosine of the mapped threshold; optionally
/// Jackson-damped to suppress the Gibbs oscillations.
inline ChebySeries step_coeffs(double xi, SpectralInterval interval, std::size_t K_theta, bool jackson = true)
{
    interval.validate();
    if (!interval.contains(xi))
        throw std::invalid_argument("step_coeffs: threshold outside the spectral interval");
    const double m = std::clamp(interval.to_unit(xi), -1.0, 1.0);
    const double theta = std::acos(m);

    ChebySeries s;
    s.interval = interval;
    s.coeffs.resize(K_theta + 1);
    s.coeffs[0] = 1.0 - theta / std::numbers::pi;
    for (std::size_t k = 1; k <= K_theta; ++k)
        s.coeffs[k] = -2.0 * std::sin(static_cast<double>(k) * theta) /
                      (static_cast<double>(k) * std::numbers::pi);
    if (jackson) {
        const Vector g = jackson_factors(K_theta);
        for (std::size_t k = 0; k <= K_theta; ++k) s.coeffs[k] *= g[k];
    }
    return s;
}

/// Degree-K truncated Chebyshev series of f on the interval. Coefficients
/// are computed by Gauss-Chebyshev quadrature with enough nodes that they
/// coincide with the orthogonal-projection (series) coefficients to machine
/// precision for smooth f; this is the plain undamped truncation used as
/// the comparison baseline.
template <typename F>
ChebySeries cheby_truncated(F&& f, SpectralInterval interval, std::size_t K)
{
    interval.validate();
    const std::size_t nq = std::max<std::size_t>(2 * K + 2, 512);
    Vector fv(nq), th(nq);
    for (std::size_t j = 0; j < nq; ++j) {
        th[j] = std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(nq);
        fv[j] = f(interval.from_unit(std::cos(th[j])));
    }
    ChebySeries s;
    s.interval = interval;
    s.coeffs.resize(K + 1);
    for (std::size_t k = 0; k <= K; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < nq; ++j)
            acc += fv[j] * std::cos(static_cast<double>(k) * th[j]);
        s.coeffs[k] = (k == 0 ? 1.0 : 2.0) * acc / static_cast<double>(nq);
    }
    return s;
}

/// Clenshaw evaluation of the series at z.
inline double cheby_eval(const ChebySeries& s, double z)
{
    const double t = s.interval.to_unit(z);
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = s.coeffs.size(); k-- > 1;) {
        const double b0 = 2.0 * t * b1 - b2 + s.coeffs[k];
        b2 = b1;
        b1 = b0;
    }
    return t * b1 - b2 + s.coeffs[0];
}

/// p(A)b through the standard Chebyshev matrix recurrence on the mapped
/// operator; exactly degree() matvecs.
template <typename Op>
Vector cheby_apply(const ChebySeries& s, const Op& a, const Vector& b)
{
    if (a.n() != b.size()) throw std::invalid_argument("cheby_apply: dimension mismatch");
    const double halfw = 0.5 * s.interval.width();
    const double mid = s.interval.mid();

    auto mapped = [&](const Vector& x) {
        Vector y = a.matvec(x);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = (y[i] - mid * x[i]) / halfw;
        return y;
    };

    Vector acc(b.size(), 0.0);
    Vector w0 = b;
    detail::axpy(s.coeffs[0], w0, acc);
    if (s.degree() == 0) return acc;

    Vector w1 = mapped(w0);
    detail::axpy(s.coeffs[1], w1, acc);
    for (std::size_t k = 2; k < s.coeffs.size(); ++k) {
        Vector w2 = mapped(w1);
        for (std::size_t i = 0; i < w2.size(); ++i) w2[i] = 2.0 * w2[i] - w0[i];
        detail::axpy(s.coeffs[k], w2, acc);
        w0 = std::move(w1);
        w1 = std::move(w2);
    }
    return acc;
}

} // namespace specpoly

#endif
