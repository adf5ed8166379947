#ifndef SPECPOLY_CDF_HPP
#define SPECPOLY_CDF_HPP

#include <algorithm>
#include <random>

#include <json.hpp>

#include "specpoly/chebyshev.hpp"
#include "specpoly/interval.hpp"
#include "specpoly/sparse.hpp"

namespace specpoly {

/// Stochastic eigenvalue-count estimates eta_i ~ #{lambda <= xi_i} at T
/// thresholds linearly spaced on the spectral interval (endpoints included).
struct EigCountEstimate {
    SpectralInterval interval;
    Vector xi;  // strictly increasing thresholds
    Vector eta; // estimated counts (not yet normalized or repaired)
    std::size_t probes = 0;     // J
    std::size_t filter_degree = 0; // K_theta
};

/// Estimate eigenvalue counts via Hutchinson's trace estimator applied to
/// Jackson-Chebyshev step filters. One Chebyshev recurrence sweep is run per
/// probe vector and shared across all T thresholds: the sweep accumulates
/// q_k = x^T T_k(A~) x, and each threshold only re-weights those moments with
/// its own step coefficients. Deterministic for a fixed seed; probe j draws
/// from its own RNG substream so results do not depend on T.
template <typename Op>
EigCountEstimate estimate_counts(const Op& a, SpectralInterval interval, std::size_t T,
                                 std::size_t J, std::size_t K_theta, std::uint64_t seed)
{
    interval.validate();
    if (T < 2) throw std::invalid_argument("estimate_counts: need T >= 2");
    if (J < 1) throw std::invalid_argument("estimate_counts: need J >= 1");
    const std::size_t n = a.n();
    const double halfw = 0.5 * interval.width();
    const double mid = interval.mid();

    auto mapped = [&](const Vector& x) {
        Vector y = a.matvec(x);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = (y[i] - mid * x[i]) / halfw;
        return y;
    };

    // Chebyshev moments summed over probes, in fixed probe order
    Vector moments(K_theta + 1, 0.0);
    for (std::size_t j = 0; j < J; ++j) {
        std::mt19937_64 rng(detail::substream_seed(seed, j));
        std::normal_distribution<double> normal(0.0, 1.0);
        Vector x(n);
        for (double& v : x) v = normal(rng);

        Vector w0 = x;
        moments[0] += detail::dot(x, w0);
        if (K_theta >= 1) {
            Vector w1 = mapped(x);
            moments[1] += detail::dot(x, w1);
            for (std::size_t k = 2; k <= K_theta; ++k) {
                Vector w2 = mapped(w1);
                for (std::size_t i = 0; i < n; ++i) w2[i] = 2.0 * w2[i] - w0[i];
                moments[k] += detail::dot(x, w2);
                w0 = std::move(w1);
                w1 = std::move(w2);
            }
        }
    }
    for (double& m : moments) m /= static_cast<double>(J);

    EigCountEstimate est;
    est.interval = interval;
    est.probes = J;
    est.filter_degree = K_theta;
    est.xi.resize(T);
    est.eta.resize(T);
    for (std::size_t i = 0; i < T; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(T - 1);
        // convex blend, clamped: roundoff must not push a threshold outside
        est.xi[i] = std::clamp(interval.lo * (1.0 - frac) + interval.hi * frac,
                               interval.lo, interval.hi);
        const ChebySeries filt = step_coeffs(est.xi[i], interval, K_theta, true);
        est.eta[i] = detail::dot(filt.coeffs, moments);
    }
    return est;
}

/// Monotone piecewise-cubic Hermite estimate of the cumulative spectral
/// density, anchored to 0 at the left endpoint and 1 at the right. The
/// derivative is analytic per piece and the inverse is solved per piece by
/// safeguarded Newton/bisection.
class SpectralCDF {
public:
    SpectralCDF() = default;

    /// Fit from monotone-repaired points. knots strictly increasing,
    /// values nondecreasing in [0,1] with values.front()=0, values.back()=1.
    static SpectralCDF from_points(Vector knots, Vector values)
    {
        if (knots.size() < 2 || knots.size() != values.size())
            throw std::invalid_argument("SpectralCDF: need matching knot/value arrays, size >= 2");
        for (std::size_t i = 0; i + 1 < knots.size(); ++i)
            if (!(knots[i] < knots[i + 1]))
                throw std::invalid_argument("SpectralCDF: knots must increase strictly");
        for (std::size_t i = 0; i + 1 < values.size(); ++i)
            if (values[i] > values[i + 1])
                throw std::invalid_argument("SpectralCDF: values must be nondecreasing");

        SpectralCDF c;
        c.x_ = std::move(knots);
        c.y_ = std::move(values);
        c.m_ = monotone_slopes(c.x_, c.y_);
        return c;
    }

    double lo() const { return x_.front(); }
    double hi() const { return x_.back(); }
    const Vector& knots() const { return x_; }
    const Vector& values() const { return y_; }
    const Vector& slopes() const { return m_; }

    /// P(z); z must lie in [lo, hi] up to a relative slack of 1e-12.
    double eval(double z) const
    {
        const std::size_t i = piece_for(z);
        double t, h;
        local(z, i, t, h);
        const double t1 = 1.0 - t;
        const double h00 = (1.0 + 2.0 * t) * t1 * t1;
        const double h10 = t * t1 * t1;
        const double h01 = t * t * (3.0 - 2.0 * t);
        const double h11 = t * t * (t - 1.0);
        return y_[i] * h00 + h * m_[i] * h10 + y_[i + 1] * h01 + h * m_[i + 1] * h11;
    }

    /// dP/dz, the spectral density estimate. Analytic per piece; clamped at
    /// zero to absorb roundoff at monotone-region boundaries.
    double deriv(double z) const
    {
        const std::size_t i = piece_for(z);
        double t, h;
        local(z, i, t, h);
        const double d = (y_[i] * (6.0 * t * t - 6.0 * t) + y_[i + 1] * (6.0 * t - 6.0 * t * t)) / h +
                         m_[i] * (3.0 * t * t - 4.0 * t + 1.0) + m_[i + 1] * (3.0 * t * t - 2.0 * t);
        return d > 0.0 ? d : 0.0;
    }

    /// Leftmost z with P(z) = y, for y in [0, 1]. On a flat span the left
    /// edge of the span is returned. The residual |P(z) - y| is driven to
    /// 1e-12 or below (typically machine precision).
    double inverse(double y) const
    {
        if (y < y_.front() - 1e-12 || y > y_.back() + 1e-12)
            throw std::domain_error("SpectralCDF::inverse: argument outside [0,1]");
        y = std::clamp(y, y_.front(), y_.back());

        // first knot with value >= y; equality means the knot itself is the
        // leftmost preimage (any earlier piece stays strictly below y)
        const std::size_t idx = static_cast<std::size_t>(
            std::lower_bound(y_.begin(), y_.end(), y) - y_.begin());
        if (y_[idx] == y) return x_[idx];

        const std::size_t i = idx - 1; // y_[i] < y < y_[i+1]
        double a = x_[i], b = x_[i + 1];
        double z = 0.5 * (a + b);
        for (int it = 0; it < 200; ++it) {
            const double r = eval(z) - y;
            if (std::abs(r) <= 1e-15) break;
            if (r > 0.0) b = z; else a = z;
            bool stepped = false;
            const double d = deriv(z);
            if (d > 0.0) {
                const double zn = z - r / d;
                if (zn > a && zn < b) {
                    z = zn;
                    stepped = true;
                }
            }
            if (!stepped) z = 0.5 * (a + b);
            if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b)))
                break;
        }
        return z;
    }

    nlohmann::json to_json() const
    {
        return nlohmann::json{{"knots", x_}, {"values", y_}, {"slopes", m_}};
    }

    static SpectralCDF from_json(const nlohmann::json& j)
    {
        SpectralCDF c = from_points(j.at("knots").get<Vector>(), j.at("values").get<Vector>());
        if (j.contains("slopes")) {
            const Vector m = j.at("slopes").get<Vector>();
            if (m.size() == c.x_.size()) c.m_ = m;
        }
        return c;
    }

private:
    // Fritsch-Carlson monotone slopes: weighted-harmonic interior slopes,
    // one-sided secants at the ends, then projection into the monotone
    // region |alpha|, |beta| <= 3.
    static Vector monotone_slopes(const Vector& x, const Vector& y)
    {
        const std::size_t n = x.size();
        Vector m(n, 0.0);
        if (n == 2) {
            m[0] = m[1] = (y[1] - y[0]) / (x[1] - x[0]);
            return m;
        }
        Vector h(n - 1), d(n - 1);
        for (std::size_t k = 0; k + 1 < n; ++k) {
            h[k] = x[k + 1] - x[k];
            d[k] = (y[k + 1] - y[k]) / h[k];
        }
        m[0] = d[0];
        m[n - 1] = d[n - 2];
        for (std::size_t k = 1; k + 1 < n; ++k) {
            if (d[k - 1] * d[k] <= 0.0) {
                m[k] = 0.0;
            } else {
                const double w1 = 2.0 * h[k] + h[k - 1];
                const double w2 = h[k] + 2.0 * h[k - 1];
                m[k] = (w1 + w2) / (w1 / d[k - 1] + w2 / d[k]);
            }
        }
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (d[k] == 0.0) {
                m[k] = 0.0;
                m[k + 1] = 0.0;
            } else {
                const double alpha = m[k] / d[k];
                const double beta = m[k + 1] / d[k];
                const double s = alpha * alpha + beta * beta;
                if (s > 9.0) {
                    const double tau = 3.0 / std::sqrt(s);
                    m[k] = tau * alpha * d[k];
                    m[k + 1] = tau * beta * d[k];
                }
            }
        }
        return m;
    }

    std::size_t piece_for(double z) const
    {
        const double slack = 1e-12 * std::max(1.0, hi() - lo());
        if (z < lo() - slack || z > hi() + slack)
            throw std::domain_error("SpectralCDF: argument outside [lo, hi]");
        z = std::clamp(z, lo(), hi());
        const std::size_t idx = static_cast<std::size_t>(
            std::upper_bound(x_.begin(), x_.end(), z) - x_.begin());
        return std::min(std::max<std::size_t>(idx, 1) - 1, x_.size() - 2);
    }

    void local(double z, std::size_t i, double& t, double& h) const
    {
        z = std::clamp(z, lo(), hi());
        h = x_[i + 1] - x_[i];
        t = (z - x_[i]) / h;
    }

    Vector x_, y_, m_;
};

/// Repair the raw counts (clamp eta/N to [0,1], enforce a nondecreasing
/// sequence via running maximum, pin the endpoints to 0 and 1) and fit the
/// monotone cubic. Thresholds that coincide with the interval endpoints are
/// merged into the pinned anchors.
inline SpectralCDF fit_cdf(const EigCountEstimate& counts, std::size_t n, SpectralInterval interval)
{
    interval.validate();
    if (counts.xi.size() < 2 || counts.xi.size() != counts.eta.size())
        throw std::invalid_argument("fit_cdf: invalid count estimate");

    const double merge_tol = 1e-12 * std::max(1.0, interval.width());
    Vector knots{interval.lo};
    Vector vals{0.0};
    double running = 0.0;
    for (std::size_t i = 0; i < counts.xi.size(); ++i) {
        const double z = counts.xi[i];
        if (z <= interval.lo + merge_tol || z >= interval.hi - merge_tol) continue;
        double v = std::clamp(counts.eta[i] / static_cast<double>(n), 0.0, 1.0);
        running = std::max(running, v);
        if (z - knots.back() <= merge_tol) continue;
        knots.push_back(z);
        vals.push_back(running);
    }
    knots.push_back(interval.hi);
    vals.push_back(1.0);
    return SpectralCDF::from_points(std::move(knots), std::move(vals));
}

} // namespace specpoly

#endif
