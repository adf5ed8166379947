#ifndef SPECPOLY_NEWTON_HPP
#define SPECPOLY_NEWTON_HPP

#include <cmath>
#include <numbers>

#include "specpoly/cdf.hpp"

namespace specpoly {

/// Interpolation nodes adapted to the spectral density: the K+1 extrema of
/// the degree-K Chebyshev polynomial, shifted to [0,1] and warped through
/// the inverse of the estimated cumulative density, so node density follows
/// eigenvalue density. Returned in production order k = 0..K (nonincreasing).
/// Nodes collapsed by flat CDF spans are spread apart by a minimum gap of
/// 1e-8 x interval width.
inline Vector warped_nodes(const SpectralCDF& cdf, std::size_t K)
{
    if (K < 1) throw std::invalid_argument("warped_nodes: need K >= 1");
    const double width = cdf.hi() - cdf.lo();
    const double gap = 1e-8 * width;
    if (static_cast<double>(K) * gap > width)
        throw std::invalid_argument("warped_nodes: cannot fit K+1 distinct nodes in the interval");

    Vector x(K + 1);
    for (std::size_t k = 0; k <= K; ++k) {
        const double y = 0.5 * (std::cos(static_cast<double>(k) * std::numbers::pi /
                                         static_cast<double>(K)) +
                                1.0);
        x[k] = cdf.inverse(y);
    }
    // nonincreasing by construction; enforce a minimum separation downward,
    // then push back up from lo if the tail fell off the interval
    for (std::size_t k = 1; k <= K; ++k)
        if (x[k] > x[k - 1] - gap) x[k] = x[k - 1] - gap;
    if (x[K] < cdf.lo()) {
        x[K] = cdf.lo();
        for (std::size_t k = K; k-- > 0;)
            if (x[k] < x[k + 1] + gap) x[k] = x[k + 1] + gap;
        if (x[0] > cdf.hi())
            throw std::invalid_argument("warped_nodes: cannot fit K+1 distinct nodes in the interval");
    }
    return x;
}

/// Newton-form interpolant: Leja-ordered nodes with divided-difference
/// coefficients d_0..d_K.
struct NewtonInterp {
    Vector nodes;
    Vector coeffs;

    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

namespace detail {

// Greedy Leja ordering: start from the largest-magnitude node, then
// repeatedly pick the node maximizing the distance product to those already
// chosen (in log space to dodge overflow). Mitigates divided-difference
// ill-conditioning without changing the interpolant.
inline std::vector<std::size_t> leja_order(const Vector& x)
{
    const std::size_t n = x.size();
    std::vector<std::size_t> order;
    order.reserve(n);
    std::vector<bool> used(n, false);

    std::size_t first = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(x[i]) > std::abs(x[first])) first = i;
    order.push_back(first);
    used[first] = true;

    std::vector<double> logprod(n, 0.0);
    for (std::size_t step = 1; step < n; ++step) {
        const std::size_t last = order.back();
        std::size_t best = n;
        double best_val = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i]) continue;
            logprod[i] += std::log(std::abs(x[i] - x[last]));
            if (logprod[i] > best_val) {
                best_val = logprod[i];
                best = i;
            }
        }
        order.push_back(best);
        used[best] = true;
    }
    return order;
}

} // namespace detail

/// Unique degree-K interpolant through {(x_k, f(x_k))}. Nodes must be
/// distinct; they are reordered internally (Leja) before the divided
/// differences are formed.
template <typename F>
NewtonInterp newton_interpolant(const Vector& nodes, F&& f)
{
    const std::size_t n = nodes.size();
    if (n == 0) throw std::invalid_argument("newton_interpolant: no nodes");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (nodes[i] == nodes[j])
                throw std::invalid_argument("newton_interpolant: duplicate nodes");

    const std::vector<std::size_t> order = detail::leja_order(nodes);
    NewtonInterp p;
    p.nodes.resize(n);
    p.coeffs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        p.nodes[i] = nodes[order[i]];
        p.coeffs[i] = f(p.nodes[i]);
    }
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n; i-- > j;)
            p.coeffs[i] = (p.coeffs[i] - p.coeffs[i - 1]) / (p.nodes[i] - p.nodes[i - j]);
    return p;
}

/// Horner evaluation of the Newton form.
inline double newton_eval(const NewtonInterp& p, double z)
{
    const std::size_t K = p.degree();
    double acc = p.coeffs[K];
    for (std::size_t i = K; i-- > 0;)
        acc = acc * (z - p.nodes[i]) + p.coeffs[i];
    return acc;
}

/// p(A)b by the nested multiplication iteration adapted to node/coefficient
/// pairs: v <- d_{K-l} b + (A - x_{K-l} I) v. Exactly degree() matvecs.
template <typename Op>
Vector newton_apply(const NewtonInterp& p, const Op& a, const Vector& b)
{
    if (a.n() != b.size()) throw std::invalid_argument("newton_apply: dimension mismatch");
    const std::size_t K = p.degree();
    Vector v(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) v[i] = p.coeffs[K] * b[i];
    for (std::size_t l = 1; l <= K; ++l) {
        const std::size_t idx = K - l;
        Vector av = a.matvec(v);
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = p.coeffs[idx] * b[i] + av[i] - p.nodes[idx] * v[i];
    }
    return v;
}

} // namespace specpoly

#endif
