#ifndef SPECPOLY_INTERVAL_HPP
#define SPECPOLY_INTERVAL_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specpoly {

/// Closed interval [lo, hi] assumed to contain the whole spectrum of an
/// associated symmetric matrix.
struct SpectralInterval {
    double lo = 0.0;
    double hi = 1.0;

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }

    bool contains(double z) const { return z >= lo && z <= hi; }

    // map [lo,hi] -> [-1,1]
    double to_unit(double z) const { return (2.0 * z - (hi + lo)) / (hi - lo); }
    // map [-1,1] -> [lo,hi]
    double from_unit(double t) const { return 0.5 * (hi - lo) * t + 0.5 * (hi + lo); }

    void validate() const
    {
        if (!(lo < hi)) throw std::invalid_argument("SpectralInterval: lo must be < hi");
    }
};

/// Widen a numerically degenerate interval so downstream affine maps never
/// divide by a vanishing width. No-op when the interval is healthy.
inline SpectralInterval widen_if_degenerate(SpectralInterval iv)
{
    const double scale = std::max(1.0, std::abs(iv.hi));
    if (iv.hi - iv.lo < 1e-12 * scale) {
        const double pad = 1e-8 * scale;
        iv.lo -= pad;
        iv.hi += pad;
    }
    return iv;
}

} // namespace specpoly

#endif
