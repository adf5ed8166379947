#ifndef SPECPOLY_COMMON_HPP
#define SPECPOLY_COMMON_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace specpoly {

using Vector = std::vector<double>;

namespace detail {

inline double dot(const Vector& a, const Vector& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

// y += c*x
inline void axpy(double c, const Vector& x, Vector& y)
{
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += c * x[i];
}

inline void scale_inplace(Vector& x, double c)
{
    for (double& v : x) v *= c;
}

// SplitMix64 step, used to derive independent RNG substreams from one seed.
inline std::uint64_t splitmix64(std::uint64_t z)
{
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index)
{
    return splitmix64(seed ^ splitmix64(index + 1));
}

} // namespace detail
} // namespace specpoly

#endif
