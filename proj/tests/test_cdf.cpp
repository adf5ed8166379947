#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace specpoly;
using Catch::Approx;

namespace {

SpectralCDF linear_cdf(double lo, double hi)
{
    EigCountEstimate counts;
    counts.interval = {lo, hi};
    const std::size_t T = 6;
    for (std::size_t i = 0; i < T; ++i) {
        const double fr = static_cast<double>(i) / (T - 1);
        counts.xi.push_back(lo + fr * (hi - lo));
        counts.eta.push_back(fr * 100.0);
    }
    return fit_cdf(counts, 100, counts.interval);
}

} // namespace

TEST_CASE("identity trace estimate at the top threshold", "[cdf]")
{
    const auto I = SparseSymMatrix::identity(100);
    const SpectralInterval iv{0.0, 2.0};
    const auto counts = estimate_counts(I, iv, 5, 10, 30, 21);
    REQUIRE(std::abs(counts.eta.back() - 100.0) <= 10.0);
}

TEST_CASE("count estimate between clusters of a staircase spectrum", "[cdf]")
{
    Vector d;
    for (int v = 1; v <= 10; ++v)
        for (int c = 0; c < 10; ++c) d.push_back(static_cast<double>(v));
    const auto A = SparseSymMatrix::diagonal(d);
    // T = 21 puts a threshold exactly at 5.05 (index 9)
    const auto counts = estimate_counts(A, {1.0, 10.0}, 21, 10, 30, 3);
    REQUIRE(counts.xi[9] == Approx(5.05).margin(1e-12));
    REQUIRE(std::abs(counts.eta[9] - 50.0) <= 0.15 * 50.0);
}

TEST_CASE("counts are deterministic and independent of T", "[cdf]")
{
    const auto I = SparseSymMatrix::identity(40);
    const SpectralInterval iv{0.0, 2.0};
    const auto a = estimate_counts(I, iv, 7, 4, 20, 5);
    const auto b = estimate_counts(I, iv, 7, 4, 20, 5);
    REQUIRE(a.eta == b.eta);
    // shared probe substreams: the endpoint thresholds coincide across T
    const auto c = estimate_counts(I, iv, 13, 4, 20, 5);
    REQUIRE(c.eta.front() == a.eta.front());
    REQUIRE(c.eta.back() == a.eta.back());
}

TEST_CASE("degenerate intervals and bad parameters are rejected", "[cdf]")
{
    const auto I = SparseSymMatrix::identity(5);
    REQUIRE_THROWS_AS(estimate_counts(I, {1.0, 1.0}, 5, 2, 10, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(estimate_counts(I, {0.0, 2.0}, 1, 2, 10, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(estimate_counts(I, {0.0, 2.0}, 5, 0, 10, 0), std::invalid_argument);
}

TEST_CASE("linear counts fit to the linear spline", "[cdf]")
{
    const SpectralCDF cdf = linear_cdf(0.0, 10.0);
    for (int i = 0; i <= 100; ++i) {
        const double z = 10.0 * i / 100.0;
        REQUIRE(cdf.eval(z) == Approx(z / 10.0).margin(1e-12));
        REQUIRE(cdf.deriv(z) == Approx(0.1).margin(1e-12));
    }
    REQUIRE(cdf.inverse(0.3) == Approx(3.0).margin(1e-10));
}

TEST_CASE("repair clamps, monotonizes, and pins the endpoints", "[cdf]")
{
    EigCountEstimate counts;
    counts.interval = {0.0, 4.0};
    counts.xi = {0.0, 1.0, 2.0, 3.0, 4.0};
    counts.eta = {5.0, 60.0, 40.0, 130.0, 90.0}; // noisy: dips and overshoots
    const SpectralCDF cdf = fit_cdf(counts, 100, counts.interval);

    REQUIRE(cdf.eval(0.0) == 0.0);
    REQUIRE(cdf.eval(4.0) == 1.0);
    // running max of clamped values at the interior knots
    REQUIRE(cdf.eval(1.0) == Approx(0.6).margin(1e-14));
    REQUIRE(cdf.eval(2.0) == Approx(0.6).margin(1e-14));
    REQUIRE(cdf.eval(3.0) == Approx(1.0).margin(1e-14));
    double prev = -1.0;
    for (int i = 0; i <= 10000; ++i) {
        const double v = cdf.eval(4.0 * i / 10000.0);
        REQUIRE(v >= prev - 1e-12);
        REQUIRE(v <= 1.0 + 1e-12);
        prev = v;
    }
}

TEST_CASE("step-like data keeps a nonnegative density and no overshoot", "[cdf]")
{
    EigCountEstimate counts;
    counts.interval = {0.0, 4.0};
    counts.xi = {0.0, 1.0, 2.0, 3.0, 4.0};
    counts.eta = {0.0, 0.0, 0.0, 100.0, 100.0};
    const SpectralCDF cdf = fit_cdf(counts, 100, counts.interval);
    for (int i = 0; i <= 10000; ++i) {
        const double z = 4.0 * i / 10000.0;
        REQUIRE(cdf.deriv(z) >= 0.0);
        REQUIRE(cdf.eval(z) <= 1.0 + 1e-12);
    }
    // leftmost preimage on the flat spans
    REQUIRE(cdf.inverse(0.0) == 0.0);
    REQUIRE(cdf.inverse(1.0) == 3.0);
}

TEST_CASE("forward-inverse identity on a generic fitted cdf", "[cdf]")
{
    const auto& fx = testutil::gnp500();
    const SpectralCDF& cdf = fx.cdf;
    // y-space identity on a grid that avoids flat spans
    for (int i = 1; i < 101; ++i) {
        const double y = static_cast<double>(i) / 101.0;
        const double z = cdf.inverse(y);
        if (cdf.deriv(z) <= 1e-8) continue;
        REQUIRE(cdf.eval(z) == Approx(y).margin(1e-10));
    }
    // z-space identity where the density is clearly positive
    for (int i = 0; i <= 400; ++i) {
        const double z = cdf.lo() + (cdf.hi() - cdf.lo()) * i / 400.0;
        if (cdf.deriv(z) < 1e-4) continue;
        const double back = cdf.inverse(cdf.eval(z));
        REQUIRE(back == Approx(z).margin(1e-10));
    }
}

TEST_CASE("analytic density integrates to one", "[cdf]")
{
    const auto& fx = testutil::gnp500();
    const SpectralCDF& cdf = fx.cdf;
    const std::size_t N = 100000;
    const double h = (cdf.hi() - cdf.lo()) / static_cast<double>(N);
    double acc = 0.5 * (cdf.deriv(cdf.lo()) + cdf.deriv(cdf.hi()));
    for (std::size_t i = 1; i < N; ++i)
        acc += cdf.deriv(cdf.lo() + h * static_cast<double>(i));
    REQUIRE(acc * h == Approx(1.0).margin(1e-6));
}

TEST_CASE("hutchinson probes are unbiased at desk scale", "[cdf]")
{
    // exact step filter through the dense oracle, mean over many probes
    const std::size_t n = 40;
    const auto dense = testutil::random_sym_dense(n, 3);
    const auto eig = dense_sym_eig(dense, n);
    const double cut = eig.eigenvalues[n / 2];
    std::vector<double> theta(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                if (eig.eigenvalues[k] <= cut) s += eig.vec(i, k) * eig.vec(j, k);
            theta[i * n + j] = s;
        }
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += theta[i * n + i];

    std::mt19937_64 rng(99);
    std::normal_distribution<double> normal;
    const std::size_t probes = 10000;
    double mean = 0.0, msq = 0.0;
    for (std::size_t p = 0; p < probes; ++p) {
        Vector x(n);
        for (double& v : x) v = normal(rng);
        const Vector tx = testutil::dense_matvec(theta, n, x);
        double q = 0.0;
        for (std::size_t i = 0; i < n; ++i) q += x[i] * tx[i];
        mean += q;
        msq += q * q;
    }
    mean /= static_cast<double>(probes);
    const double var = msq / static_cast<double>(probes) - mean * mean;
    const double se = std::sqrt(var / static_cast<double>(probes));
    REQUIRE(std::abs(mean - trace) <= 3.0 * se);
}

TEST_CASE("estimated cdf tracks the true staircase", "[cdf]")
{
    const auto& fx = testutil::gnp500();
    const Vector& lam = fx.eig.eigenvalues;
    double worst = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double z = fx.interval.lo + fx.interval.width() * i / 2000.0;
        const double truth =
            static_cast<double>(std::upper_bound(lam.begin(), lam.end(), z) - lam.begin()) /
            static_cast<double>(lam.size());
        worst = std::max(worst, std::abs(fx.cdf.eval(z) - truth));
    }
    REQUIRE(worst <= 0.05);
}

TEST_CASE("cdf json round trip preserves evaluation", "[cdf]")
{
    const auto& fx = testutil::gnp500();
    const auto dumped = fx.cdf.to_json().dump();
    const SpectralCDF back = SpectralCDF::from_json(nlohmann::json::parse(dumped));
    for (int i = 0; i <= 257; ++i) {
        const double z = fx.cdf.lo() + (fx.cdf.hi() - fx.cdf.lo()) * i / 257.0;
        REQUIRE(back.eval(z) == fx.cdf.eval(z));
    }
}

TEST_CASE("evaluation outside the domain is rejected", "[cdf]")
{
    const SpectralCDF cdf = linear_cdf(0.0, 1.0);
    REQUIRE_THROWS_AS(cdf.eval(-0.5), std::domain_error);
    REQUIRE_THROWS_AS(cdf.eval(1.5), std::domain_error);
    REQUIRE_THROWS_AS(cdf.inverse(1.5), std::domain_error);
    REQUIRE_THROWS_AS(cdf.inverse(-0.5), std::domain_error);
}
