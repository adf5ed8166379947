#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace specpoly;
using Catch::Approx;

TEST_CASE("matvec on the identity returns x", "[sparse]")
{
    const auto I = SparseSymMatrix::identity(5);
    const Vector x{1.0, -2.0, 3.5, 0.0, 7.0};
    REQUIRE(I.matvec(x) == x);
}

TEST_CASE("matvec row sums of a 2x2 stencil", "[sparse]")
{
    const auto a = SparseSymMatrix::from_triplets(
        2, {{0, 0, 2.0}, {0, 1, -1.0}, {1, 0, -1.0}, {1, 1, 2.0}});
    const Vector y = a.matvec({1.0, 1.0});
    REQUIRE(y[0] == Approx(1.0));
    REQUIRE(y[1] == Approx(1.0));
}

TEST_CASE("matvec matches a dense reference product", "[sparse]")
{
    const std::size_t n = 50;
    const auto dense = testutil::random_sym_dense(n, 42);
    const auto a = testutil::sparse_from_dense(dense, n);

    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal;
    Vector x(n);
    for (double& v : x) v = normal(rng);

    const Vector ref = testutil::dense_matvec(dense, n, x);
    REQUIRE(testutil::rel_diff(a.matvec(x), ref) < 1e-14);
}

TEST_CASE("matvec against unit vectors reproduces dense columns", "[sparse]")
{
    const std::size_t n = 12;
    const auto dense = testutil::random_sym_dense(n, 3);
    const auto a = testutil::sparse_from_dense(dense, n);
    for (std::size_t j = 0; j < n; ++j) {
        Vector ej(n, 0.0);
        ej[j] = 1.0;
        const Vector col = a.matvec(ej);
        for (std::size_t i = 0; i < n; ++i) REQUIRE(col[i] == dense[i * n + j]);
    }
}

TEST_CASE("matvec rejects dimension mismatch", "[sparse]")
{
    const auto I = SparseSymMatrix::identity(4);
    REQUIRE_THROWS_AS(I.matvec(Vector(3, 1.0)), std::invalid_argument);
}

TEST_CASE("CSR structural invariants after assembly", "[sparse]")
{
    // unsorted triplets with duplicates and an asymmetric-magnitude pair
    const auto a = SparseSymMatrix::from_triplets(
        4, {{2, 1, 0.5}, {1, 2, 0.5}, {0, 0, 1.0}, {3, 0, -2.0}, {0, 3, -2.0}, {0, 0, 0.5}});
    REQUIRE(a.row_ptr().size() == 5);
    REQUIRE(a.row_ptr().back() == a.nnz());
    for (std::size_t i = 0; i < a.n(); ++i) {
        REQUIRE(a.row_ptr()[i] <= a.row_ptr()[i + 1]);
        for (std::size_t k = a.row_ptr()[i] + 1; k < a.row_ptr()[i + 1]; ++k)
            REQUIRE(a.col_idx()[k - 1] < a.col_idx()[k]);
    }
    // duplicate diagonal summed
    const auto dense = a.to_dense();
    REQUIRE(dense[0] == 1.5);
    // stored values symmetric, exactly
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) REQUIRE(dense[i * 4 + j] == dense[j * 4 + i]);
}

TEST_CASE("input symmetry is tracked", "[sparse]")
{
    const auto sym = SparseSymMatrix::from_triplets(2, {{0, 1, 1.0}, {1, 0, 1.0}});
    REQUIRE(sym.input_was_symmetric());
    const auto asym = SparseSymMatrix::from_triplets(2, {{0, 1, 1.0}});
    REQUIRE_FALSE(asym.input_was_symmetric());
    // symmetrized assembly of the same data
    const auto half = symmetrized_from_triplets(2, {{0, 1, 1.0}});
    REQUIRE(half.input_was_symmetric());
    REQUIRE(half.to_dense()[1] == 0.5);
}

TEST_CASE("gershgorin bound dominates the spectral radius", "[sparse]")
{
    const auto a = SparseSymMatrix::from_triplets(
        2, {{0, 0, 2.0}, {0, 1, -1.0}, {1, 0, -1.0}, {1, 1, 2.0}});
    REQUIRE(a.gershgorin_bound() == Approx(3.0)); // eigenvalues 1 and 3
}

TEST_CASE("scaled copies multiply values only", "[sparse]")
{
    const auto a = SparseSymMatrix::from_triplets(2, {{0, 1, 2.0}, {1, 0, 2.0}});
    const auto b = a.scaled(0.25);
    REQUIRE(b.nnz() == a.nnz());
    REQUIRE(b.values()[0] == 0.5);
}

TEST_CASE("counting wrapper tallies matvecs", "[sparse]")
{
    const auto I = SparseSymMatrix::identity(3);
    CountingMatrix c(I);
    const Vector x(3, 1.0);
    (void)c.matvec(x);
    (void)c.matvec(x);
    REQUIRE(c.count() == 2);
    c.reset();
    REQUIRE(c.count() == 0);
}
