#ifndef SPECPOLY_SPARSE_HPP
#define SPECPOLY_SPARSE_HPP

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "specpoly/common.hpp"

namespace specpoly {

struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
};

/// Real symmetric sparse matrix in CSR format.
///
/// Construction guarantees: row_ptr has n+1 nondecreasing entries with
/// row_ptr[n] == nnz, column indices are sorted and unique within each row,
/// and every stored (i,j,v) has a stored mirror (j,i,v) with the identical
/// floating-point value. Immutable after construction; matvec is reentrant
/// and safe to call concurrently on a shared matrix.
class SparseSymMatrix {
public:
    SparseSymMatrix() = default;

    std::size_t n() const { return n_; }
    std::size_t nnz() const { return values_.size(); }

    const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
    const std::vector<std::size_t>& col_idx() const { return col_idx_; }
    const Vector& values() const { return values_; }

    /// Assemble from triplets. Duplicate (i,j) entries are summed. Values are
    /// accumulated once per unordered pair {i,j} and the pair mean is written
    /// to both (i,j) and (j,i), so stored symmetry is exact. Whether the raw
    /// input itself was symmetric is recorded (see input_was_symmetric).
    static SparseSymMatrix from_triplets(std::size_t n, std::vector<Triplet> entries)
    {
        for (const Triplet& t : entries) {
            if (t.row >= n || t.col >= n)
                throw std::invalid_argument("SparseSymMatrix: triplet index out of range");
        }
        std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
            const auto ka = std::minmax(a.row, a.col);
            const auto kb = std::minmax(b.row, b.col);
            return ka < kb;
        });

        SparseSymMatrix m;
        m.n_ = n;
        std::vector<Triplet> full;
        full.reserve(2 * entries.size());
        for (std::size_t i = 0; i < entries.size();) {
            const auto key = std::minmax(entries[i].row, entries[i].col);
            double upper = 0.0, lower = 0.0;
            std::size_t j = i;
            for (; j < entries.size() && std::minmax(entries[j].row, entries[j].col) == key; ++j) {
                if (entries[j].row <= entries[j].col)
                    upper += entries[j].value;
                else
                    lower += entries[j].value;
            }
            i = j;
            if (key.first == key.second) {
                const double v = upper + lower;
                if (v != 0.0) full.push_back({key.first, key.first, v});
                continue;
            }
            if (upper != lower) m.input_symmetric_ = false;
            const double mean = 0.5 * (upper + lower);
            if (mean != 0.0) {
                full.push_back({key.first, key.second, mean});
                full.push_back({key.second, key.first, mean});
            }
        }
        std::sort(full.begin(), full.end(), [](const Triplet& a, const Triplet& b) {
            return std::tie(a.row, a.col) < std::tie(b.row, b.col);
        });
        m.row_ptr_.assign(n + 1, 0);
        m.col_idx_.resize(full.size());
        m.values_.resize(full.size());
        for (std::size_t k = 0; k < full.size(); ++k) {
            m.row_ptr_[full[k].row + 1]++;
            m.col_idx_[k] = full[k].col;
            m.values_[k] = full[k].value;
        }
        for (std::size_t r = 0; r < n; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
        return m;
    }

    static SparseSymMatrix diagonal(const Vector& d)
    {
        std::vector<Triplet> t;
        t.reserve(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) t.push_back({i, i, d[i]});
        return from_triplets(d.size(), std::move(t));
    }

    static SparseSymMatrix identity(std::size_t n) { return diagonal(Vector(n, 1.0)); }

    Vector matvec(const Vector& x) const
    {
        if (x.size() != n_) throw std::invalid_argument("matvec: dimension mismatch");
        Vector y(n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) {
            double s = 0.0;
            for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
                s += values_[k] * x[col_idx_[k]];
            y[i] = s;
        }
        return y;
    }

    SparseSymMatrix scaled(double s) const
    {
        SparseSymMatrix out = *this;
        for (double& v : out.values_) v *= s;
        return out;
    }

    /// Dense row-major copy; desk-scale verification only.
    std::vector<double> to_dense() const
    {
        std::vector<double> d(n_ * n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
                d[i * n_ + col_idx_[k]] = values_[k];
        return d;
    }

    /// Gershgorin bound on the spectral radius: max_i sum_j |a_ij|.
    double gershgorin_bound() const
    {
        double bound = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            double s = 0.0;
            for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
                s += std::abs(values_[k]);
            bound = std::max(bound, s);
        }
        return bound;
    }

    /// True when the raw triplet input already satisfied a_ij == a_ji exactly
    /// for every pair. Readers use this to reject asymmetric files.
    bool input_was_symmetric() const { return input_symmetric_; }

private:
    std::size_t n_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::size_t> col_idx_;
    Vector values_;
    bool input_symmetric_ = true;
};

/// (A + A^T)/2 assembled from raw, possibly asymmetric triplets.
inline SparseSymMatrix symmetrized_from_triplets(std::size_t n, std::vector<Triplet> entries)
{
    std::vector<Triplet> sym;
    sym.reserve(2 * entries.size());
    for (const Triplet& t : entries) {
        if (t.row == t.col) {
            sym.push_back(t);
        } else {
            sym.push_back({t.row, t.col, 0.5 * t.value});
            sym.push_back({t.col, t.row, 0.5 * t.value});
        }
    }
    return SparseSymMatrix::from_triplets(n, std::move(sym));
}

/// Matvec-counting wrapper; shares the underlying matrix by reference.
class CountingMatrix {
public:
    explicit CountingMatrix(const SparseSymMatrix& a) : a_(&a) {}

    std::size_t n() const { return a_->n(); }
    Vector matvec(const Vector& x) const
    {
        ++count_;
        return a_->matvec(x);
    }
    double gershgorin_bound() const { return a_->gershgorin_bound(); }

    long count() const { return count_; }
    void reset() { count_ = 0; }

private:
    const SparseSymMatrix* a_;
    mutable long count_ = 0;
};

} // namespace specpoly

#endif
