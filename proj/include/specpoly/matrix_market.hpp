#ifndef SPECPOLY_MATRIX_MARKET_HPP
#define SPECPOLY_MATRIX_MARKET_HPP

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "specpoly/sparse.hpp"

namespace specpoly {

/// Load a Matrix Market coordinate file (real, general or symmetric).
///
/// Symmetric files store one triangle; the mirror entries are supplied
/// automatically. With symmetrize=true a general file is turned into
/// (A + A^T)/2; with symmetrize=false an asymmetric general file is an error.
inline SparseSymMatrix load_matrix_market(const std::string& path, bool symmetrize = false)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path);

    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error(path + ": empty file");
    std::istringstream hs(header);
    std::string banner, object, format, field, symmetry;
    hs >> banner >> object >> format >> field >> symmetry;
    for (auto* s : {&object, &format, &field, &symmetry})
        for (char& c : *s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

    if (banner != "%%MatrixMarket" || object != "matrix")
        throw std::runtime_error(path + ": not a MatrixMarket matrix file");
    if (format != "coordinate")
        throw std::runtime_error(path + ": only coordinate format is supported");
    if (field != "real" && field != "integer")
        throw std::runtime_error(path + ": only real-valued matrices are supported");
    if (symmetry != "general" && symmetry != "symmetric")
        throw std::runtime_error(path + ": only general or symmetric matrices are supported");
    const bool sym_header = symmetry == "symmetric";

    std::string line;
    std::size_t rows = 0, cols = 0, entries = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '%') continue;
        std::istringstream ls(line);
        if (!(ls >> rows >> cols >> entries))
            throw std::runtime_error(path + ": malformed size line");
        break;
    }
    if (rows == 0 || rows != cols)
        throw std::runtime_error(path + ": matrix must be square and nonempty");

    std::vector<Triplet> trip;
    trip.reserve(sym_header ? 2 * entries : entries);
    std::size_t seen = 0;
    while (seen < entries && std::getline(in, line)) {
        if (line.empty() || line[0] == '%') continue;
        std::istringstream ls(line);
        std::size_t i = 0, j = 0;
        double v = 0.0;
        if (!(ls >> i >> j >> v))
            throw std::runtime_error(path + ": malformed entry line: " + line);
        if (i < 1 || i > rows || j < 1 || j > cols)
            throw std::runtime_error(path + ": entry index out of range: " + line);
        ++seen;
        trip.push_back({i - 1, j - 1, v});
        if (sym_header && i != j) trip.push_back({j - 1, i - 1, v});
    }
    if (seen != entries)
        throw std::runtime_error(path + ": fewer entries than the size line promises");

    if (!sym_header && symmetrize)
        return symmetrized_from_triplets(rows, std::move(trip));

    SparseSymMatrix m = SparseSymMatrix::from_triplets(rows, std::move(trip));
    if (!m.input_was_symmetric())
        throw std::runtime_error(path + ": matrix is not symmetric (pass symmetrize to use (A+A^T)/2)");
    return m;
}

/// Write the lower triangle as a 1-indexed `coordinate real symmetric` file.
inline void save_matrix_market(const SparseSymMatrix& a, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write matrix file: " + path);
    std::size_t count = 0;
    for (std::size_t i = 0; i < a.n(); ++i)
        for (std::size_t k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k)
            if (a.col_idx()[k] <= i) ++count;
    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    out << a.n() << " " << a.n() << " " << count << "\n";
    char buf[64];
    for (std::size_t i = 0; i < a.n(); ++i) {
        for (std::size_t k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k) {
            const std::size_t j = a.col_idx()[k];
            if (j > i) continue;
            std::snprintf(buf, sizeof buf, "%zu %zu %.17g\n", i + 1, j + 1, a.values()[k]);
            out << buf;
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace specpoly

#endif
