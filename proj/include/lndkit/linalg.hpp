#pragma once

#include "lndkit/rational.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace lndkit {

// Sparse vector as (column, value) pairs sorted by column, no zero values.
using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

// Linear equations sum_j a_ij c_j = b_i over the rationals.
struct LinearSystem {
    std::size_t ncols = 0;
    std::vector<SparseVec> rows;
    std::vector<Rational> rhs;  // may be shorter than rows; missing entries are 0

    void add_row(SparseVec row, Rational b = 0);
};

// Reduced row echelon form built with fraction-free integer elimination.
class RowEchelon {
public:
    explicit RowEchelon(std::size_t ncols) : ncols_(ncols) {}

    // Returns false when the row was dependent on the rows already present.
    bool insert(const SparseVec& row);
    std::size_t rank() const { return rows_.size(); }
    std::size_t ncols() const { return ncols_; }

    // Rows of the reduced echelon form, pivot entry 1, sorted by pivot column.
    std::vector<SparseVec> reduced() const;

private:
    using IntRow = std::vector<std::pair<std::size_t, Integer>>;
    std::size_t ncols_;
    std::vector<IntRow> rows_;
    std::vector<std::ptrdiff_t> pivot_row_;  // column -> row index or -1
};

// Canonical kernel basis: one vector per free column (in increasing column
// order), with a 1 in that column and zeros in the other free columns.
std::vector<SparseVec> nullspace(const LinearSystem& system);

// A solution with all free columns zero, or nullopt if inconsistent.
std::optional<std::vector<Rational>> solve(const LinearSystem& system);

}  // namespace lndkit
