#pragma once

// Exact dense linear algebra over the rationals, just enough for canonical
// decomposition: reduced row echelon form, rank, and solving A x = b with
// every free variable pinned to zero (so solutions are unique functions of
// the input).

#include <utility>
#include <vector>

#include "cubsym/rational.hpp"

namespace cubsym {

using Matrix = std::vector<std::vector<Rational>>;

// In-place reduced row echelon form; returns the pivot column of each pivot
// row, in order. Pivot choice is the first row with a nonzero entry, so the
// result is deterministic.
inline std::vector<unsigned> rref(Matrix& a) {
    std::vector<unsigned> pivots;
    if (a.empty()) return pivots;
    const unsigned rows = static_cast<unsigned>(a.size());
    const unsigned cols = static_cast<unsigned>(a[0].size());
    unsigned row = 0;
    for (unsigned col = 0; col < cols && row < rows; ++col) {
        unsigned pivot = row;
        while (pivot < rows && a[pivot][col].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[row], a[pivot]);
        Rational inv = a[row][col].inverse();
        for (unsigned j = col; j < cols; ++j) a[row][j] *= inv;
        for (unsigned i = 0; i < rows; ++i) {
            if (i == row || a[i][col].is_zero()) continue;
            Rational f = a[i][col];
            for (unsigned j = col; j < cols; ++j)
                a[i][j] -= f * a[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline unsigned rank(Matrix a) { return static_cast<unsigned>(rref(a).size()); }

struct LinearSolution {
    bool consistent = false;
    std::vector<Rational> values;  // one per column of A
    unsigned rank = 0;
};

// Canonical solution of A x = b: free variables are zero, so the result is
// the unique solution supported on pivot columns.
inline LinearSolution solve_canonical(Matrix a, const std::vector<Rational>& b) {
    const unsigned rows = static_cast<unsigned>(a.size());
    const unsigned cols = rows ? static_cast<unsigned>(a[0].size()) : 0;
    for (unsigned i = 0; i < rows; ++i) a[i].push_back(b[i]);
    std::vector<unsigned> pivots = rref(a);
    LinearSolution sol;
    sol.values.assign(cols, Rational(0));
    // A pivot in the augmented column marks inconsistency.
    for (unsigned i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == cols) return sol;
    }
    sol.consistent = true;
    sol.rank = static_cast<unsigned>(pivots.size());
    for (unsigned i = 0; i < pivots.size(); ++i)
        sol.values[pivots[i]] = a[i][cols];
    return sol;
}

}  // namespace cubsym
