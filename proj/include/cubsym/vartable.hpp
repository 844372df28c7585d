#pragma once

// Variable tables. A VarTable fixes the universe of variables a polynomial
// can mention: an optional m x n matrix block (row-major variable layout),
// invariant scalars, and optionally the symmetrized power-product variables
// ("E-variables"), one per multiindex of weight 1..n. Tables are immutable
// and shared by pointer; two tables are interchangeable iff their contents
// are equal.

#include <algorithm>
#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cubsym/error.hpp"

namespace cubsym {

// A multiindex [a1, ..., am]: one degree per matrix row. Its weight
// a1 + ... + am must stay <= n wherever a column count n applies.
using MultiIndex = std::vector<unsigned>;

inline unsigned weight(const MultiIndex& alpha) {
    unsigned w = 0;
    for (unsigned a : alpha) w += a;
    return w;
}

// Canonical variable name for the symmetrized power product of multiindex
// alpha: digits concatenated ("E10", "E21") when every part is <= 9, the
// bracketed form ("E[10,3]") otherwise.
inline std::string elementary_name(const MultiIndex& alpha) {
    bool small = std::all_of(alpha.begin(), alpha.end(),
                             [](unsigned a) { return a <= 9; });
    std::string s = "E";
    if (small) {
        for (unsigned a : alpha) s += static_cast<char>('0' + a);
        return s;
    }
    s += '[';
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(alpha[i]);
    }
    s += ']';
    return s;
}

// Canonical enumeration of the multiindices with 0 < weight <= n over m
// rows: first the single-row indices (row 1 degrees 1..n, then row 2, ...),
// then the mixed indices sorted ascending by the key (-a1, a2, ..., am).
inline std::vector<MultiIndex> elementary_index_order(unsigned m, unsigned n) {
    if (m == 0 || n == 0) throw UsageError("matrix dimensions must be positive");
    std::vector<MultiIndex> out;
    for (unsigned r = 0; r < m; ++r)
        for (unsigned k = 1; k <= n; ++k) {
            MultiIndex a(m, 0);
            a[r] = k;
            out.push_back(std::move(a));
        }
    std::vector<MultiIndex> mixed;
    // Enumerate all multiindices of weight <= n, keep those touching two or
    // more rows.
    MultiIndex cur(m, 0);
    auto rec = [&](auto&& self, unsigned row, unsigned left) -> void {
        if (row == m) {
            unsigned nonzero = 0;
            for (unsigned a : cur) nonzero += a > 0;
            if (nonzero >= 2) mixed.push_back(cur);
            return;
        }
        for (unsigned a = 0; a <= left; ++a) {
            cur[row] = a;
            self(self, row + 1, left - a);
        }
        cur[row] = 0;
    };
    rec(rec, 0, n);
    std::sort(mixed.begin(), mixed.end(),
              [](const MultiIndex& a, const MultiIndex& b) {
                  if (a[0] != b[0]) return a[0] > b[0];
                  return a < b;
              });
    out.insert(out.end(), mixed.begin(), mixed.end());
    return out;
}

class VarTable {
   public:
    // A flat list of scalar variables, no matrix layout.
    static std::shared_ptr<const VarTable> plain(
        std::vector<std::string> names) {
        auto t = std::shared_ptr<VarTable>(new VarTable);
        for (auto& n : names) t->push_var(std::move(n), -1, -1, false);
        return t;
    }

    // An m x n matrix of variables named base+column ("x1".."x3"), followed
    // by invariant scalars, followed (if with_elementaries) by one
    // E-variable per multiindex in canonical order. Matrix and invariant
    // variables exhaust the table, so the layout is total.
    static std::shared_ptr<const VarTable> matrix(
        std::vector<std::string> row_bases, unsigned cols,
        std::vector<std::string> invariants, bool with_elementaries) {
        if (row_bases.empty() || cols == 0)
            throw UsageError("matrix dimensions must be positive");
        auto t = std::shared_ptr<VarTable>(new VarTable);
        unsigned m = static_cast<unsigned>(row_bases.size());
        t->rows_ = m;
        t->cols_ = cols;
        for (unsigned r = 0; r < m; ++r)
            for (unsigned c = 0; c < cols; ++c)
                t->push_var(row_bases[r] + std::to_string(c + 1),
                            static_cast<int>(r), static_cast<int>(c), false);
        for (auto& n : invariants) t->push_var(std::move(n), -1, -1, true);
        if (with_elementaries) {
            for (MultiIndex& a : elementary_index_order(m, cols)) {
                unsigned idx = t->push_var(elementary_name(a), -1, -1, true);
                t->evar_order_.push_back(idx);
                t->evar_alpha_.emplace(idx, std::move(a));
            }
        }
        return t;
    }

    unsigned size() const { return static_cast<unsigned>(names_.size()); }
    const std::string& name(unsigned i) const { return names_.at(i); }

    std::optional<unsigned> find(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool has_layout() const { return rows_ > 0; }
    unsigned rows() const { return rows_; }
    unsigned cols() const { return cols_; }

    unsigned matrix_var(unsigned r, unsigned c) const {
        if (!has_layout() || r >= rows_ || c >= cols_)
            throw UsageError("matrix position out of range");
        return r * cols_ + c;
    }

    // Row/column of a variable, or -1 for non-matrix variables.
    int var_row(unsigned i) const { return row_.at(i); }
    int var_col(unsigned i) const { return col_.at(i); }
    bool is_matrix_var(unsigned i) const { return row_.at(i) >= 0; }
    bool is_invariant(unsigned i) const { return invariant_.at(i); }

    bool is_elementary(unsigned i) const { return evar_alpha_.count(i) > 0; }
    const MultiIndex& elementary_index(unsigned i) const {
        auto it = evar_alpha_.find(i);
        if (it == evar_alpha_.end())
            throw UsageError("variable " + name(i) + " is not an E-variable");
        return it->second;
    }
    // E-variable indices in canonical enumeration order.
    const std::vector<unsigned>& elementary_vars() const { return evar_order_; }

    std::optional<unsigned> find_elementary(const MultiIndex& alpha) const {
        return find(elementary_name(alpha));
    }

    friend bool operator==(const VarTable& a, const VarTable& b) {
        return a.names_ == b.names_ && a.rows_ == b.rows_ &&
               a.cols_ == b.cols_ && a.invariant_ == b.invariant_ &&
               a.evar_order_ == b.evar_order_;
    }

   private:
    VarTable() = default;

    unsigned push_var(std::string name, int r, int c, bool invariant) {
        if (!valid_name(name)) throw UsageError("invalid variable name: " + name);
        if (index_.count(name)) throw UsageError("duplicate variable: " + name);
        unsigned idx = size();
        index_.emplace(name, idx);
        names_.push_back(std::move(name));
        row_.push_back(r);
        col_.push_back(c);
        invariant_.push_back(invariant);
        return idx;
    }

    static bool valid_name(const std::string& n) {
        if (n.empty()) return false;
        if (!std::isalpha(static_cast<unsigned char>(n[0])) && n[0] != '_')
            return false;
        for (std::size_t i = 1; i < n.size(); ++i) {
            char ch = n[i];
            if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' &&
                ch != '[' && ch != ']' && ch != ',')
                return false;
        }
        return true;
    }

    std::vector<std::string> names_;
    std::unordered_map<std::string, unsigned> index_;
    unsigned rows_ = 0;
    unsigned cols_ = 0;
    std::vector<int> row_;
    std::vector<int> col_;
    std::vector<bool> invariant_;
    std::vector<unsigned> evar_order_;
    std::unordered_map<unsigned, MultiIndex> evar_alpha_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

// Tables must agree in content for polynomials to mix.
inline bool same_table(const VarTablePtr& a, const VarTablePtr& b) {
    return a == b || (a && b && *a == *b);
}

}  // namespace cubsym
