#pragma once

// Multisymmetric machinery over an m x n variable matrix: the column action
// of S_n, the symmetrization operator, elementary multisymmetric polynomials
// e_alpha, and the canonical decomposition of a multisymmetric polynomial as
// a polynomial in the e_alpha (with invariant scalars passing through). The
// decomposition solves an exact linear system per row-multidegree component;
// free coordinates are pinned to zero, so the answer is canonical, and the
// round-trip through expand_in_matrix_vars is checked before returning.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubsym/error.hpp"
#include "cubsym/linalg.hpp"
#include "cubsym/polynomial.hpp"

namespace cubsym {

// A permutation of the matrix columns, acting on variables by
// x_{i,j} -> x_{i,sigma(j)}.
class ColumnAction {
   public:
    explicit ColumnAction(std::vector<unsigned> image)
        : image_(std::move(image)) {
        std::vector<bool> seen(image_.size(), false);
        for (unsigned v : image_) {
            if (v >= image_.size() || seen[v])
                throw UsageError("column action is not a permutation");
            seen[v] = true;
        }
    }

    static ColumnAction identity(unsigned n) {
        std::vector<unsigned> img(n);
        std::iota(img.begin(), img.end(), 0u);
        return ColumnAction(std::move(img));
    }

    static ColumnAction transposition(unsigned n, unsigned a, unsigned b) {
        auto act = identity(n);
        std::swap(act.image_[a], act.image_[b]);
        return act;
    }

    // All of S_n in lexicographic order of the image vector.
    static std::vector<ColumnAction> all(unsigned n) {
        std::vector<unsigned> img(n);
        std::iota(img.begin(), img.end(), 0u);
        std::vector<ColumnAction> out;
        do {
            out.push_back(ColumnAction(img));
        } while (std::next_permutation(img.begin(), img.end()));
        return out;
    }

    unsigned degree() const { return static_cast<unsigned>(image_.size()); }
    unsigned image(unsigned j) const { return image_.at(j); }
    bool is_identity() const {
        for (unsigned j = 0; j < degree(); ++j)
            if (image_[j] != j) return false;
        return true;
    }

    // Cycle notation with 1-based columns, e.g. "(1 2)"; "id" if trivial.
    std::string to_string() const {
        if (is_identity()) return "id";
        std::string s;
        std::vector<bool> done(degree(), false);
        for (unsigned start = 0; start < degree(); ++start) {
            if (done[start] || image_[start] == start) continue;
            s += "(" + std::to_string(start + 1);
            done[start] = true;
            for (unsigned j = image_[start]; j != start; j = image_[j]) {
                s += " " + std::to_string(j + 1);
                done[j] = true;
            }
            s += ")";
        }
        return s;
    }

    friend bool operator==(const ColumnAction&, const ColumnAction&) = default;

   private:
    std::vector<unsigned> image_;
};

// sigma(p): permutes matrix columns, fixes invariant variables.
inline Polynomial apply_permutation(const Polynomial& p,
                                    const ColumnAction& sigma) {
    const VarTablePtr& t = p.table();
    if (!t || !t->has_layout())
        throw UsageError("apply_permutation needs a matrix variable table");
    if (sigma.degree() != t->cols())
        throw UsageError("column action degree does not match table");
    Polynomial out = Polynomial::zero(t);
    for (const auto& [m, c] : p.terms()) {
        Monomial im(t->size());
        for (unsigned i = 0; i < m.size(); ++i) {
            if (!m.e[i]) continue;
            int r = t->var_row(i);
            if (r < 0) {
                im.e[i] += m.e[i];
            } else {
                unsigned j = static_cast<unsigned>(t->var_col(i));
                im.e[t->matrix_var(static_cast<unsigned>(r), sigma.image(j))] +=
                    m.e[i];
            }
        }
        out += Polynomial::term(t, std::move(im), c);
    }
    return out;
}

// S(p) = (1/n!) * sum over all sigma in S_n of sigma(p).
inline Polynomial symmetrize(const Polynomial& p) {
    const VarTablePtr& t = p.table();
    if (!t || !t->has_layout())
        throw UsageError("symmetrize needs a matrix variable table");
    Polynomial sum = Polynomial::zero(t);
    unsigned count = 0;
    for (const ColumnAction& sigma : ColumnAction::all(t->cols())) {
        sum += apply_permutation(p, sigma);
        ++count;
    }
    return Rational(Integer(1), Integer(count)) * sum;
}

// The first adjacent transposition that moves p, if any. Adjacent
// transpositions generate S_n, so invariance under all of them is
// invariance under the full group.
inline std::optional<ColumnAction> symmetry_witness(const Polynomial& p) {
    const VarTablePtr& t = p.table();
    if (!t || !t->has_layout())
        throw UsageError("symmetry check needs a matrix variable table");
    for (unsigned k = 0; k + 1 < t->cols(); ++k) {
        ColumnAction sigma = ColumnAction::transposition(t->cols(), k, k + 1);
        if (apply_permutation(p, sigma) != p) return sigma;
    }
    return std::nullopt;
}

inline bool is_multisymmetric(const Polynomial& p) {
    return !symmetry_witness(p).has_value();
}

// x^alpha: alpha_1 variables from row 1 in columns 1..alpha_1, then alpha_2
// from row 2 in the next columns, and so on; requires |alpha| <= n.
inline Polynomial monomial_x_alpha(const VarTablePtr& t,
                                   const MultiIndex& alpha) {
    if (!t->has_layout() || alpha.size() != t->rows())
        throw UsageError("multiindex length does not match matrix rows");
    if (weight(alpha) > t->cols())
        throw UsageError("multiindex weight exceeds column count");
    Monomial m(t->size());
    unsigned col = 0;
    for (unsigned r = 0; r < t->rows(); ++r)
        for (unsigned k = 0; k < alpha[r]; ++k) m.e[t->matrix_var(r, col++)] = 1;
    return Polynomial::term(t, std::move(m), Rational(1));
}

struct ElementaryBasisElement {
    MultiIndex alpha;
    std::string name;       // canonical E-variable name
    Polynomial expansion;   // in the matrix variables
};

// e_alpha: the orbit sum of x^alpha under the column action; all
// coefficients 1, term count n! / (prod alpha_i! * (n - |alpha|)!).
inline ElementaryBasisElement elementary(const VarTablePtr& t,
                                         const MultiIndex& alpha) {
    Polynomial x = monomial_x_alpha(t, alpha);
    Integer stab(1);
    for (unsigned a : alpha)
        for (unsigned k = 2; k <= a; ++k) stab *= Integer(k);
    for (unsigned k = 2; k <= t->cols() - weight(alpha); ++k)
        stab *= Integer(k);
    Integer nfact(1);
    for (unsigned k = 2; k <= t->cols(); ++k) nfact *= Integer(k);
    Polynomial e = Rational(nfact / stab) * symmetrize(x);
    return {alpha, elementary_name(alpha), std::move(e)};
}

// All e_alpha with 0 < |alpha| <= n in canonical enumeration order.
inline std::vector<ElementaryBasisElement> enumerate_elementary(
    const VarTablePtr& t) {
    if (!t->has_layout())
        throw UsageError("elementary enumeration needs a matrix table");
    std::vector<ElementaryBasisElement> out;
    for (const MultiIndex& a : elementary_index_order(t->rows(), t->cols()))
        out.push_back(elementary(t, a));
    return out;
}

// Substitutes every E-variable by its expansion in the matrix variables.
// The input may mention only E-variables and invariant scalars.
inline Polynomial expand_in_matrix_vars(const Polynomial& q) {
    const VarTablePtr& t = q.table();
    if (!t || !t->has_layout() || t->elementary_vars().empty())
        throw UsageError("expansion needs a table with E-variables");
    for (const auto& [m, c] : q.terms())
        for (unsigned i = 0; i < m.size(); ++i)
            if (m.e[i] && t->is_matrix_var(i))
                throw UsageError("expansion input mentions matrix variable " +
                                 t->name(i));
    std::map<unsigned, Polynomial> bind;
    for (unsigned v : t->elementary_vars())
        bind.emplace(v, elementary(t, t->elementary_index(v)).expansion);
    return q.substitute(bind);
}

namespace detail {

// All E-monomials whose multiindices sum (with multiplicity) to deg,
// descending under grevlex over the canonical E-ranking.
inline std::vector<Monomial> decomposition_candidates(
    const VarTablePtr& t, const std::vector<unsigned>& deg) {
    const auto& evars = t->elementary_vars();
    std::vector<Monomial> out;
    Monomial cur(t->size());
    std::vector<unsigned> remaining = deg;
    auto rec = [&](auto&& self, unsigned pos) -> void {
        bool empty = std::all_of(remaining.begin(), remaining.end(),
                                 [](unsigned r) { return r == 0; });
        if (empty) {
            out.push_back(cur);
            return;
        }
        if (pos == evars.size()) return;
        const MultiIndex& alpha = t->elementary_index(evars[pos]);
        unsigned max_mult = 0;
        for (bool fits = true; fits;) {
            ++max_mult;
            for (unsigned r = 0; r < alpha.size(); ++r)
                if (alpha[r] * max_mult > remaining[r]) fits = false;
        }
        --max_mult;
        for (unsigned mult = 0; mult <= max_mult; ++mult) {
            cur.e[evars[pos]] = mult;
            for (unsigned r = 0; r < alpha.size(); ++r)
                remaining[r] -= alpha[r] * mult;
            self(self, pos + 1);
            for (unsigned r = 0; r < alpha.size(); ++r)
                remaining[r] += alpha[r] * mult;
        }
        cur.e[evars[pos]] = 0;
    };
    rec(rec, 0);
    MonomialOrder order =
        MonomialOrder::grevlex(std::vector<unsigned>(evars.begin(), evars.end()));
    std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) {
        return order.greater(a, b);
    });
    return out;
}

}  // namespace detail

// Canonical representation of a multisymmetric polynomial in the
// E-variables. Invariant scalars pass through unchanged. Throws
// SymmetryError (with a witnessing permutation) if p is not multisymmetric
// and UsageError if p already mentions E-variables.
inline Polynomial decompose(const Polynomial& p) {
    const VarTablePtr& t = p.table();
    if (!t || !t->has_layout() || t->elementary_vars().empty())
        throw UsageError("decomposition needs a table with E-variables");
    for (const auto& [m, c] : p.terms())
        for (unsigned v : t->elementary_vars())
            if (m.e[v])
                throw UsageError("decomposition input mentions E-variable " +
                                 t->name(v));
    if (auto w = symmetry_witness(p)) {
        throw SymmetryError("polynomial is not multisymmetric: permutation " +
                            w->to_string() + " changes it");
    }

    // Expansion of each E-variable, computed once.
    std::map<unsigned, Polynomial> evar_expansion;
    for (unsigned v : t->elementary_vars())
        evar_expansion.emplace(v, elementary(t, t->elementary_index(v)).expansion);

    Polynomial result = Polynomial::zero(t);
    for (const auto& [deg, comp] : p.homogeneous_components()) {
        // Slice the component by the exponents of invariant variables; each
        // slice is itself multisymmetric in the matrix variables.
        std::map<Monomial, Polynomial> slices;
        for (const auto& [m, c] : comp.terms()) {
            Monomial inv_part(t->size());
            Monomial mat_part(t->size());
            for (unsigned i = 0; i < m.size(); ++i) {
                if (t->is_matrix_var(i))
                    mat_part.e[i] = m.e[i];
                else
                    inv_part.e[i] = m.e[i];
            }
            auto it = slices.find(inv_part);
            if (it == slices.end())
                it = slices.emplace(inv_part, Polynomial::zero(t)).first;
            it->second += Polynomial::term(t, std::move(mat_part), c);
        }
        for (const auto& [inv_part, slice] : slices) {
            std::vector<Monomial> candidates =
                detail::decomposition_candidates(t, deg);
            // Exact linear system: columns are candidate E-monomials,
            // rows are matrix-variable monomials.
            std::vector<Polynomial> expansions;
            expansions.reserve(candidates.size());
            std::map<Monomial, unsigned> row_of;
            auto intern = [&](const Monomial& m) {
                return row_of.emplace(m, static_cast<unsigned>(row_of.size()))
                    .first->second;
            };
            for (const Monomial& cand : candidates) {
                Polynomial prod = Polynomial::constant(t, Rational(1));
                for (unsigned v : t->elementary_vars())
                    if (cand.e[v]) prod = prod * pow(evar_expansion.at(v), cand.e[v]);
                for (const auto& [m, c] : prod.terms()) intern(m);
                expansions.push_back(std::move(prod));
            }
            for (const auto& [m, c] : slice.terms()) intern(m);
            Matrix a(row_of.size(),
                     std::vector<Rational>(candidates.size(), Rational(0)));
            std::vector<Rational> b(row_of.size(), Rational(0));
            for (unsigned j = 0; j < candidates.size(); ++j)
                for (const auto& [m, c] : expansions[j].terms())
                    a[row_of.at(m)][j] = c;
            for (const auto& [m, c] : slice.terms()) b[row_of.at(m)] = c;
            LinearSolution sol = solve_canonical(std::move(a), b);
            if (!sol.consistent)
                throw Error(
                    "decomposition failed: component is outside the span of "
                    "the E-monomials");
            for (unsigned j = 0; j < candidates.size(); ++j)
                if (!sol.values[j].is_zero())
                    result += Polynomial::term(t, candidates[j], sol.values[j]) *
                              Polynomial::term(t, inv_part, Rational(1));
        }
    }
    if (expand_in_matrix_vars(result) != p)
        throw Error("decomposition round-trip failed");
    return result;
}

}  // namespace cubsym
