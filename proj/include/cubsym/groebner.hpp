#pragma once

// Buchberger's algorithm with the normal pair-selection strategy, full
// normal-form division, reduced bases, ideal membership, and elimination
// ideals under block orders. Everything is deterministic: divisors are tried
// in list order on the leftmost reducible term, pairs are selected by
// minimal lcm degree with index tie-breaks, and coefficients stay exact. A
// configurable budget caps the number of S-polynomial reductions; exceeding
// it raises BudgetError instead of running unbounded.

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "cubsym/error.hpp"
#include "cubsym/polynomial.hpp"

namespace cubsym {

constexpr long kDefaultReductionBudget = 1000000;

struct Ideal {
    std::vector<Polynomial> generators;
    MonomialOrder order;
    long budget = kDefaultReductionBudget;

    Ideal(std::vector<Polynomial> gens, MonomialOrder ord,
          long budget_ = kDefaultReductionBudget)
        : generators(std::move(gens)), order(std::move(ord)), budget(budget_) {
        if (generators.empty()) throw UsageError("ideal needs generators");
        for (const Polynomial& g : generators) {
            if (g.is_zero()) throw UsageError("zero generator in ideal");
            if (!same_table(g.table(), generators.front().table()))
                throw UsageError("generators over different variable tables");
        }
    }
};

struct GroebnerBasis {
    std::vector<Polynomial> elements;
    MonomialOrder order;
    bool reduced = false;
};

inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g,
                               const MonomialOrder& order) {
    if (f.is_zero() || g.is_zero())
        throw UsageError("s_polynomial of zero polynomial");
    auto [mf, cf] = f.leading(order);
    auto [mg, cg] = g.leading(order);
    Monomial l = lcm(mf, mg);
    Polynomial a =
        Polynomial::term(f.table(), mf.quotient_of(l), cf.inverse());
    Polynomial b =
        Polynomial::term(g.table(), mg.quotient_of(l), cg.inverse());
    return a * f - b * g;
}

// One recorded division step: the reduction subtracted
// coefficient * x^factor * basis[basis_index].
struct ReductionStep {
    std::size_t basis_index;
    Monomial factor;
    Rational coefficient;
};

// Fully reduces p: while some term is divisible by a basis leading term,
// the largest such term is rewritten, trying divisors in list order. The
// remainder has no reducible term and p - remainder lies in the ideal
// generated by the basis. A non-null certificate collects the steps, so
// p = sum(step.coefficient * x^step.factor * basis[step.basis_index]) +
// remainder holds exactly.
inline Polynomial normal_form(const Polynomial& p,
                              const std::vector<Polynomial>& basis,
                              const MonomialOrder& order,
                              std::vector<ReductionStep>* certificate = nullptr) {
    std::vector<std::pair<Monomial, Rational>> lead;
    lead.reserve(basis.size());
    for (const Polynomial& b : basis) {
        if (b.is_zero()) throw UsageError("zero polynomial in basis");
        lead.push_back(b.leading(order));
    }
    Polynomial r = p;
    while (!r.is_zero()) {
        bool step = false;
        for (const auto& [m, c] : r.sorted_terms(order)) {
            for (unsigned i = 0; i < basis.size(); ++i) {
                if (!lead[i].first.divides(m)) continue;
                Monomial factor = lead[i].first.quotient_of(m);
                Rational scale = c / lead[i].second;
                r -= Polynomial::term(r.table(), factor, scale) * basis[i];
                if (certificate) certificate->push_back({i, factor, scale});
                step = true;
                break;
            }
            if (step) break;
        }
        if (!step) break;
    }
    return r;
}

namespace detail {

// Minimal basis (no leading term divides another's), then monic, then
// tails fully reduced against the rest; sorted descending by leading term.
inline std::vector<Polynomial> reduce_basis(std::vector<Polynomial> basis,
                                            const MonomialOrder& order) {
    std::vector<Monomial> lts;
    for (const Polynomial& b : basis) lts.push_back(b.leading(order).first);
    std::vector<bool> alive(basis.size(), true);
    for (unsigned i = 0; i < basis.size(); ++i) {
        for (unsigned j = 0; j < basis.size(); ++j) {
            if (i == j || !alive[j]) continue;
            if (!lts[j].divides(lts[i])) continue;
            if (lts[i] == lts[j] && j > i) continue;  // keep the earlier one
            alive[i] = false;
            break;
        }
    }
    std::vector<Polynomial> out;
    for (unsigned i = 0; i < basis.size(); ++i)
        if (alive[i]) out.push_back(basis[i]);
    for (bool changed = true; changed;) {
        changed = false;
        for (unsigned i = 0; i < out.size(); ++i) {
            std::vector<Polynomial> rest;
            for (unsigned j = 0; j < out.size(); ++j)
                if (j != i) rest.push_back(out[j]);
            Polynomial r = rest.empty() ? out[i]
                                        : normal_form(out[i], rest, order);
            r = r * r.leading(order).second.inverse();
            if (r != out[i]) {
                out[i] = std::move(r);
                changed = true;
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [&](const Polynomial& a, const Polynomial& b) {
                  return order.greater(a.leading(order).first,
                                       b.leading(order).first);
              });
    return out;
}

}  // namespace detail

inline GroebnerBasis buchberger(const Ideal& ideal) {
    const MonomialOrder& order = ideal.order;
    std::vector<Polynomial> basis = ideal.generators;
    std::vector<Monomial> lts;
    for (const Polynomial& b : basis) lts.push_back(b.leading(order).first);

    std::set<std::pair<unsigned, unsigned>> pending;
    for (unsigned j = 1; j < basis.size(); ++j)
        for (unsigned i = 0; i < j; ++i) pending.insert({i, j});

    long reductions = 0;
    while (!pending.empty()) {
        // Normal strategy: minimal lcm degree, ties by generator index.
        auto best = pending.begin();
        unsigned best_deg = lcm(lts[best->first], lts[best->second]).degree();
        for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
            unsigned deg = lcm(lts[it->first], lts[it->second]).degree();
            if (deg < best_deg) {
                best = it;
                best_deg = deg;
            }
        }
        auto [i, j] = *best;
        pending.erase(best);

        // Criterion 1: coprime leading terms reduce to zero.
        if (coprime(lts[i], lts[j])) continue;
        // Chain criterion: some k divides the lcm and both mixed pairs are
        // already settled.
        {
            Monomial l = lcm(lts[i], lts[j]);
            bool skip = false;
            for (unsigned k = 0; k < basis.size() && !skip; ++k) {
                if (k == i || k == j || !lts[k].divides(l)) continue;
                auto pik = std::minmax(i, k);
                auto pjk = std::minmax(j, k);
                if (!pending.count({pik.first, pik.second}) &&
                    !pending.count({pjk.first, pjk.second}))
                    skip = true;
            }
            if (skip) continue;
        }

        if (reductions >= ideal.budget)
            throw BudgetError("pair-reduction budget exceeded", reductions,
                              static_cast<long>(basis.size()));
        ++reductions;

        Polynomial r = normal_form(s_polynomial(basis[i], basis[j], order),
                                   basis, order);
        if (r.is_zero()) continue;
        unsigned t = static_cast<unsigned>(basis.size());
        lts.push_back(r.leading(order).first);
        basis.push_back(std::move(r));
        for (unsigned k = 0; k < t; ++k) pending.insert({k, t});
    }

    return {detail::reduce_basis(std::move(basis), order), order, true};
}

inline bool ideal_membership(const Polynomial& p, const Ideal& ideal) {
    GroebnerBasis gb = buchberger(ideal);
    return normal_form(p, gb.elements, ideal.order).is_zero();
}

// Elements of the reduced basis touching only `keep` variables. The ideal's
// order must be a block order that eliminates every other variable.
inline std::vector<Polynomial> elimination_ideal(
    const Ideal& ideal, const std::vector<unsigned>& keep) {
    const VarTablePtr& t = ideal.generators.front().table();
    std::vector<bool> kept(t->size(), false);
    for (unsigned v : keep) {
        if (v >= t->size()) throw UsageError("kept variable out of range");
        kept[v] = true;
    }
    std::vector<unsigned> drop;
    for (unsigned v = 0; v < t->size(); ++v)
        if (!kept[v]) drop.push_back(v);
    if (!drop.empty() && !ideal.order.eliminates(drop))
        throw UsageError(
            "order does not eliminate the complement of the kept variables");
    GroebnerBasis gb = buchberger(ideal);
    std::vector<Polynomial> out;
    for (const Polynomial& g : gb.elements) {
        bool pure = true;
        for (unsigned v : drop)
            if (g.mentions(v)) pure = false;
        if (pure) out.push_back(g);
    }
    return out;
}

}  // namespace cubsym
