#pragma once

// Sparse multivariate polynomials over the rationals. Terms are stored in a
// map keyed by monomial (deterministic storage order, no zero coefficients
// retained); every polynomial carries its VarTable and operations on
// mismatched tables are usage errors. Display and leading-term questions are
// parameterized by a MonomialOrder.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cubsym/error.hpp"
#include "cubsym/monomial.hpp"
#include "cubsym/order.hpp"
#include "cubsym/rational.hpp"
#include "cubsym/vartable.hpp"

namespace cubsym {

// Plain factor-list rendering in table order, for error messages.
inline std::string monomial_to_string(const VarTable& t, const Monomial& m) {
    if (m.is_one()) return "1";
    std::string s;
    for (unsigned i = 0; i < m.size(); ++i) {
        if (!m.e[i]) continue;
        if (!s.empty()) s += "*";
        s += t.name(i);
        if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
    }
    return s;
}

class Polynomial {
   public:
    using TermMap = std::map<Monomial, Rational>;

    Polynomial() = default;

    static Polynomial zero(VarTablePtr t) { return Polynomial(std::move(t)); }

    static Polynomial constant(VarTablePtr t, Rational c) {
        Polynomial p(std::move(t));
        if (!c.is_zero()) p.terms_.emplace(Monomial(p.table_->size()), std::move(c));
        return p;
    }

    static Polynomial variable(VarTablePtr t, unsigned var) {
        if (var >= t->size()) throw UsageError("variable index out of range");
        Polynomial p(std::move(t));
        Monomial m(p.table_->size());
        m.e[var] = 1;
        p.terms_.emplace(std::move(m), Rational(1));
        return p;
    }

    static Polynomial term(VarTablePtr t, Monomial m, Rational c) {
        if (m.size() != t->size())
            throw UsageError("monomial length does not match table");
        Polynomial p(std::move(t));
        if (!c.is_zero()) p.terms_.emplace(std::move(m), std::move(c));
        return p;
    }

    const VarTablePtr& table() const { return table_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    unsigned term_count() const { return static_cast<unsigned>(terms_.size()); }

    Rational coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    // Total degree; zero polynomial has degree 0.
    unsigned degree() const {
        unsigned d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }

    bool mentions(unsigned var) const {
        for (const auto& [m, c] : terms_)
            if (m.e[var]) return true;
        return false;
    }

    Polynomial operator-() const {
        Polynomial r(table_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) {
        merge_table(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        merge_table(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.table_ && b.table_ && !same_table(a.table_, b.table_))
            throw UsageError("polynomials over different variable tables");
        Polynomial r(a.table_ ? a.table_ : b.table_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }

    friend Polynomial operator*(const Rational& c, const Polynomial& p) {
        Polynomial r(p.table_);
        if (c.is_zero()) return r;
        for (const auto& [m, pc] : p.terms_) r.terms_.emplace(m, c * pc);
        return r;
    }
    friend Polynomial operator*(const Polynomial& p, const Rational& c) {
        return c * p;
    }

    friend Polynomial pow(const Polynomial& p, unsigned k) {
        Polynomial r = Polynomial::constant(p.table_, Rational(1));
        Polynomial base = p;
        while (k) {
            if (k & 1) r = r * base;
            k >>= 1;
            if (k) base = base * base;
        }
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return same_table(a.table_, b.table_) && a.terms_ == b.terms_;
    }

    // Replaces each bound variable by its polynomial (simultaneously).
    Polynomial substitute(const std::map<unsigned, Polynomial>& bindings) const {
        for (const auto& [v, rhs] : bindings) {
            if (v >= table_->size())
                throw UsageError("substitution variable out of range");
            if (!same_table(table_, rhs.table_))
                throw UsageError("substitution value over different table");
        }
        Polynomial acc(table_);
        for (const auto& [m, c] : terms_) {
            Monomial rest = m;
            Polynomial factor = Polynomial::constant(table_, c);
            for (const auto& [v, rhs] : bindings) {
                if (!m.e[v]) continue;
                rest.e[v] = 0;
                factor = factor * pow(rhs, m.e[v]);
            }
            acc += factor * Polynomial::term(table_, std::move(rest), Rational(1));
        }
        return acc;
    }

    // Row-degree vector of a monomial under the table's matrix layout.
    static std::vector<unsigned> row_degrees(const VarTable& t, const Monomial& m) {
        if (!t.has_layout())
            throw UsageError("variable table has no matrix layout");
        std::vector<unsigned> deg(t.rows(), 0);
        for (unsigned i = 0; i < m.size(); ++i)
            if (m.e[i] && t.var_row(i) >= 0)
                deg[static_cast<unsigned>(t.var_row(i))] += m.e[i];
        return deg;
    }

    // Common row-degree vector of all terms; a mix of row degrees is a
    // GradingError naming offending terms. Zero and constants grade as all
    // zeros. Invariant and E-variables carry no row degree.
    std::vector<unsigned> multidegree() const {
        require_table();
        if (!table_->has_layout())
            throw UsageError("variable table has no matrix layout");
        std::vector<unsigned> deg(table_->rows(), 0);
        bool first = true;
        for (const auto& [m, c] : terms_) {
            auto d = row_degrees(*table_, m);
            if (first) {
                deg = d;
                first = false;
            } else if (d != deg) {
                throw GradingError(
                    "polynomial is not row-homogeneous: terms " +
                    monomial_to_string(*table_, terms_.begin()->first) +
                    " and " + monomial_to_string(*table_, m) +
                    " have different row degrees");
            }
        }
        return deg;
    }

    // Split into row-homogeneous components, sorted by multidegree.
    std::vector<std::pair<std::vector<unsigned>, Polynomial>>
    homogeneous_components() const {
        require_table();
        std::map<std::vector<unsigned>, Polynomial> comps;
        for (const auto& [m, c] : terms_) {
            auto d = row_degrees(*table_, m);
            auto it = comps.find(d);
            if (it == comps.end())
                it = comps.emplace(std::move(d), Polynomial(table_)).first;
            it->second.terms_.emplace(m, c);
        }
        return {comps.begin(), comps.end()};
    }

    std::pair<Monomial, Rational> leading(const MonomialOrder& order) const {
        if (is_zero()) throw DomainError("leading term of zero polynomial");
        auto best = terms_.begin();
        for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
            if (order.greater(it->first, best->first)) best = it;
        return {best->first, best->second};
    }

    // Terms in descending order.
    std::vector<std::pair<Monomial, Rational>> sorted_terms(
        const MonomialOrder& order) const {
        std::vector<std::pair<Monomial, Rational>> v(terms_.begin(),
                                                     terms_.end());
        std::sort(v.begin(), v.end(), [&](const auto& a, const auto& b) {
            return order.greater(a.first, b.first);
        });
        return v;
    }

    // Evaluates at a full point, one double per table variable. Terms are
    // accumulated in descending grevlex order over the table so identical
    // inputs always sum in the same sequence.
    double eval_float(const std::vector<double>& point) const {
        require_table();
        if (point.size() != table_->size())
            throw UsageError("point size does not match variable table");
        double sum = 0.0;
        for (const auto& [m, c] :
             sorted_terms(MonomialOrder::grevlex_for(*table_))) {
            double t = c.to_double();
            for (unsigned i = 0; i < m.size(); ++i)
                for (std::uint32_t k = 0; k < m.e[i]; ++k) t *= point[i];
            sum += t;
        }
        return sum;
    }

    // Positive rational c such that (1/c) * p has coprime integer
    // coefficients; zero for the zero polynomial.
    Rational content() const {
        if (is_zero()) return Rational(0);
        Integer num_gcd(0), den_lcm(1);
        for (const auto& [m, c] : terms_) {
            num_gcd = gcd(num_gcd, c.numerator());
            Integer d = c.denominator();
            den_lcm = den_lcm * (d / gcd(den_lcm, d));
        }
        return Rational(num_gcd.abs(), den_lcm);
    }

    // Integer coefficients, content 1, positive leading coefficient under
    // the given order. Zero stays zero.
    Polynomial normalized(const MonomialOrder& order) const {
        if (is_zero()) return *this;
        Rational c = content();
        if (leading(order).second.sign() < 0) c = -c;
        return c.inverse() * *this;
    }

    // p / c for every coefficient, c nonzero.
    friend Polynomial operator/(const Polynomial& p, const Rational& c) {
        return c.inverse() * p;
    }

   private:
    explicit Polynomial(VarTablePtr t) : table_(std::move(t)) {}

    void require_table() const {
        if (!table_) throw UsageError("polynomial has no variable table");
    }

    void merge_table(const Polynomial& o) {
        if (!table_) {
            table_ = o.table_;
            return;
        }
        if (o.table_ && !same_table(table_, o.table_))
            throw UsageError("polynomials over different variable tables");
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    VarTablePtr table_;
    TermMap terms_;
};

// Solves eq == 0 for var, which must occur only linearly and with a constant
// coefficient; returns rhs such that var = rhs and rhs does not mention var.
inline Polynomial solve_for(const Polynomial& eq, unsigned var) {
    if (var >= eq.table()->size())
        throw UsageError("solve_for: variable index out of range");
    Rational coeff;
    Polynomial rest = Polynomial::zero(eq.table());
    for (const auto& [m, c] : eq.terms()) {
        if (m.e[var] == 0) {
            rest += Polynomial::term(eq.table(), m, c);
            continue;
        }
        if (m.e[var] > 1)
            throw DomainError("solve_for: equation is not linear in " +
                              eq.table()->name(var));
        Monomial bare = m;
        bare.e[var] = 0;
        if (!bare.is_one())
            throw DomainError("solve_for: coefficient of " +
                              eq.table()->name(var) + " is not constant");
        coeff = c;
    }
    if (coeff.is_zero())
        throw DomainError("solve_for: " + eq.table()->name(var) +
                          " does not occur in the equation");
    return rest * (-coeff.inverse());
}

// Solves eq == 0 for var^2: var must occur only squared and with a constant
// coefficient; returns rhs such that var^2 = rhs.
inline Polynomial solve_for_square(const Polynomial& eq, unsigned var) {
    if (var >= eq.table()->size())
        throw UsageError("solve_for_square: variable index out of range");
    Rational coeff;
    Polynomial rest = Polynomial::zero(eq.table());
    for (const auto& [m, c] : eq.terms()) {
        if (m.e[var] == 0) {
            rest += Polynomial::term(eq.table(), m, c);
            continue;
        }
        if (m.e[var] != 2)
            throw DomainError("solve_for_square: exponent of " +
                              eq.table()->name(var) + " is not 2");
        Monomial bare = m;
        bare.e[var] = 0;
        if (!bare.is_one())
            throw DomainError("solve_for_square: coefficient of " +
                              eq.table()->name(var) + "^2 is not constant");
        coeff = c;
    }
    if (coeff.is_zero())
        throw DomainError("solve_for_square: " + eq.table()->name(var) +
                          " does not occur in the equation");
    return rest * (-coeff.inverse());
}

// Replaces var^(2k+r) by rhs^k * var^r in every term; rhs must not mention
// var, so the result carries var only in exponent 0 or 1.
inline Polynomial substitute_square(const Polynomial& p, unsigned var,
                                    const Polynomial& rhs) {
    if (var >= p.table()->size())
        throw UsageError("substitute_square: variable index out of range");
    if (!same_table(p.table(), rhs.table()))
        throw UsageError("substitute_square: mismatched variable tables");
    if (rhs.mentions(var))
        throw UsageError("substitute_square: replacement mentions " +
                         p.table()->name(var));
    Polynomial out = Polynomial::zero(p.table());
    for (const auto& [m, c] : p.terms()) {
        Monomial bare = m;
        bare.e[var] = m.e[var] % 2;
        out += Polynomial::term(p.table(), bare, c) * pow(rhs, m.e[var] / 2);
    }
    return out;
}

}  // namespace cubsym
