#pragma once

// Power products. A Monomial is an exponent vector whose length matches its
// VarTable. The defaulted comparison is lexicographic on the raw exponent
// vector and exists only to give containers a deterministic storage order;
// mathematical comparisons go through MonomialOrder.

#include <compare>
#include <cstdint>
#include <vector>

#include "cubsym/error.hpp"

namespace cubsym {

struct Monomial {
    std::vector<std::uint32_t> e;

    Monomial() = default;
    explicit Monomial(unsigned nvars) : e(nvars, 0) {}
    explicit Monomial(std::vector<std::uint32_t> exps) : e(std::move(exps)) {}

    static Monomial of(std::initializer_list<std::uint32_t> exps) {
        return Monomial(std::vector<std::uint32_t>(exps));
    }

    unsigned size() const { return static_cast<unsigned>(e.size()); }
    bool is_one() const {
        for (auto x : e)
            if (x) return false;
        return true;
    }
    unsigned degree() const {
        unsigned d = 0;
        for (auto x : e) d += x;
        return d;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        check(a, b);
        Monomial r(a.size());
        for (unsigned i = 0; i < a.size(); ++i) r.e[i] = a.e[i] + b.e[i];
        return r;
    }

    bool divides(const Monomial& other) const {
        check(*this, other);
        for (unsigned i = 0; i < size(); ++i)
            if (e[i] > other.e[i]) return false;
        return true;
    }

    // other / this; requires divides(other).
    Monomial quotient_of(const Monomial& other) const {
        check(*this, other);
        Monomial r(size());
        for (unsigned i = 0; i < size(); ++i) {
            if (e[i] > other.e[i])
                throw DomainError("monomial quotient is not a monomial");
            r.e[i] = other.e[i] - e[i];
        }
        return r;
    }

    friend Monomial lcm(const Monomial& a, const Monomial& b) {
        check(a, b);
        Monomial r(a.size());
        for (unsigned i = 0; i < a.size(); ++i)
            r.e[i] = a.e[i] > b.e[i] ? a.e[i] : b.e[i];
        return r;
    }

    friend bool coprime(const Monomial& a, const Monomial& b) {
        check(a, b);
        for (unsigned i = 0; i < a.size(); ++i)
            if (a.e[i] && b.e[i]) return false;
        return true;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) = default;
    friend auto operator<=>(const Monomial& a, const Monomial& b) = default;

   private:
    static void check(const Monomial& a, const Monomial& b) {
        if (a.size() != b.size())
            throw UsageError("monomials from different variable tables");
    }
};

}  // namespace cubsym
