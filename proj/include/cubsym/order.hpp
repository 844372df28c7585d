#pragma once

// Monomial orders: lexicographic, graded reverse lexicographic, and block
// orders composed of those, each over an explicit variable ranking (highest
// priority first). Rankings let the same order kind eliminate different
// variable groups; a block order whose leading blocks cover a variable set
// eliminates it.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "cubsym/error.hpp"
#include "cubsym/monomial.hpp"
#include "cubsym/vartable.hpp"

namespace cubsym {

class MonomialOrder {
   public:
    enum class Kind { lex, grevlex };
    struct Block {
        Kind kind;
        std::vector<unsigned> vars;  // highest priority first
    };

    static MonomialOrder lex(std::vector<unsigned> ranking) {
        return MonomialOrder({Block{Kind::lex, std::move(ranking)}});
    }
    static MonomialOrder grevlex(std::vector<unsigned> ranking) {
        return MonomialOrder({Block{Kind::grevlex, std::move(ranking)}});
    }
    static MonomialOrder block(std::vector<Block> blocks) {
        return MonomialOrder(std::move(blocks));
    }

    // Identity-ranking conveniences over a whole table.
    static MonomialOrder lex_for(const VarTable& t) {
        return lex(identity(t.size()));
    }
    static MonomialOrder grevlex_for(const VarTable& t) {
        return grevlex(identity(t.size()));
    }

    // Block order that eliminates `front`: grevlex on front, then grevlex on
    // the remaining variables in table order.
    static MonomialOrder elimination(const VarTable& t,
                                     std::vector<unsigned> front) {
        std::set<unsigned> in_front(front.begin(), front.end());
        std::vector<unsigned> rest;
        for (unsigned i = 0; i < t.size(); ++i)
            if (!in_front.count(i)) rest.push_back(i);
        return block({Block{Kind::grevlex, std::move(front)},
                      Block{Kind::grevlex, std::move(rest)}});
    }

    // +1 if a is greater, -1 if smaller, 0 if equal.
    int compare(const Monomial& a, const Monomial& b) const {
        if (a.size() != b.size())
            throw UsageError("monomials from different variable tables");
        for (const Block& blk : blocks_) {
            int c = compare_block(blk, a, b);
            if (c) return c;
        }
        return 0;
    }
    bool less(const Monomial& a, const Monomial& b) const {
        return compare(a, b) < 0;
    }
    bool greater(const Monomial& a, const Monomial& b) const {
        return compare(a, b) > 0;
    }

    // True if the leading blocks cover exactly the given variable set, so
    // any monomial touching it outranks every monomial free of it.
    bool eliminates(const std::vector<unsigned>& front) const {
        std::set<unsigned> want(front.begin(), front.end());
        std::set<unsigned> seen;
        for (const Block& blk : blocks_) {
            for (unsigned v : blk.vars) seen.insert(v);
            if (seen == want) return true;
            if (seen.size() >= want.size()) return false;
        }
        return false;
    }

    // All ranked variables, highest priority first.
    const std::vector<unsigned>& ranking() const { return ranking_; }

    std::string description(const VarTable& t) const {
        if (blocks_.size() == 1) return block_description(blocks_[0], t);
        std::string s = "block[";
        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            if (i) s += " >> ";
            s += block_description(blocks_[i], t);
        }
        return s + "]";
    }

   private:
    explicit MonomialOrder(std::vector<Block> blocks)
        : blocks_(std::move(blocks)) {
        std::set<unsigned> seen;
        for (const Block& blk : blocks_) {
            if (blk.vars.empty()) throw UsageError("empty order block");
            for (unsigned v : blk.vars) {
                if (!seen.insert(v).second)
                    throw UsageError("variable ranked twice in order");
                ranking_.push_back(v);
            }
        }
    }

    static std::vector<unsigned> identity(unsigned n) {
        std::vector<unsigned> r(n);
        for (unsigned i = 0; i < n; ++i) r[i] = i;
        return r;
    }

    static int compare_block(const Block& blk, const Monomial& a,
                             const Monomial& b) {
        if (blk.kind == Kind::lex) {
            for (unsigned v : blk.vars) {
                if (a.e[v] != b.e[v]) return a.e[v] > b.e[v] ? 1 : -1;
            }
            return 0;
        }
        long da = 0, db = 0;
        for (unsigned v : blk.vars) {
            da += a.e[v];
            db += b.e[v];
        }
        if (da != db) return da > db ? 1 : -1;
        // Ties break at the lowest-priority differing variable: the side
        // with the smaller exponent there is greater.
        for (auto it = blk.vars.rbegin(); it != blk.vars.rend(); ++it) {
            if (a.e[*it] != b.e[*it]) return a.e[*it] < b.e[*it] ? 1 : -1;
        }
        return 0;
    }

    std::string block_description(const Block& blk, const VarTable& t) const {
        std::string s = blk.kind == Kind::lex ? "lex[" : "grevlex[";
        for (std::size_t i = 0; i < blk.vars.size(); ++i) {
            if (i) s += ">";
            s += t.name(blk.vars[i]);
        }
        return s + "]";
    }

    std::vector<Block> blocks_;
    std::vector<unsigned> ranking_;
};

}  // namespace cubsym
