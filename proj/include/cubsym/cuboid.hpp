#pragma once

// The S3-symmetric model of the integer-brick system: a 2x3 matrix of edge
// and face-diagonal variables with the space-diagonal invariant L, the six
// quadratic generators, a confluent reduction basis for exact membership
// tests, named quadratic rewrite systems, and the pipeline that re-derives
// the catalog of relations among the elementary multisymmetric polynomials.

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cubsym/error.hpp"
#include "cubsym/groebner.hpp"
#include "cubsym/io.hpp"
#include "cubsym/multisym.hpp"
#include "cubsym/polynomial.hpp"

namespace cubsym {

// Variable indices in the shared cuboid table layout.
namespace cuboid_var {
inline constexpr unsigned x1 = 0, x2 = 1, x3 = 2;
inline constexpr unsigned d1 = 3, d2 = 4, d3 = 5;
inline constexpr unsigned L = 6;
inline constexpr unsigned E10 = 7, E20 = 8, E30 = 9;
inline constexpr unsigned E01 = 10, E02 = 11, E03 = 12;
inline constexpr unsigned E21 = 13, E11 = 14, E12 = 15;
}  // namespace cuboid_var

inline VarTablePtr cuboid_table() {
    static const VarTablePtr table =
        VarTable::matrix({"x", "d"}, 3, {"L"}, true);
    return table;
}

// A named confluent rewrite system: leading terms are pairwise coprime
// single squares, so normal forms are unique regardless of strategy.
struct RewriteSystem {
    std::string name;
    std::vector<Polynomial> basis;
    MonomialOrder order;
};

class CuboidSystem {
   public:
    CuboidSystem()
        : table_(cuboid_table()),
          membership_order_(MonomialOrder::elimination(
              *table_, {cuboid_var::d1, cuboid_var::d2, cuboid_var::d3,
                        cuboid_var::L})),
          normalization_order_(MonomialOrder::grevlex(catalog_ranking())),
          display_order_(MonomialOrder::lex(catalog_ranking())) {
        for (const char* text :
             {"x1^2 + x2^2 - d3^2", "d3^2 + x3^2 - L^2",
              "x2^2 + x3^2 - d1^2", "d1^2 + x1^2 - L^2",
              "x3^2 + x1^2 - d2^2", "d2^2 + x2^2 - L^2"})
            generators_.push_back(parse_polynomial(text, table_));
        for (const char* text :
             {"d1^2 - L^2 + x1^2", "d2^2 - L^2 + x2^2", "d3^2 - L^2 + x3^2",
              "L^2 - x1^2 - x2^2 - x3^2"})
            reduction_basis_.push_back(parse_polynomial(text, table_));
        certificates_ = {{0, 0, 0, 1, 0, 0},
                         {0, 0, 0, 0, 0, 1},
                         {0, 1, 0, 0, 0, 0},
                         {-1, -1, 0, 0, 0, 0}};
        build_rewrite_systems();
        for (const ElementaryBasisElement& e : enumerate_elementary(table_))
            expansions_.emplace(*table_->find(e.name), e.expansion);
        check_invariants();
    }

    const VarTablePtr& table() const { return table_; }
    const std::vector<Polynomial>& generators() const { return generators_; }
    const std::vector<Polynomial>& reduction_basis() const {
        return reduction_basis_;
    }
    // Row i expresses reduction_basis[i] as an integer combination of the
    // six generators.
    const std::vector<std::vector<Rational>>& certificates() const {
        return certificates_;
    }
    const MonomialOrder& membership_order() const { return membership_order_; }
    const MonomialOrder& normalization_order() const {
        return normalization_order_;
    }
    const MonomialOrder& display_order() const { return display_order_; }

    // E-variable index -> its expansion in the matrix variables.
    const std::map<unsigned, Polynomial>& elementary_substitution() const {
        return expansions_;
    }

    // Normal form modulo the reduction basis. Zero iff p lies in the ideal
    // of the six generators; the result has no d- or L-exponent above 1.
    Polynomial reduce(const Polynomial& p,
                      std::vector<ReductionStep>* certificate = nullptr) const {
        for (unsigned v = 0; v < table_->size(); ++v)
            if (table_->is_elementary(v) && p.mentions(v))
                throw UsageError(
                    "reduce expects a polynomial over the matrix variables "
                    "and L; substitute the E-variables first");
        return normal_form(p, reduction_basis_, membership_order_,
                           certificate);
    }

    const std::vector<RewriteSystem>& rewrite_systems() const {
        return rewrites_;
    }

    const RewriteSystem& rewrite_system(std::string_view name) const {
        for (const RewriteSystem& r : rewrites_)
            if (r.name == name) return r;
        throw UsageError("unknown rewrite system: " + std::string(name));
    }

    Polynomial rewrite(const Polynomial& p, std::string_view name) const {
        const RewriteSystem& r = rewrite_system(name);
        return normal_form(p, r.basis, r.order);
    }

    // Integer coefficients, content 1, positive leading coefficient under
    // the catalog normalization order.
    Polynomial normalize(const Polynomial& p) const {
        return p.normalized(normalization_order_);
    }

    std::string display(const Polynomial& p) const {
        return format(p, display_order_);
    }

   private:
    static std::vector<unsigned> catalog_ranking() {
        namespace cv = cuboid_var;
        return {cv::E10, cv::E20, cv::E30, cv::E01, cv::E02, cv::E03,
                cv::E21, cv::E11, cv::E12, cv::L,   cv::x1,  cv::x2,
                cv::x3,  cv::d1,  cv::d2,  cv::d3};
    }

    void build_rewrite_systems() {
        namespace cv = cuboid_var;
        const std::vector<unsigned> xs = {cv::x1, cv::x2, cv::x3};
        const std::vector<unsigned> ds = {cv::d1, cv::d2, cv::d3};
        auto add = [&](const char* name, std::vector<const char*> texts,
                       const std::vector<unsigned>& front) {
            RewriteSystem r{name, {}, MonomialOrder::elimination(*table_, front)};
            for (const char* t : texts)
                r.basis.push_back(parse_polynomial(t, table_));
            rewrites_.push_back(std::move(r));
        };
        add("sum-x", {"x1^2 + x2^2 + x3^2 - L^2"}, xs);
        add("sum-d", {"d1^2 + d2^2 + d3^2 - 2*L^2"}, ds);
        add("diag-x",
            {"x1^2 - L^2 + d1^2", "x2^2 - L^2 + d2^2", "x3^2 - L^2 + d3^2"},
            xs);
        add("face-x",
            {"x1^2 - 1/2*d2^2 - 1/2*d3^2 + 1/2*d1^2",
             "x2^2 - 1/2*d3^2 - 1/2*d1^2 + 1/2*d2^2",
             "x3^2 - 1/2*d1^2 - 1/2*d2^2 + 1/2*d3^2"},
            xs);
        add("face-d",
            {"d1^2 - x2^2 - x3^2", "d2^2 - x3^2 - x1^2", "d3^2 - x1^2 - x2^2"},
            ds);
        add("diag-d",
            {"d1^2 - L^2 + x1^2", "d2^2 - L^2 + x2^2", "d3^2 - L^2 + x3^2"},
            ds);
    }

    // Construction-time re-checks: the stored certificates reproduce the
    // reduction basis from the generators, every generator reduces to zero,
    // and every rewrite-system element lies in the ideal.
    void check_invariants() const {
        for (std::size_t i = 0; i < reduction_basis_.size(); ++i) {
            Polynomial acc = Polynomial::zero(table_);
            for (std::size_t j = 0; j < generators_.size(); ++j)
                acc += Polynomial::constant(table_, certificates_[i][j]) *
                       generators_[j];
            if (!(acc == reduction_basis_[i]))
                throw Error("stored certificate does not reproduce reduction "
                            "basis element " +
                            std::to_string(i));
        }
        for (const Polynomial& g : generators_)
            if (!reduce(g).is_zero())
                throw Error("generator does not reduce to zero");
        for (const RewriteSystem& r : rewrites_)
            for (const Polynomial& b : r.basis)
                if (!reduce(b).is_zero())
                    throw Error("rewrite system " + r.name +
                                " is not ideal-sound");
    }

    VarTablePtr table_;
    MonomialOrder membership_order_;
    MonomialOrder normalization_order_;
    MonomialOrder display_order_;
    std::vector<Polynomial> generators_;
    std::vector<Polynomial> reduction_basis_;
    std::vector<std::vector<Rational>> certificates_;
    std::vector<RewriteSystem> rewrites_;
    std::map<unsigned, Polynomial> expansions_;
};

inline std::vector<Polynomial> cuboid_generators() {
    return CuboidSystem().generators();
}

struct FactorEquation {
    std::string id;
    std::string paper_eq;
    Polynomial lhs;
};

// The transcribed catalog, normalized on construction. Golden data: the
// derivation pipeline must reproduce these exactly and is tested against
// them, never the other way around.
inline std::vector<FactorEquation> factor_catalog(const CuboidSystem& sys) {
    struct Entry {
        const char* id;
        const char* tag;
        const char* text;
    };
    static const Entry entries[] = {
        {"F1", "4.4", "E10^2 - 2*E20 - L^2"},
        {"F2", "4.7", "E01^2 - 2*E02 - 2*L^2"},
        {"F3", "4.13",
         "2*E12 + 6*E30 - 2*E01*E11 + E10*E01^2 + 3*E10*L^2 - E10^3"},
        {"F4", "4.20",
         "2*E21 + 6*E03 - 2*E10*E11 + E01*E10^2 + 5*E01*L^2 - E01^3"},
        {"F5", "5.5",
         "8*E10*E12 - 8*E01*E21 - 8*E11^2 + 4*E01^2*E10^2 - E01^4 - 3*E10^4 "
         "+ 10*E10^2*L^2 + 4*E01^2*L^2 + L^4"},
        {"F6", "5.10",
         "-8*E10*E12 + 8*E01*E21 - 8*E11^2 + 4*E01^2*E10^2 - E10^4 - 3*E01^4 "
         "+ 20*E01^2*L^2 - 2*E10^2*L^2 - 5*L^4"},
        {"L1", "5.11",
         "8*E10*E12 - 8*E01*E21 + E01^4 - E10^4 - 8*E01^2*L^2 + 6*E10^2*L^2 "
         "+ 3*L^4"},
        {"L2", "5.12",
         "4*E11^2 - 2*E01^2*E10^2 + E01^4 + E10^4 - 6*E01^2*L^2 - 2*E10^2*L^2 "
         "+ L^4"},
        {"F7", "5.17",
         "4*E11*E21 - 2*E11*E01^3 + 6*E12*E01^2 + 2*E12*E10^2 - E10^3*E01^2 "
         "+ E10*E01^4 - 2*E12*L^2 - E10*E01^2*L^2 + 2*E10^3*L^2 - 2*E10*L^4"},
        {"F8", "5.22",
         "4*E11*E12 - 2*E11*E10^3 + 6*E21*E10^2 + 2*E21*E01^2 - E01^3*E10^2 "
         "+ E01*E10^4 + 2*E21*L^2 - 2*E11*E10*L^2 + 2*E01*E10^2*L^2 "
         "+ E01^3*L^2 - 3*E01*L^4"},
    };
    std::vector<FactorEquation> out;
    out.reserve(std::size(entries));
    for (const Entry& e : entries)
        out.push_back(
            {e.id, e.tag, sys.normalize(parse_polynomial(e.text, sys.table()))});
    return out;
}

struct VerificationResult {
    bool member = false;
    Polynomial remainder;
    // Division steps over reduction_basis: expansion equals
    // sum(coefficient * x^factor * basis[basis_index]) + remainder.
    std::vector<ReductionStep> certificate;
    Polynomial expansion;
};

// Substitutes the E-variables by their expansions and reduces modulo the
// reduction basis. Member iff the remainder vanishes.
inline VerificationResult verify_membership(const CuboidSystem& sys,
                                            const Polynomial& p) {
    VerificationResult out;
    out.expansion = p.substitute(sys.elementary_substitution());
    out.remainder = sys.reduce(out.expansion, &out.certificate);
    out.member = out.remainder.is_zero();
    return out;
}

inline VerificationResult verify_factor_equation(const CuboidSystem& sys,
                                                 const FactorEquation& f) {
    return verify_membership(sys, f.lhs);
}

struct DerivationStep {
    std::string rule;
    Polynomial state;
};

struct DerivationTrace {
    std::string target;
    std::vector<DerivationStep> steps;
    FactorEquation result;
};

// One derivation pass: expand the target product of E-variables into matrix
// variables, rewrite modulo the named system, decompose back into E-terms,
// subtract to close the relation, substitute the solved eliminations in the
// given order, optionally eliminate the E11 square, normalize. Every
// intermediate state is recorded.
inline DerivationTrace derive_candidate(
    const CuboidSystem& sys, std::string id, std::string tag,
    const std::string& target, std::string_view rewrite_name,
    const std::vector<unsigned>& eliminations,
    const std::map<unsigned, Polynomial>& solved,
    const Polynomial* square_rhs = nullptr) {
    DerivationTrace trace;
    trace.target = target;
    Polynomial source = parse_polynomial(target, sys.table());
    Polynomial state = expand_in_matrix_vars(source);
    trace.steps.push_back({"expand", state});
    state = sys.rewrite(state, rewrite_name);
    trace.steps.push_back(
        {"rewrite " + std::string(rewrite_name), state});
    state = decompose(state);
    trace.steps.push_back({"decompose", state});
    state = source - state;
    trace.steps.push_back({"close", state});
    for (unsigned v : eliminations) {
        auto it = solved.find(v);
        if (it == solved.end())
            throw UsageError("no elimination rule solved for " +
                             sys.table()->name(v));
        state = state.substitute({{v, it->second}});
        trace.steps.push_back({"eliminate " + sys.table()->name(v), state});
    }
    if (square_rhs != nullptr) {
        state = substitute_square(state, cuboid_var::E11, *square_rhs);
        trace.steps.push_back({"eliminate E11^2", state});
    }
    state = sys.normalize(state);
    trace.steps.push_back({"normalize", state});
    trace.result = {std::move(id), std::move(tag), state};
    return trace;
}

namespace detail {

inline DerivationTrace combine_candidates(const CuboidSystem& sys,
                                          std::string id, std::string tag,
                                          const FactorEquation& a,
                                          const FactorEquation& b,
                                          bool plus) {
    DerivationTrace trace;
    trace.target = a.id + (plus ? " + " : " - ") + b.id;
    Polynomial state = plus ? a.lhs + b.lhs : a.lhs - b.lhs;
    trace.steps.push_back({"combine", state});
    state = sys.normalize(state);
    trace.steps.push_back({"normalize", state});
    trace.result = {std::move(id), std::move(tag), state};
    return trace;
}

}  // namespace detail

// The full bootstrap. Each equation is derived from a square, cube, or
// product of elementary terms; earlier results are solved for one variable
// and fed forward as elimination rules; the two mixed combinations isolate
// the E11 square, which then closes the last two derivations.
inline std::vector<DerivationTrace> derive_factor_equations(
    const CuboidSystem& sys) {
    namespace cv = cuboid_var;
    std::vector<DerivationTrace> out;
    out.reserve(10);
    std::map<unsigned, Polynomial> solved;

    out.push_back(
        derive_candidate(sys, "F1", "4.4", "E10^2", "sum-x", {}, solved));
    solved.emplace(cv::E20, solve_for(out.back().result.lhs, cv::E20));
    out.push_back(
        derive_candidate(sys, "F2", "4.7", "E01^2", "sum-d", {}, solved));
    solved.emplace(cv::E02, solve_for(out.back().result.lhs, cv::E02));
    out.push_back(derive_candidate(sys, "F3", "4.13", "E10^3", "diag-x",
                                   {cv::E02}, solved));
    solved.emplace(cv::E30, solve_for(out.back().result.lhs, cv::E30));
    out.push_back(derive_candidate(sys, "F4", "4.20", "E01^3", "face-d",
                                   {cv::E20}, solved));
    solved.emplace(cv::E03, solve_for(out.back().result.lhs, cv::E03));
    out.push_back(derive_candidate(sys, "F5", "5.5", "E20^2", "diag-x",
                                   {cv::E03, cv::E02, cv::E20}, solved));
    out.push_back(derive_candidate(sys, "F6", "5.10", "E02^2", "diag-d",
                                   {cv::E30, cv::E02, cv::E20}, solved));
    const FactorEquation& f5 = out[4].result;
    const FactorEquation& f6 = out[5].result;
    out.push_back(
        detail::combine_candidates(sys, "L1", "5.11", f5, f6, false));
    out.push_back(detail::combine_candidates(sys, "L2", "5.12", f5, f6, true));
    Polynomial square = solve_for_square(out[7].result.lhs, cv::E11);
    out.push_back(derive_candidate(sys, "F7", "5.17", "E20*E30", "diag-x",
                                   {cv::E30, cv::E03, cv::E20, cv::E02},
                                   solved, &square));
    out.push_back(derive_candidate(sys, "F8", "5.22", "E02*E03", "diag-d",
                                   {cv::E30, cv::E03, cv::E20, cv::E02},
                                   solved, &square));
    return out;
}

// Re-executes a trace step by step, checking every recorded intermediate
// state and the final result. prior maps earlier equation ids to their
// results; combinations and eliminations are reconstructed from it.
inline bool replay_trace(const CuboidSystem& sys, const DerivationTrace& trace,
                         const std::map<std::string, FactorEquation>& prior) {
    namespace cv = cuboid_var;
    static const std::map<unsigned, const char*> elimination_source = {
        {cv::E20, "F1"}, {cv::E02, "F2"}, {cv::E30, "F3"}, {cv::E03, "F4"}};
    if (trace.steps.empty()) return false;
    Polynomial state = Polynomial::zero(sys.table());
    for (const DerivationStep& step : trace.steps) {
        Polynomial next = Polynomial::zero(sys.table());
        const std::string& rule = step.rule;
        if (rule == "expand") {
            next = expand_in_matrix_vars(
                parse_polynomial(trace.target, sys.table()));
        } else if (rule == "combine") {
            std::istringstream in(trace.target);
            std::string a, op, b;
            if (!(in >> a >> op >> b) || (op != "+" && op != "-"))
                return false;
            auto ia = prior.find(a), ib = prior.find(b);
            if (ia == prior.end() || ib == prior.end()) return false;
            next = op == "+" ? ia->second.lhs + ib->second.lhs
                             : ia->second.lhs - ib->second.lhs;
        } else if (rule.starts_with("rewrite ")) {
            next = sys.rewrite(state, rule.substr(8));
        } else if (rule == "decompose") {
            next = decompose(state);
        } else if (rule == "close") {
            next = parse_polynomial(trace.target, sys.table()) - state;
        } else if (rule == "eliminate E11^2") {
            auto it = prior.find("L2");
            if (it == prior.end()) return false;
            next = substitute_square(state, cv::E11,
                                     solve_for_square(it->second.lhs, cv::E11));
        } else if (rule.starts_with("eliminate ")) {
            std::optional<unsigned> found = sys.table()->find(rule.substr(10));
            if (!found) return false;
            unsigned var = *found;
            auto src = elimination_source.find(var);
            if (src == elimination_source.end()) return false;
            auto it = prior.find(src->second);
            if (it == prior.end()) return false;
            next = state.substitute({{var, solve_for(it->second.lhs, var)}});
        } else if (rule == "normalize") {
            next = sys.normalize(state);
        } else {
            return false;
        }
        if (!(next == step.state)) return false;
        state = std::move(next);
    }
    return state == trace.result.lhs;
}

struct BranchComparison {
    std::string id;
    DerivationTrace primary;
    DerivationTrace alternate;
};

// The third and fourth derivations each admit a second quadratic rewrite
// route; both routes must close on the same normalized equation.
inline std::vector<BranchComparison> derivation_branches(
    const CuboidSystem& sys) {
    namespace cv = cuboid_var;
    std::map<unsigned, Polynomial> solved;
    DerivationTrace f1 =
        derive_candidate(sys, "F1", "4.4", "E10^2", "sum-x", {}, solved);
    solved.emplace(cv::E20, solve_for(f1.result.lhs, cv::E20));
    DerivationTrace f2 =
        derive_candidate(sys, "F2", "4.7", "E01^2", "sum-d", {}, solved);
    solved.emplace(cv::E02, solve_for(f2.result.lhs, cv::E02));
    std::vector<BranchComparison> out;
    out.push_back({"F3",
                   derive_candidate(sys, "F3", "4.13", "E10^3", "diag-x",
                                    {cv::E02}, solved),
                   derive_candidate(sys, "F3", "4.13", "E10^3", "face-x",
                                    {cv::E02}, solved)});
    out.push_back({"F4",
                   derive_candidate(sys, "F4", "4.20", "E01^3", "face-d",
                                    {cv::E20}, solved),
                   derive_candidate(sys, "F4", "4.20", "E01^3", "diag-d",
                                    {cv::E20}, solved)});
    return out;
}

inline bool derivation_branch_equivalence(const CuboidSystem& sys) {
    for (const BranchComparison& b : derivation_branches(sys))
        if (!(b.primary.result.lhs == b.alternate.result.lhs)) return false;
    return true;
}

}  // namespace cubsym
