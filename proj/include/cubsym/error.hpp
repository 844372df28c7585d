#pragma once

#include <stdexcept>
#include <string>

namespace cubsym {

// Base class for all library errors. Every failure mode the library can
// signal is a subclass of this, so callers can catch one type.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid arithmetic input: zero denominator, inverse of zero, division by
// zero polynomial.
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// API misuse: mismatched variable tables, unknown variable, malformed
// multiindex, wrong order kind for an elimination.
struct UsageError : Error {
    explicit UsageError(const std::string& msg) : Error(msg) {}
};

// Text that does not parse. Carries 1-based line/column of the offending
// token.
struct ParseError : Error {
    int line;
    int column;
    ParseError(const std::string& msg, int line_, int column_)
        : Error(msg + " at line " + std::to_string(line_) + ", column " +
                std::to_string(column_)),
          line(line_),
          column(column_) {}
};

// A polynomial that was required to be homogeneous in the row grading is
// not. The message lists offending terms.
struct GradingError : Error {
    explicit GradingError(const std::string& msg) : Error(msg) {}
};

// A polynomial that was required to be multisymmetric is not. Carries a
// description of a witness permutation and the monomial it moves.
struct SymmetryError : Error {
    explicit SymmetryError(const std::string& msg) : Error(msg) {}
};

// A bounded computation (Buchberger pair reductions) ran out of budget.
// Carries progress statistics so callers can report partial state.
struct BudgetError : Error {
    long pairs_processed;
    long basis_size;
    BudgetError(const std::string& msg, long pairs, long basis)
        : Error(msg), pairs_processed(pairs), basis_size(basis) {}
};

}  // namespace cubsym
