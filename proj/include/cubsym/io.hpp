#pragma once

// Text form of polynomials.
//
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := coeff | var ('^' uint)? | '(' expr ')' | '-' factor
//   coeff  := int ('/' uint)?
//
// No juxtaposition ("2x" is an error), '^' applies to variables only.
// E-variables may be written in the bracketed form E[a1,...,am]; it is
// normalized to the canonical name. Formatting emits terms in descending
// order with the leading '+' suppressed, coefficient magnitude 1 omitted
// next to a variable, and pure integers without a denominator, so
// parse(format(p)) == p.

#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "cubsym/error.hpp"
#include "cubsym/polynomial.hpp"

namespace cubsym {

inline std::string format(const Polynomial& p, const MonomialOrder& order) {
    if (p.is_zero()) return "0";
    const VarTable& t = *p.table();
    // Factor sequence: ranking first, then any unranked variables.
    std::vector<unsigned> seq = order.ranking();
    {
        std::vector<bool> seen(t.size(), false);
        for (unsigned v : seq)
            if (v < t.size()) seen[v] = true;
        for (unsigned v = 0; v < t.size(); ++v)
            if (!seen[v]) seq.push_back(v);
    }
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.sorted_terms(order)) {
        bool neg = c.sign() < 0;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        std::string mon;
        for (unsigned v : seq) {
            if (v >= m.size() || !m.e[v]) continue;
            if (!mon.empty()) mon += "*";
            mon += t.name(v);
            if (m.e[v] > 1) mon += "^" + std::to_string(m.e[v]);
        }
        Rational mag = c.abs();
        if (mon.empty())
            out += mag.to_string();
        else if (mag.is_one())
            out += mon;
        else
            out += mag.to_string() + "*" + mon;
    }
    return out;
}

inline std::string format(const Polynomial& p) {
    return format(p, MonomialOrder::grevlex_for(*p.table()));
}

namespace detail {

struct Token {
    enum Type {
        Int,
        Ident,
        Plus,
        Minus,
        Star,
        Caret,
        Slash,
        LParen,
        RParen,
        LBracket,
        RBracket,
        Comma,
        End
    };
    Type type;
    std::string text;
    int line;
    int col;
};

class Lexer {
   public:
    Lexer(const std::string& src, int first_line)
        : src_(src), line_(first_line) {}

    Token next() {
        while (pos_ < src_.size()) {
            char ch = src_[pos_];
            if (ch == ' ' || ch == '\t' || ch == '\r') {
                advance();
                continue;
            }
            if (ch == '\n') {
                advance();
                continue;
            }
            break;
        }
        int line = line_, col = col_;
        if (pos_ >= src_.size()) return {Token::End, "", line, col};
        char ch = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::string text;
            while (pos_ < src_.size() &&
                   std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                text += src_[pos_];
                advance();
            }
            return {Token::Int, std::move(text), line, col};
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::string text;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                    src_[pos_] == '_')) {
                text += src_[pos_];
                advance();
            }
            return {Token::Ident, std::move(text), line, col};
        }
        advance();
        switch (ch) {
            case '+': return {Token::Plus, "+", line, col};
            case '-': return {Token::Minus, "-", line, col};
            case '*': return {Token::Star, "*", line, col};
            case '^': return {Token::Caret, "^", line, col};
            case '/': return {Token::Slash, "/", line, col};
            case '(': return {Token::LParen, "(", line, col};
            case ')': return {Token::RParen, ")", line, col};
            case '[': return {Token::LBracket, "[", line, col};
            case ']': return {Token::RBracket, "]", line, col};
            case ',': return {Token::Comma, ",", line, col};
            default:
                throw ParseError(std::string("unexpected character '") + ch +
                                     "'",
                                 line, col);
        }
    }

   private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_;
    int col_ = 1;
};

class Parser {
   public:
    Parser(const std::string& src, VarTablePtr table, int first_line)
        : lexer_(src, first_line), table_(std::move(table)) {
        cur_ = lexer_.next();
    }

    Polynomial parse_expr() {
        Polynomial acc = parse_term();
        while (cur_.type == Token::Plus || cur_.type == Token::Minus) {
            bool minus = cur_.type == Token::Minus;
            eat();
            Polynomial t = parse_term();
            if (minus)
                acc -= t;
            else
                acc += t;
        }
        return acc;
    }

    void expect_end() {
        if (cur_.type != Token::End)
            throw ParseError("unexpected token '" + cur_.text + "'",
                             cur_.line, cur_.col);
    }

   private:
    Polynomial parse_term() {
        Polynomial acc = parse_factor();
        while (cur_.type == Token::Star) {
            eat();
            acc = acc * parse_factor();
        }
        return acc;
    }

    Polynomial parse_factor() {
        switch (cur_.type) {
            case Token::Minus: {
                eat();
                return -parse_factor();
            }
            case Token::LParen: {
                eat();
                Polynomial inner = parse_expr();
                if (cur_.type != Token::RParen)
                    throw ParseError("expected ')'", cur_.line, cur_.col);
                eat();
                if (cur_.type == Token::Caret)
                    throw ParseError(
                        "'^' applies to variables, not parenthesized "
                        "expressions",
                        cur_.line, cur_.col);
                return inner;
            }
            case Token::Int:
                return parse_coeff();
            case Token::Ident:
                return parse_var_power();
            default:
                throw ParseError("expected coefficient, variable, or '('",
                                 cur_.line, cur_.col);
        }
    }

    Polynomial parse_coeff() {
        Token num = cur_;
        eat();
        Rational value{Integer(num.text)};
        if (cur_.type == Token::Slash) {
            eat();
            if (cur_.type != Token::Int)
                throw ParseError("expected denominator after '/'", cur_.line,
                                 cur_.col);
            Integer den(cur_.text);
            if (den.is_zero())
                throw ParseError("zero denominator", cur_.line, cur_.col);
            value = Rational(Integer(num.text), std::move(den));
            eat();
        }
        if (cur_.type == Token::Caret)
            throw ParseError("'^' applies to variables, not coefficients",
                             cur_.line, cur_.col);
        return Polynomial::constant(table_, std::move(value));
    }

    Polynomial parse_var_power() {
        Token ident = cur_;
        eat();
        std::string name = ident.text;
        if (cur_.type == Token::LBracket) name += parse_bracket_suffix();
        auto var = table_->find(name);
        if (!var)
            throw ParseError("unknown variable '" + name + "'", ident.line,
                             ident.col);
        unsigned exponent = 1;
        if (cur_.type == Token::Caret) {
            eat();
            if (cur_.type != Token::Int)
                throw ParseError("expected exponent after '^'", cur_.line,
                                 cur_.col);
            exponent = parse_uint(cur_);
            eat();
        }
        Monomial m(table_->size());
        m.e[*var] = exponent;
        return Polynomial::term(table_, std::move(m), Rational(1));
    }

    // Reads "[a1,...,am]" and returns the canonical suffix: digits
    // concatenated when every part is <= 9, the bracketed spelling
    // otherwise.
    std::string parse_bracket_suffix() {
        eat();  // '['
        MultiIndex parts;
        while (true) {
            if (cur_.type != Token::Int)
                throw ParseError("expected multiindex entry", cur_.line,
                                 cur_.col);
            parts.push_back(parse_uint(cur_));
            eat();
            if (cur_.type == Token::Comma) {
                eat();
                continue;
            }
            if (cur_.type == Token::RBracket) {
                eat();
                break;
            }
            throw ParseError("expected ',' or ']' in multiindex", cur_.line,
                             cur_.col);
        }
        // elementary_name yields "E" + suffix; strip the prefix letter.
        return elementary_name(parts).substr(1);
    }

    static unsigned parse_uint(const Token& tok) {
        unsigned v = 0;
        for (char ch : tok.text) {
            if (v > 100000000u)
                throw ParseError("number too large", tok.line, tok.col);
            v = v * 10 + static_cast<unsigned>(ch - '0');
        }
        return v;
    }

    void eat() { cur_ = lexer_.next(); }

    Lexer lexer_;
    VarTablePtr table_;
    Token cur_;
};

}  // namespace detail

// One expression over the given table. Unknown variables and malformed
// syntax throw ParseError with 1-based line/column.
inline Polynomial parse_polynomial(const std::string& text, VarTablePtr table,
                                   int first_line = 1) {
    detail::Parser p(text, std::move(table), first_line);
    Polynomial result = p.parse_expr();
    p.expect_end();
    return result;
}

// One expression per line; '#' starts a comment, blank lines are skipped.
// Error positions refer to the original line numbers.
inline std::vector<Polynomial> parse_polynomial_file(const std::string& text,
                                                     VarTablePtr table) {
    std::vector<Polynomial> out;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string line = text.substr(
            start, end == std::string::npos ? std::string::npos : end - start);
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        bool blank = true;
        for (char ch : line)
            if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
        if (!blank) out.push_back(parse_polynomial(line, table, line_no));
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return out;
}

}  // namespace cubsym
