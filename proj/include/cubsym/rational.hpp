#pragma once

// Exact integer and rational arithmetic. Integer wraps an arbitrary
// precision backend; Rational keeps the reduced-fraction invariants visible:
// gcd(num, den) == 1, den > 0, zero is 0/1. All operations are exact; the
// only failures are division by zero and inverse of zero.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <utility>

#include "cubsym/error.hpp"

namespace cubsym {

class Integer {
   public:
    Integer() : v_(0) {}
    Integer(long long v) : v_(v) {}
    explicit Integer(const std::string& text) { parse_into(text, v_); }

    int sign() const { return v_.sign(); }
    bool is_zero() const { return v_.is_zero(); }
    bool is_one() const { return v_ == 1; }

    Integer operator-() const { return Integer(-v_); }
    Integer abs() const { return Integer(boost::multiprecision::abs(v_)); }

    Integer& operator+=(const Integer& o) { v_ += o.v_; return *this; }
    Integer& operator-=(const Integer& o) { v_ -= o.v_; return *this; }
    Integer& operator*=(const Integer& o) { v_ *= o.v_; return *this; }

    friend Integer operator+(Integer a, const Integer& b) { return a += b; }
    friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
    friend Integer operator*(Integer a, const Integer& b) { return a *= b; }

    // Truncated quotient and remainder; division by zero is a DomainError.
    friend Integer operator/(const Integer& a, const Integer& b) {
        if (b.is_zero()) throw DomainError("integer division by zero");
        return Integer(a.v_ / b.v_);
    }
    friend Integer operator%(const Integer& a, const Integer& b) {
        if (b.is_zero()) throw DomainError("integer remainder by zero");
        return Integer(a.v_ % b.v_);
    }

    friend bool operator==(const Integer& a, const Integer& b) = default;
    friend std::strong_ordering operator<=>(const Integer& a,
                                            const Integer& b) {
        if (a.v_ < b.v_) return std::strong_ordering::less;
        if (a.v_ > b.v_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend Integer gcd(const Integer& a, const Integer& b) {
        return Integer(boost::multiprecision::gcd(a.v_, b.v_));
    }

    // a^k for k >= 0; pow(0, 0) == 1.
    friend Integer pow(const Integer& a, unsigned k) {
        return Integer(boost::multiprecision::pow(a.v_, k));
    }

    std::string to_string() const { return v_.str(); }
    double to_double() const { return v_.convert_to<double>(); }

    const boost::multiprecision::cpp_int& backend() const { return v_; }

   private:
    using Backend = boost::multiprecision::cpp_int;

    explicit Integer(Backend v) : v_(std::move(v)) {}

    // Accepts an optional leading '-' followed by one or more decimal
    // digits; anything else is a ParseError (position is within the text).
    static void parse_into(const std::string& text, Backend& out) {
        std::size_t i = 0;
        bool neg = false;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
            neg = text[i] == '-';
            ++i;
        }
        if (i >= text.size())
            throw ParseError("expected digits in integer literal", 1,
                             static_cast<int>(i) + 1);
        Backend acc = 0;
        for (; i < text.size(); ++i) {
            if (text[i] < '0' || text[i] > '9')
                throw ParseError("invalid character in integer literal", 1,
                                 static_cast<int>(i) + 1);
            acc = acc * 10 + (text[i] - '0');
        }
        out = neg ? Backend(-acc) : acc;
    }

    Backend v_;
};

class Rational {
   public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(Integer v) : num_(std::move(v)), den_(1) {}
    Rational(Integer num, Integer den)
        : num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }

    // Parses "p" or "p/q" with an optional sign on p. "p/0" is a
    // DomainError, malformed text a ParseError.
    static Rational parse(const std::string& text) {
        auto slash = text.find('/');
        if (slash == std::string::npos) return Rational(Integer(text));
        Integer num(text.substr(0, slash));
        if (slash + 1 >= text.size())
            throw ParseError("expected denominator after '/'", 1,
                             static_cast<int>(slash) + 2);
        Integer den(text.substr(slash + 1));
        return Rational(std::move(num), std::move(den));
    }

    const Integer& numerator() const { return num_; }
    const Integer& denominator() const { return den_; }

    int sign() const { return num_.sign(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_integer() const { return den_.is_one(); }

    Rational operator-() const { return Rational(-num_, den_, raw_tag{}); }
    Rational abs() const { return Rational(num_.abs(), den_, raw_tag{}); }

    // Multiplicative inverse; inverse of zero is a DomainError.
    Rational inverse() const {
        if (is_zero()) throw DomainError("inverse of zero");
        if (num_.sign() < 0) return Rational(-den_, -num_, raw_tag{});
        return Rational(den_, num_, raw_tag{});
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        return a * b.inverse();
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    // Reduced representations are unique, so equality is structural.
    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a,
                                            const Rational& b) {
        return (a.num_ * b.den_) <=> (b.num_ * a.den_);
    }

    friend Rational pow(const Rational& a, unsigned k) {
        if (k == 0) return Rational(1);
        return Rational(pow(a.num_, k), pow(a.den_, k), raw_tag{});
    }

    // "p" when the denominator is 1, else "p/q".
    std::string to_string() const {
        if (den_.is_one()) return num_.to_string();
        return num_.to_string() + "/" + den_.to_string();
    }

    double to_double() const {
        namespace mp = boost::multiprecision;
        return mp::cpp_rational(num_.backend(), den_.backend())
            .convert_to<double>();
    }

   private:
    struct raw_tag {};
    // Bypasses normalization for values already in reduced form.
    Rational(Integer num, Integer den, raw_tag)
        : num_(std::move(num)), den_(std::move(den)) {}

    void normalize() {
        if (den_.is_zero()) throw DomainError("rational with denominator 0");
        if (num_.is_zero()) {
            den_ = Integer(1);
            return;
        }
        if (den_.sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        Integer g = gcd(num_, den_);
        if (!g.is_one()) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
    }

    Integer num_;
    Integer den_;
};

}  // namespace cubsym
