#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace adelic {

using Integer = mpz_class;

/// Arbitrary-precision rational. Always in lowest terms, denominator > 0,
/// zero represented as 0/1.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(static_cast<signed long>(n)) {}
    Rational(const Integer& n) : v_(n) {}
    Rational(long n, long d);
    Rational(const Integer& n, const Integer& d);
    explicit Rational(const mpq_class& q);

    // Parses "a", "a/b", optionally signed. Throws argument_error on malformed input.
    static Rational parse(const std::string& text);

    // Exact conversion of a finite double (every double is a rational).
    static Rational from_double(double x);

    const Integer& num() const { return v_.get_num(); }
    const Integer& den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    double to_double() const;
    std::string str() const;

    Rational operator-() const { return Rational(mpq_class(-v_), canonical_tag{}); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& q);

private:
    struct canonical_tag {};
    Rational(mpq_class q, canonical_tag) : v_(std::move(q)) {}
    mpq_class v_;
};

Rational abs(const Rational& q);
Rational pow(const Rational& q, long e);

/// log of a positive rational, stable for operands far outside double range.
double log_rational(const Rational& q);

} // namespace adelic
