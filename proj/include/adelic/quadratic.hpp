#pragma once

#include <iosfwd>
#include <string>

#include "adelic/rational.hpp"

namespace adelic {

/// Element a + b*sqrt(d) of the quadratic field Q(sqrt(d)), d squarefree, d != 0, 1.
struct QuadraticElement {
    long d = -1;
    Rational a;
    Rational b;

    QuadraticElement() = default;
    QuadraticElement(long d_, Rational a_, Rational b_) : d(d_), a(std::move(a_)), b(std::move(b_)) {}

    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    bool is_rational() const { return b.is_zero(); }

    QuadraticElement conj() const { return {d, a, -b}; }
    Rational norm() const { return a * a - Rational(d) * b * b; } // N(a + b sqrt d)
    Rational trace() const { return a + a; }

    QuadraticElement operator-() const { return {d, -a, -b}; }
    QuadraticElement& operator+=(const QuadraticElement& o);
    QuadraticElement& operator-=(const QuadraticElement& o);
    QuadraticElement& operator*=(const QuadraticElement& o);
    QuadraticElement& operator/=(const QuadraticElement& o);

    friend QuadraticElement operator+(QuadraticElement x, const QuadraticElement& y) { return x += y; }
    friend QuadraticElement operator-(QuadraticElement x, const QuadraticElement& y) { return x -= y; }
    friend QuadraticElement operator*(QuadraticElement x, const QuadraticElement& y) { return x *= y; }
    friend QuadraticElement operator/(QuadraticElement x, const QuadraticElement& y) { return x /= y; }

    friend bool operator==(const QuadraticElement& x, const QuadraticElement& y) {
        return x.d == y.d && x.a == y.a && x.b == y.b;
    }
    friend bool operator!=(const QuadraticElement& x, const QuadraticElement& y) { return !(x == y); }

    // "a", "a/b", "a+b s" with s the formal square root written as "s" or "sqrt(d)".
    static QuadraticElement parse(long d, const std::string& text);
    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const QuadraticElement& x);
};

void check_quadratic_d(long d);

} // namespace adelic
