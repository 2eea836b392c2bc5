#pragma once

#include <complex>
#include <iosfwd>
#include <string>

#include "adelic/polynomial.hpp"

namespace adelic {

/// Element of Q(i)(z): numerator/denominator coprime, denominator monic,
/// zero represented as 0/1. Canonicalized at construction.
class RationalFunction {
public:
    RationalFunction() : den_(GaussianRational(1)) {}
    RationalFunction(Polynomial num, Polynomial den);
    RationalFunction(const Polynomial& p) : RationalFunction(p, Polynomial(GaussianRational(1))) {}
    RationalFunction(const GaussianRational& c) : RationalFunction(Polynomial(c)) {}
    RationalFunction(long n) : RationalFunction(Polynomial(GaussianRational(n))) {}

    static RationalFunction variable() { return RationalFunction(Polynomial::variable()); }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

    // max(deg num, deg den); the degree of the induced map P1 -> P1 for
    // coprime representations.
    int map_degree() const;

    // Evaluates at a complex point; returns infinity at poles.
    std::complex<double> eval(const std::complex<double>& z) const;

    GaussianRational eval_exact(const GaussianRational& z) const; // throws at poles

    RationalFunction operator-() const;
    RationalFunction& operator+=(const RationalFunction& o);
    RationalFunction& operator-=(const RationalFunction& o);
    RationalFunction& operator*=(const RationalFunction& o);
    RationalFunction& operator/=(const RationalFunction& o);

    friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
    friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
    friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
    friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const RationalFunction& f);

private:
    Polynomial num_;
    Polynomial den_;
};

// Vanishing order of f at z0: mult(numerator) - mult(denominator). f must be nonzero.
int ord_at(const RationalFunction& f, const GaussianRational& z0);

// Leading Laurent coefficient c(f, z0), exact. f must be nonzero.
GaussianRational laurent_leading(const RationalFunction& f, const GaussianRational& z0);

} // namespace adelic
