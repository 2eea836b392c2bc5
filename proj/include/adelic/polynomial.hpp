#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "adelic/gaussian.hpp"

namespace adelic {

/// Univariate polynomial over Q(i) in the variable z, dense coefficients
/// (index = power), no trailing zero coefficients.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(GaussianRational constant);
    explicit Polynomial(std::vector<GaussianRational> coeffs);

    static Polynomial variable(); // z
    static Polynomial monomial(GaussianRational c, int power);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    const GaussianRational& leading() const;
    const std::vector<GaussianRational>& coeffs() const { return c_; }
    GaussianRational coeff(int k) const;
    bool has_real_coeffs() const;

    GaussianRational eval(const GaussianRational& z) const;
    std::complex<double> eval(const std::complex<double>& z) const;

    Polynomial derivative() const;
    Polynomial monic() const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    friend Polynomial operator*(const GaussianRational& c, const Polynomial& p);

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const Polynomial& p);
    std::string str() const;

private:
    void trim();
    std::vector<GaussianRational> c_;
};

// Euclidean division: a = q*b + r with deg r < deg b. b must be nonzero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);

// Monic gcd; gcd(0,0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

// Multiplicity of z0 as a root of p (0 if not a root). p must be nonzero.
int multiplicity_at(const Polynomial& p, const GaussianRational& z0);

// Yun squarefree decomposition: p = lc * prod f_k^k with the f_k monic,
// squarefree, pairwise coprime. Returned as (f_k, k) pairs, constant factors
// dropped. p must be nonzero.
std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& p);

} // namespace adelic
