#pragma once

#include <map>
#include <optional>

#include "adelic/rational.hpp"

namespace adelic {

bool is_prime(const Integer& n);

/// Complete factorization of |n| (n != 0): prime -> exponent.
/// Trial division plus Brent-Pollard rho; cofactors certified prime by GMP.
std::map<Integer, int> factor(const Integer& n);

/// v_p(q). Empty optional encodes v_p(0) = +infinity. Throws on non-prime p.
std::optional<long> padic_valuation(const Rational& q, const Integer& p);

/// v_p(n) for a nonzero integer (no primality check on p; p >= 2 assumed).
long integer_valuation(const Integer& n, const Integer& p);

/// Kronecker symbol (a | n).
int kronecker(const Integer& a, const Integer& n);

bool is_squarefree(const Integer& n);

/// Square root of a mod p^k for odd prime p with (a|p) = 1, p not dividing a.
Integer sqrt_mod_prime_power(const Integer& a, const Integer& p, unsigned k);

} // namespace adelic
