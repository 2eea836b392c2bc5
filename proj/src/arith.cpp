#include "adelic/arith.hpp"

#include "adelic/errors.hpp"

namespace adelic {

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

long integer_valuation(const Integer& n, const Integer& p) {
    if (sgn(n) == 0) throw argument_error("integer_valuation: zero argument");
    Integer m = ::abs(n);
    return static_cast<long>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t()));
}

namespace {

Integer rho_step(const Integer& x, const Integer& c, const Integer& n) {
    Integer y = (x * x + c) % n;
    return y;
}

// Brent's cycle variant of Pollard rho; n odd composite, not a prime power issue here.
Integer pollard_rho(const Integer& n) {
    if (n % 2 == 0) return 2;
    Integer c(1);
    while (true) {
        Integer x(2), y(2), d(1);
        Integer saved_x = x;
        unsigned long power = 1, lam = 0;
        while (d == 1) {
            if (lam == power) {
                saved_x = y;
                power *= 2;
                lam = 0;
            }
            y = rho_step(y, c, n);
            ++lam;
            Integer diff = saved_x - y;
            if (sgn(diff) == 0) break; // cycle without factor, retry with new c
            mpz_gcd(d.get_mpz_t(), Integer(::abs(diff)).get_mpz_t(), n.get_mpz_t());
        }
        if (d > 1 && d < n) return d;
        c += 1;
    }
}

void factor_into(const Integer& n, std::map<Integer, int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    Integer d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace

std::map<Integer, int> factor(const Integer& n) {
    if (sgn(n) == 0) throw argument_error("factor: zero argument");
    std::map<Integer, int> out;
    Integer m = ::abs(n);
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
        Integer P(p);
        while (m % P == 0) {
            out[P] += 1;
            m /= P;
        }
    }
    if (m > 1) factor_into(m, out);
    return out;
}

std::optional<long> padic_valuation(const Rational& q, const Integer& p) {
    if (!is_prime(p)) throw argument_error("padic_valuation: p = " + p.get_str() + " is not prime");
    if (q.is_zero()) return std::nullopt;
    return integer_valuation(q.num(), p) - integer_valuation(q.den(), p);
}

int kronecker(const Integer& a, const Integer& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

bool is_squarefree(const Integer& n) {
    if (sgn(n) == 0) return false;
    for (const auto& [p, e] : factor(n))
        if (e > 1) return false;
    return true;
}

Integer sqrt_mod_prime_power(const Integer& a, const Integer& p, unsigned k) {
    if (p == 2) throw argument_error("sqrt_mod_prime_power: p must be odd");
    Integer a0 = a % p;
    if (sgn(a0) < 0) a0 += p;
    if (sgn(a0) == 0 || kronecker(a, p) != 1)
        throw argument_error("sqrt_mod_prime_power: not a unit square mod p");

    // Tonelli-Shanks mod p
    Integer q = p - 1;
    unsigned s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    Integer z(2);
    while (kronecker(z, p) != -1) z += 1;
    Integer m(static_cast<long>(s)), c, t, r, exp = (q + 1) / 2;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), a0.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_powm(r.get_mpz_t(), a0.get_mpz_t(), exp.get_mpz_t(), p.get_mpz_t());
    while (t != 1) {
        Integer tt = t;
        long i = 0;
        while (tt != 1) {
            tt = (tt * tt) % p;
            ++i;
        }
        Integer b = c;
        for (long j = 0; j < m.get_si() - i - 1; ++j) b = (b * b) % p;
        m = i;
        c = (b * b) % p;
        t = (t * c) % p;
        r = (r * b) % p;
    }

    // Hensel lift to p^k
    Integer mod = p;
    Integer root = r;
    unsigned have = 1;
    while (have < k) {
        unsigned next = std::min(2 * have, k);
        Integer mod_next;
        mpz_pow_ui(mod_next.get_mpz_t(), p.get_mpz_t(), next);
        // root' = root - (root^2 - a) / (2 root) mod p^next
        Integer f = (root * root - a) % mod_next;
        Integer two_root = (2 * root) % mod_next;
        Integer inv;
        if (mpz_invert(inv.get_mpz_t(), two_root.get_mpz_t(), mod_next.get_mpz_t()) == 0)
            throw argument_error("sqrt_mod_prime_power: lift failed");
        root = (root - f * inv) % mod_next;
        if (sgn(root) < 0) root += mod_next;
        mod = mod_next;
        have = next;
    }
    return root;
}

} // namespace adelic
