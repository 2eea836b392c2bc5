#include "adelic/rational.hpp"

#include <cmath>
#include <ostream>

#include "adelic/errors.hpp"

namespace adelic {

Rational::Rational(long n, long d) : v_(static_cast<signed long>(n), static_cast<signed long>(d)) {
    if (d == 0) throw argument_error("Rational: zero denominator");
    v_.canonicalize();
}

Rational::Rational(const Integer& n, const Integer& d) : v_(n, d) {
    if (sgn(d) == 0) throw argument_error("Rational: zero denominator");
    v_.canonicalize();
}

Rational::Rational(const mpq_class& q) : v_(q) {
    if (sgn(q.get_den()) == 0) throw argument_error("Rational: zero denominator");
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw argument_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw argument_error("Rational: empty literal");
    int sign = 1;
    std::size_t at = 0;
    while (at < s.size() && (s[at] == '+' || s[at] == '-')) {
        if (s[at] == '-') sign = -sign;
        ++at;
    }
    s = s.substr(at);
    if (s.empty()) throw argument_error("Rational: malformed literal '" + text + "'");
    auto slash = s.find('/');
    try {
        Rational r = slash == std::string::npos
                         ? Rational(Integer(s))
                         : Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
        return sign < 0 ? -r : r;
    } catch (const std::invalid_argument&) {
        throw argument_error("Rational: malformed literal '" + text + "'");
    }
}

Rational Rational::from_double(double x) {
    if (!std::isfinite(x)) throw argument_error("Rational: non-finite double");
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), x);
    return Rational(std::move(q), canonical_tag{});
}

double Rational::to_double() const { return v_.get_d(); }

std::string Rational::str() const {
    if (is_integer()) return num().get_str();
    return num().get_str() + "/" + den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }

Rational pow(const Rational& q, long e) {
    if (e == 0) return Rational(1);
    if (q.is_zero()) {
        if (e < 0) throw argument_error("Rational: 0 to a negative power");
        return Rational(0);
    }
    mpz_class n, d;
    unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(n.get_mpz_t(), q.num().get_mpz_t(), ae);
    mpz_pow_ui(d.get_mpz_t(), q.den().get_mpz_t(), ae);
    return e > 0 ? Rational(n, d) : Rational(d, n);
}

double log_rational(const Rational& q) {
    if (q.sign() <= 0) throw argument_error("log_rational: non-positive argument");
    // mantissa-exponent split keeps this valid when num/den exceed double range
    signed long en = 0, ed = 0;
    double mn = mpz_get_d_2exp(&en, q.num().get_mpz_t());
    double md = mpz_get_d_2exp(&ed, q.den().get_mpz_t());
    return std::log(mn) - std::log(md) + (static_cast<double>(en) - static_cast<double>(ed)) * M_LN2;
}

} // namespace adelic
