#include "adelic/gaussian.hpp"

#include <cctype>
#include <ostream>

#include "adelic/errors.hpp"

namespace adelic {

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw argument_error("GaussianRational: division by zero");
    Rational n = o.norm();
    GaussianRational c = o.conj();
    *this *= c;
    re /= n;
    im /= n;
    return *this;
}

namespace {

// One signed term of the form "a", "a/b", "i", "a i", "a/b i".
struct Term {
    Rational coeff;
    bool imaginary = false;
};

Term parse_term(const std::string& s) {
    if (s.empty()) throw argument_error("GaussianRational: empty term");
    Term t;
    std::string body = s;
    if (body.back() == 'i' || body.back() == 'I') {
        t.imaginary = true;
        body.pop_back();
        if (body.empty() || body == "+") {
            t.coeff = Rational(1);
            return t;
        }
        if (body == "-") {
            t.coeff = Rational(-1);
            return t;
        }
        if (body.back() == '*') body.pop_back();
    }
    t.coeff = Rational::parse(body);
    return t;
}

} // namespace

GaussianRational GaussianRational::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw argument_error("GaussianRational: empty literal");

    GaussianRational out;
    std::size_t start = 0;
    for (std::size_t pos = 1; pos <= s.size(); ++pos) {
        bool split = pos == s.size();
        if (!split && (s[pos] == '+' || s[pos] == '-')) {
            char prev = s[pos - 1];
            split = prev != '/' && prev != '+' && prev != '-';
        }
        if (!split) continue;
        Term t = parse_term(s.substr(start, pos - start));
        if (t.imaginary)
            out.im += t.coeff;
        else
            out.re += t.coeff;
        start = pos;
    }
    return out;
}

std::string GaussianRational::str() const {
    if (im.is_zero()) return re.str();
    std::string imag = adelic::abs(im).str() + " i";
    if (re.is_zero()) return (im.sign() < 0 ? "-" : "") + imag;
    return re.str() + (im.sign() < 0 ? "-" : "+") + imag;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }

} // namespace adelic
