#include "adelic/quadratic.hpp"

#include <cctype>
#include <ostream>

#include "adelic/arith.hpp"
#include "adelic/errors.hpp"

namespace adelic {

void check_quadratic_d(long d) {
    if (d == 0 || d == 1) throw argument_error("quadratic field: d must differ from 0 and 1");
    if (!is_squarefree(Integer(d))) throw argument_error("quadratic field: d must be squarefree");
}

namespace {
void check_same_field(const QuadraticElement& x, const QuadraticElement& y) {
    if (x.d != y.d) throw argument_error("QuadraticElement: mixed fields");
}
} // namespace

QuadraticElement& QuadraticElement::operator+=(const QuadraticElement& o) {
    check_same_field(*this, o);
    a += o.a;
    b += o.b;
    return *this;
}

QuadraticElement& QuadraticElement::operator-=(const QuadraticElement& o) {
    check_same_field(*this, o);
    a -= o.a;
    b -= o.b;
    return *this;
}

QuadraticElement& QuadraticElement::operator*=(const QuadraticElement& o) {
    check_same_field(*this, o);
    Rational na = a * o.a + Rational(d) * b * o.b;
    Rational nb = a * o.b + b * o.a;
    a = std::move(na);
    b = std::move(nb);
    return *this;
}

QuadraticElement& QuadraticElement::operator/=(const QuadraticElement& o) {
    check_same_field(*this, o);
    if (o.is_zero()) throw argument_error("QuadraticElement: division by zero");
    Rational n = o.norm();
    *this *= o.conj();
    a /= n;
    b /= n;
    return *this;
}

QuadraticElement QuadraticElement::parse(long d, const std::string& text) {
    check_quadratic_d(d);
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw argument_error("QuadraticElement: empty literal");

    QuadraticElement out(d, Rational(0), Rational(0));
    std::size_t start = 0;
    for (std::size_t pos = 1; pos <= s.size(); ++pos) {
        bool split = pos == s.size();
        if (!split && (s[pos] == '+' || s[pos] == '-')) {
            char prev = s[pos - 1];
            split = prev != '/' && prev != '+' && prev != '-' && prev != '(';
        }
        if (!split) continue;
        std::string term = s.substr(start, pos - start);
        start = pos;
        bool radical = false;
        for (const std::string& suffix : {std::string("sqrt(") + std::to_string(d) + ")", std::string("s")}) {
            if (term.size() >= suffix.size() && term.compare(term.size() - suffix.size(), suffix.size(), suffix) == 0) {
                radical = true;
                term.erase(term.size() - suffix.size());
                break;
            }
        }
        Rational coeff;
        if (radical) {
            if (!term.empty() && term.back() == '*') term.pop_back();
            if (term.empty() || term == "+")
                coeff = Rational(1);
            else if (term == "-")
                coeff = Rational(-1);
            else
                coeff = Rational::parse(term);
        } else {
            coeff = Rational::parse(term);
        }
        if (radical)
            out.b += coeff;
        else
            out.a += coeff;
    }
    return out;
}

std::string QuadraticElement::str() const {
    if (b.is_zero()) return a.str();
    std::string rad = adelic::abs(b).str() + " s";
    if (a.is_zero()) return (b.sign() < 0 ? "-" : "") + rad;
    return a.str() + (b.sign() < 0 ? "-" : "+") + rad;
}

std::ostream& operator<<(std::ostream& os, const QuadraticElement& x) { return os << x.str(); }

} // namespace adelic
