#include "adelic/expr.hpp"

#include <cctype>

#include "adelic/errors.hpp"

namespace adelic {

namespace {

struct Parser {
    std::string s;
    std::size_t pos = 0;

    explicit Parser(const std::string& text) {
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    }

    bool done() const { return pos >= s.size(); }
    char peek() const { return done() ? '\0' : s[pos]; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw argument_error("expression: " + msg + " at position " + std::to_string(pos) + " in '" + s + "'");
    }

    RationalFunction parse() {
        if (done()) fail("empty expression");
        RationalFunction r = expr();
        if (!done()) fail("trailing input");
        return r;
    }

    RationalFunction expr() {
        RationalFunction acc = peek() == '-' || peek() == '+' ? RationalFunction(0) : term();
        while (!done() && (peek() == '+' || peek() == '-')) {
            char op = s[pos++];
            RationalFunction rhs = term();
            if (op == '+')
                acc += rhs;
            else
                acc -= rhs;
        }
        return acc;
    }

    bool starts_factor() const {
        char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == 'z' || c == 'i' || c == '(';
    }

    RationalFunction term() {
        RationalFunction acc = factor();
        while (!done()) {
            if (peek() == '*' || peek() == '/') {
                char op = s[pos++];
                RationalFunction rhs = factor();
                if (op == '*')
                    acc *= rhs;
                else {
                    if (rhs.is_zero()) fail("division by zero");
                    acc /= rhs;
                }
            } else if (starts_factor()) { // implicit multiplication
                acc *= factor();
            } else {
                break;
            }
        }
        return acc;
    }

    RationalFunction factor() {
        RationalFunction base = atom();
        if (!done() && peek() == '^') {
            ++pos;
            bool neg = false;
            if (peek() == '-') {
                neg = true;
                ++pos;
            }
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer exponent");
            long e = 0;
            while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
                e = e * 10 + (s[pos++] - '0');
                if (e > 64) fail("exponent too large");
            }
            RationalFunction r(1);
            for (long k = 0; k < e; ++k) r *= base;
            if (neg) {
                if (r.is_zero()) fail("division by zero");
                r = RationalFunction(1) / r;
            }
            return r;
        }
        return base;
    }

    RationalFunction atom() {
        if (done()) fail("unexpected end of input");
        char c = peek();
        if (c == '(') {
            ++pos;
            RationalFunction r = expr();
            if (peek() != ')') fail("expected ')'");
            ++pos;
            return r;
        }
        if (c == 'z') {
            ++pos;
            return RationalFunction::variable();
        }
        if (c == 'i') {
            ++pos;
            return RationalFunction(GaussianRational::i());
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) digits.push_back(s[pos++]);
            return RationalFunction(GaussianRational(Rational(Integer(digits))));
        }
        if (c == '-') {
            ++pos;
            return -factor();
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }
};

} // namespace

RationalFunction parse_rational_function(const std::string& text) {
    return Parser(text).parse();
}

} // namespace adelic
