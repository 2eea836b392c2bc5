#include "adelic/rational_function.hpp"

#include <limits>
#include <ostream>

#include "adelic/errors.hpp"

namespace adelic {

RationalFunction::RationalFunction(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw argument_error("RationalFunction: zero denominator");
    if (num.is_zero()) {
        num_ = Polynomial{};
        den_ = Polynomial(GaussianRational(1));
        return;
    }
    Polynomial g = gcd(num, den);
    if (g.degree() > 0) {
        num = divmod(num, g).first;
        den = divmod(den, g).first;
    }
    GaussianRational lead_inv = GaussianRational(1) / den.leading();
    num_ = lead_inv * num;
    den_ = lead_inv * den;
}

int RationalFunction::map_degree() const { return std::max(num_.degree(), den_.degree()); }

std::complex<double> RationalFunction::eval(const std::complex<double>& z) const {
    std::complex<double> n = num_.eval(z), d = den_.eval(z);
    if (d == std::complex<double>(0.0, 0.0)) {
        double inf = std::numeric_limits<double>::infinity();
        return {inf, 0.0};
    }
    return n / d;
}

GaussianRational RationalFunction::eval_exact(const GaussianRational& z) const {
    GaussianRational d = den_.eval(z);
    if (d.is_zero()) throw argument_error("RationalFunction: exact evaluation at a pole");
    return num_.eval(z) / d;
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
    return *this = RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) {
    return *this = RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
    return *this = RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
    if (o.is_zero()) throw argument_error("RationalFunction: division by zero");
    return *this = RationalFunction(num_ * o.den_, den_ * o.num_);
}

std::string RationalFunction::str() const {
    if (den_.degree() == 0) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

std::ostream& operator<<(std::ostream& os, const RationalFunction& f) { return os << f.str(); }

int ord_at(const RationalFunction& f, const GaussianRational& z0) {
    if (f.is_zero()) throw argument_error("ord_at: zero function");
    return multiplicity_at(f.num(), z0) - multiplicity_at(f.den(), z0);
}

GaussianRational laurent_leading(const RationalFunction& f, const GaussianRational& z0) {
    if (f.is_zero()) throw argument_error("laurent_leading: zero function");
    Polynomial linear(std::vector<GaussianRational>{-z0, GaussianRational(1)});
    Polynomial n = f.num(), d = f.den();
    // peel off the exact power of (z - z0) from both sides
    while (n.eval(z0).is_zero()) n = divmod(n, linear).first;
    while (d.eval(z0).is_zero()) d = divmod(d, linear).first;
    return n.eval(z0) / d.eval(z0);
}

} // namespace adelic
