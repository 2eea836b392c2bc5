#include "adelic/polynomial.hpp"

#include <ostream>
#include <sstream>

#include "adelic/errors.hpp"

namespace adelic {

Polynomial::Polynomial(GaussianRational constant) {
    if (!constant.is_zero()) c_.push_back(std::move(constant));
}

Polynomial::Polynomial(std::vector<GaussianRational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::variable() {
    return Polynomial(std::vector<GaussianRational>{GaussianRational(0), GaussianRational(1)});
}

Polynomial Polynomial::monomial(GaussianRational c, int power) {
    if (c.is_zero()) return {};
    std::vector<GaussianRational> v(static_cast<std::size_t>(power) + 1);
    v.back() = std::move(c);
    return Polynomial(std::move(v));
}

void Polynomial::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const GaussianRational& Polynomial::leading() const {
    if (c_.empty()) throw argument_error("Polynomial: leading coefficient of zero");
    return c_.back();
}

GaussianRational Polynomial::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return GaussianRational(0);
    return c_[static_cast<std::size_t>(k)];
}

bool Polynomial::has_real_coeffs() const {
    for (const auto& c : c_)
        if (!c.im.is_zero()) return false;
    return true;
}

GaussianRational Polynomial::eval(const GaussianRational& z) const {
    GaussianRational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

std::complex<double> Polynomial::eval(const std::complex<double>& z) const {
    std::complex<double> acc(0.0, 0.0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + it->to_complex();
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<GaussianRational> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = GaussianRational(Rational(static_cast<long>(k))) * c_[k];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return {};
    GaussianRational inv = GaussianRational(1) / leading();
    return inv * *this;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<GaussianRational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
}

Polynomial operator*(const GaussianRational& c, const Polynomial& p) {
    if (c.is_zero()) return {};
    Polynomial r = p;
    for (auto& x : r.c_) x *= c;
    return r;
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw argument_error("Polynomial: division by zero polynomial");
    Polynomial r = a;
    if (a.degree() < b.degree()) return {Polynomial{}, std::move(r)};
    std::vector<GaussianRational> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
    GaussianRational lead_inv = GaussianRational(1) / b.leading();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int shift = r.degree() - b.degree();
        GaussianRational c = r.leading() * lead_inv;
        q[static_cast<std::size_t>(shift)] = c;
        r -= Polynomial::monomial(c, shift) * b;
    }
    return {Polynomial(std::move(q)), std::move(r)};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial x = a, y = b;
    while (!y.is_zero()) {
        Polynomial r = divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
        if (!y.is_zero()) y = y.monic(); // keep coefficient growth in check
    }
    if (x.is_zero()) return {};
    return x.monic();
}

int multiplicity_at(const Polynomial& p, const GaussianRational& z0) {
    if (p.is_zero()) throw argument_error("multiplicity_at: zero polynomial");
    Polynomial linear(std::vector<GaussianRational>{-z0, GaussianRational(1)});
    Polynomial cur = p;
    int m = 0;
    if (!cur.eval(z0).is_zero()) return 0;
    while (true) {
        auto [q, r] = divmod(cur, linear);
        if (!r.is_zero()) break;
        ++m;
        cur = std::move(q);
        if (cur.is_zero() || !cur.eval(z0).is_zero()) break;
    }
    return m;
}

std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& p) {
    if (p.is_zero()) throw argument_error("squarefree_decomposition: zero polynomial");
    std::vector<std::pair<Polynomial, int>> out;
    if (p.degree() == 0) return out;
    Polynomial a = p.monic();
    Polynomial g = gcd(a, a.derivative());
    Polynomial w = divmod(a, g).first; // product of distinct factors
    int k = 1;
    while (w.degree() > 0) {
        Polynomial y = gcd(w, g);
        Polynomial f = divmod(w, y).first; // factors of exact multiplicity k
        if (f.degree() > 0) out.emplace_back(f.monic(), k);
        w = std::move(y);
        g = divmod(g, w).first;
        ++k;
    }
    return out;
}

std::string Polynomial::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        GaussianRational c = coeff(k);
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (k == 0 || c != GaussianRational(1)) {
            bool needs_parens = !c.im.is_zero() && !c.re.is_zero();
            if (needs_parens) os << "(";
            os << c.str();
            if (needs_parens) os << ")";
            if (k > 0) os << "*";
        }
        if (k == 1)
            os << "z";
        else if (k > 1)
            os << "z^" << k;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

} // namespace adelic
