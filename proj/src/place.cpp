#include "adelic/place.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <tuple>

#include "adelic/arith.hpp"
#include "adelic/errors.hpp"
#include "adelic/roots.hpp"

namespace adelic {

namespace {
constexpr double kBoundaryClearance = 1e-8;
}

Place::Place(RationalFinite v) : v_(std::move(v)) {
    const auto& rf = std::get<RationalFinite>(v_);
    if (!is_prime(rf.p)) throw argument_error("Place: p = " + rf.p.get_str() + " is not prime");
}

Place::Place(QuadraticPlace v) : v_(std::move(v)) {
    const auto& q = std::get<QuadraticPlace>(v_);
    check_quadratic_d(q.d);
    if (!q.base_infinite && !is_prime(q.p)) throw argument_error("Place: non-prime base");
    bool two_above = q.kind == SplitKind::Split || q.kind == SplitKind::RealEmbedding;
    if (q.index < 0 || q.index >= (two_above ? 2 : 1))
        throw argument_error("Place: index exceeds the number of places above the base");
}

Place::Place(NevanlinnaInterior v) : v_(std::move(v)) {
    const auto& ni = std::get<NevanlinnaInterior>(v_);
    if (!(ni.R > Rational(0))) throw argument_error("Place: R must be positive");
    if (!(ni.z.norm() < ni.R * ni.R)) throw argument_error("Place: interior point must satisfy |z| < R");
}

Place::Place(NevanlinnaBoundary v) : v_(std::move(v)) {
    const auto& nb = std::get<NevanlinnaBoundary>(v_);
    if (!(nb.R > Rational(0))) throw argument_error("Place: R must be positive");
}

std::string Place::key() const {
    std::ostringstream os;
    std::visit(
        [&](const auto& w) {
            using T = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<T, RationalFinite>) {
                os << "p=" << w.p.get_str();
            } else if constexpr (std::is_same_v<T, RationalInfinite>) {
                os << "inf";
            } else if constexpr (std::is_same_v<T, QuadraticPlace>) {
                os << "quad(d=" << w.d << ",";
                if (w.base_infinite)
                    os << "inf";
                else
                    os << "p=" << w.p.get_str();
                os << ",#" << w.index << ")";
            } else if constexpr (std::is_same_v<T, NevanlinnaInterior>) {
                os << "nev-int(z=" << w.z.str() << ", R=" << w.R.str() << ")";
            } else {
                os << "nev-bnd(R=" << w.R.str() << ")";
            }
        },
        v_);
    return os.str();
}

Place Place::from_key(const std::string& key) {
    if (key == "inf") return Place(RationalInfinite{});
    if (key.rfind("p=", 0) == 0) return Place(RationalFinite{Integer(key.substr(2))});
    if (key.rfind("quad(", 0) == 0 && key.back() == ')') {
        std::string body = key.substr(5, key.size() - 6);
        // d=<d>,<base>,#<index>
        auto c1 = body.find(',');
        auto c2 = body.rfind(',');
        if (c1 == std::string::npos || c2 == c1 || body.rfind("d=", 0) != 0)
            throw argument_error("Place: malformed key '" + key + "'");
        long d = std::stol(body.substr(2, c1 - 2));
        std::string base = body.substr(c1 + 1, c2 - c1 - 1);
        std::string idx = body.substr(c2 + 1);
        if (idx.empty() || idx[0] != '#') throw argument_error("Place: malformed key '" + key + "'");
        int index = std::stoi(idx.substr(1));
        Place base_place = base == "inf" ? Place(RationalInfinite{}) : Place::from_key(base);
        auto above = split_rational_place(d, base_place);
        if (index < 0 || index >= static_cast<int>(above.size()))
            throw argument_error("Place: no place with index " + std::to_string(index) + " above " + base);
        return above[static_cast<std::size_t>(index)].place;
    }
    throw argument_error("Place: unknown key '" + key + "'");
}

namespace {
// comparison keys; theta participates so boundary nodes stay distinct
using CmpKey = std::tuple<std::size_t, std::string, double>;
CmpKey cmp_key(const Place& w) {
    double theta = 0.0;
    if (const auto* nb = w.get_if<NevanlinnaBoundary>()) theta = nb->theta;
    return {w.data().index(), w.key(), theta};
}
} // namespace

bool operator==(const Place& a, const Place& b) { return cmp_key(a) == cmp_key(b); }
bool operator<(const Place& a, const Place& b) { return cmp_key(a) < cmp_key(b); }

std::ostream& operator<<(std::ostream& os, const Place& w) { return os << w.key(); }

double PavValue::log() const {
    if (infinite) return std::numeric_limits<double>::infinity();
    if (value == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(value);
}

bool is_archimedean(const Place& w) {
    if (w.is<RationalInfinite>() || w.is<NevanlinnaBoundary>()) return true;
    if (const auto* q = w.get_if<QuadraticPlace>()) return q->base_infinite;
    return false;
}

// ---------------------------------------------------------------------------
// Evaluation over Q
// ---------------------------------------------------------------------------

PavValue pav_eval(const Place& w, const Rational& f) {
    if (const auto* rf = w.get_if<RationalFinite>()) {
        auto v = padic_valuation(f, rf->p);
        if (!v) return PavValue::finite(0.0);
        return PavValue::finite(std::exp(-static_cast<double>(*v) * log_rational(Rational(rf->p))));
    }
    if (w.is<RationalInfinite>()) {
        return PavValue::finite(std::fabs(f.to_double()));
    }
    throw argument_error("pav_eval: rational argument at a non-rational place");
}

double log_pav_eval(const Place& w, const Rational& f) {
    if (const auto* rf = w.get_if<RationalFinite>()) {
        auto v = padic_valuation(f, rf->p);
        if (!v) return -std::numeric_limits<double>::infinity();
        return -static_cast<double>(*v) * log_rational(Rational(rf->p));
    }
    if (w.is<RationalInfinite>()) {
        if (f.is_zero()) return -std::numeric_limits<double>::infinity();
        return log_rational(abs(f));
    }
    throw argument_error("log_pav_eval: rational argument at a non-rational place");
}

// ---------------------------------------------------------------------------
// Evaluation over Q(sqrt(d))
// ---------------------------------------------------------------------------

Rational quadratic_valuation(const QuadraticPlace& w, const QuadraticElement& f) {
    if (f.is_zero()) throw argument_error("quadratic_valuation: zero element");
    if (f.d != w.d) throw argument_error("quadratic_valuation: field mismatch");
    if (w.base_infinite) throw argument_error("quadratic_valuation: infinite place");
    const Integer& p = w.p;
    switch (w.kind) {
    case SplitKind::Inert:
    case SplitKind::Ramified: {
        long vN = integer_valuation(f.norm().num(), p) - integer_valuation(f.norm().den(), p);
        return Rational(vN, 2L);
    }
    case SplitKind::Split: {
        // embed sqrt(d) into Z_p by a Hensel-lifted square root; index 1 is
        // the conjugate embedding
        if (f.b.is_zero()) {
            long v = integer_valuation(f.a.num(), p) - integer_valuation(f.a.den(), p);
            return Rational(v);
        }
        unsigned prec = 16;
        while (true) {
            Integer s = sqrt_mod_prime_power(Integer(w.d), p, prec);
            if (w.index == 1) {
                Integer mod;
                mpz_pow_ui(mod.get_mpz_t(), p.get_mpz_t(), prec);
                s = mod - s;
            }
            Rational t = f.a + f.b * Rational(s);
            long vb = integer_valuation(f.b.num(), p) - integer_valuation(f.b.den(), p);
            if (t.is_zero()) { // can only happen at low precision
                prec *= 2;
                continue;
            }
            long vt = integer_valuation(t.num(), p) - integer_valuation(t.den(), p);
            if (vt < static_cast<long>(prec) + vb) return Rational(vt);
            prec *= 2;
        }
    }
    default:
        throw argument_error("quadratic_valuation: archimedean kind at finite place");
    }
}

namespace {

double quadratic_arch_log(const QuadraticPlace& w, const QuadraticElement& f) {
    if (f.is_zero()) return -std::numeric_limits<double>::infinity();
    if (w.kind == SplitKind::ComplexEmbedding) {
        // |a + b i sqrt(|d|)| = sqrt(N(f)) for d < 0
        return 0.5 * log_rational(f.norm());
    }
    double sq = std::sqrt(static_cast<double>(w.d));
    double x = f.a.to_double() + (w.index == 0 ? 1.0 : -1.0) * f.b.to_double() * sq;
    return std::log(std::fabs(x));
}

} // namespace

double log_pav_eval(const Place& w, const QuadraticElement& f) {
    const auto* q = w.get_if<QuadraticPlace>();
    if (!q) throw argument_error("log_pav_eval: quadratic argument at a non-quadratic place");
    if (q->d != f.d) throw argument_error("log_pav_eval: quadratic field mismatch");
    if (f.is_zero()) return -std::numeric_limits<double>::infinity();
    if (q->base_infinite) return quadratic_arch_log(*q, f);
    Rational v = quadratic_valuation(*q, f);
    return -v.to_double() * log_rational(Rational(q->p));
}

PavValue pav_eval(const Place& w, const QuadraticElement& f) {
    double lg = log_pav_eval(w, f);
    if (lg == -std::numeric_limits<double>::infinity()) return PavValue::finite(0.0);
    return PavValue::finite(std::exp(lg));
}

// ---------------------------------------------------------------------------
// Evaluation over the meromorphic field
// ---------------------------------------------------------------------------

PavValue pav_eval(const Place& w, const RationalFunction& f) {
    if (const auto* ni = w.get_if<NevanlinnaInterior>()) {
        if (f.is_zero()) return PavValue::finite(0.0);
        return PavValue::finite(std::exp(-static_cast<double>(ord_at(f, ni->z))));
    }
    if (const auto* nb = w.get_if<NevanlinnaBoundary>()) {
        if (f.is_zero()) return PavValue::finite(0.0);
        double R = nb->R.to_double();
        std::complex<double> z = R * std::complex<double>(std::cos(nb->theta), std::sin(nb->theta));
        // an exact hit is a genuine value of the pseudo-absolute value
        std::complex<double> v = f.eval(z);
        if (std::isinf(v.real()) || std::isinf(v.imag())) return PavValue::inf();
        if (std::abs(v) == 0.0) return PavValue::finite(0.0);
        // near-misses are rejected: the log-singularity would poison quadrature
        for (const Polynomial* part : {&f.num(), &f.den()}) {
            if (part->degree() <= 0) continue;
            for (const ComplexRoot& r : roots(*part)) {
                if (std::abs(r.location - z) < kBoundaryClearance)
                    throw numerical_guard_error("pav_eval: zero/pole of f within clearance of the sampling point");
            }
        }
        return PavValue::finite(std::abs(v));
    }
    throw argument_error("pav_eval: meromorphic argument at a non-Nevanlinna place");
}

double log_pav_eval(const Place& w, const RationalFunction& f) {
    return pav_eval(w, f).log();
}

// ---------------------------------------------------------------------------
// Splitting
// ---------------------------------------------------------------------------

std::vector<WeightedPlace> split_rational_place(long d, const Place& base) {
    check_quadratic_d(d);
    std::vector<WeightedPlace> out;
    if (base.is<RationalInfinite>()) {
        if (d > 0) {
            for (int k = 0; k < 2; ++k)
                out.push_back({Place(QuadraticPlace{d, true, Integer(0), SplitKind::RealEmbedding, k}), Rational(1, 2)});
        } else {
            out.push_back({Place(QuadraticPlace{d, true, Integer(0), SplitKind::ComplexEmbedding, 0}), Rational(1)});
        }
        return out;
    }
    const auto* rf = base.get_if<RationalFinite>();
    if (!rf) throw argument_error("split_rational_place: base must be a place of Q");
    const Integer& p = rf->p;
    Integer disc = ((d % 4 + 4) % 4 == 1) ? Integer(d) : Integer(4 * d);
    if (disc % p == 0) {
        out.push_back({Place(QuadraticPlace{d, false, p, SplitKind::Ramified, 0}), Rational(1)});
    } else if (kronecker(Integer(d), p) == 1) {
        for (int k = 0; k < 2; ++k)
            out.push_back({Place(QuadraticPlace{d, false, p, SplitKind::Split, k}), Rational(1, 2)});
    } else {
        out.push_back({Place(QuadraticPlace{d, false, p, SplitKind::Inert, 0}), Rational(1)});
    }
    return out;
}

} // namespace adelic
