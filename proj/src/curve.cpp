#include "adelic/curve.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "adelic/arith.hpp"
#include "adelic/errors.hpp"
#include "adelic/quadrature.hpp"
#include "adelic/roots.hpp"

namespace adelic {

void IntegrationConfig::validate() const {
    if (nodes < 16 || (nodes & (nodes - 1)) != 0)
        throw argument_error("IntegrationConfig: nodes must be a power of two >= 16");
    if (!(clearance > 0.0)) throw argument_error("IntegrationConfig: clearance must be positive");
    if (!(tolerance > 0.0)) throw argument_error("IntegrationConfig: tolerance must be positive");
}

AdelicCurve::AdelicCurve(std::variant<RationalCurveTag, QuadraticCurveTag, NevanlinnaCurveTag> kind,
                         IntegrationConfig cfg)
    : kind_(std::move(kind)), cfg_(cfg) {
    cfg_.validate();
}

AdelicCurve AdelicCurve::rational(IntegrationConfig cfg) { return AdelicCurve(RationalCurveTag{}, cfg); }

AdelicCurve AdelicCurve::quadratic(long d, IntegrationConfig cfg) {
    check_quadratic_d(d);
    return AdelicCurve(QuadraticCurveTag{d}, cfg);
}

AdelicCurve AdelicCurve::nevanlinna(Rational R, IntegrationConfig cfg) {
    if (!(R > Rational(0))) throw argument_error("AdelicCurve: R must be positive");
    return AdelicCurve(NevanlinnaCurveTag{std::move(R)}, cfg);
}

long AdelicCurve::quadratic_d() const {
    if (const auto* q = std::get_if<QuadraticCurveTag>(&kind_)) return q->d;
    throw argument_error("AdelicCurve: not a quadratic curve");
}

const Rational& AdelicCurve::radius() const {
    if (const auto* n = std::get_if<NevanlinnaCurveTag>(&kind_)) return n->R;
    throw argument_error("AdelicCurve: not a Nevanlinna curve");
}

std::string AdelicCurve::describe() const {
    if (is_rational()) return "rational";
    if (is_quadratic()) return "quadratic(d=" + std::to_string(quadratic_d()) + ")";
    return "nevanlinna(R=" + radius().str() + ")";
}

// ---------------------------------------------------------------------------
// Support
// ---------------------------------------------------------------------------

std::vector<std::pair<Place, double>> support_places(const AdelicCurve& curve, const Rational& f) {
    if (!curve.is_rational()) throw argument_error("support_places: rational value needs the rational curve");
    if (f.is_zero()) throw argument_error("support_places: zero element");
    std::map<Integer, int> expo = factor(f.num());
    for (const auto& [p, e] : factor(f.den())) expo[p] -= e;
    std::vector<std::pair<Place, double>> out;
    for (const auto& [p, e] : expo)
        if (e != 0) out.emplace_back(Place(RationalFinite{p}), 1.0);
    return out;
}

namespace {

struct InteriorRoot {
    ComplexRoot root;
    int ord; // ord(f, z): +mult for zeros, -mult for poles
};

// zeros and poles of f strictly inside |z| < R; guard near the circle
std::vector<InteriorRoot> interior_roots(const RationalFunction& f, double R, double clearance) {
    std::vector<InteriorRoot> out;
    auto scan = [&](const Polynomial& part, int sign) {
        if (part.degree() <= 0) return;
        for (const ComplexRoot& r : roots(part)) {
            double dist = std::abs(std::abs(r.location) - R);
            if (dist < clearance) {
                char msg[128];
                std::snprintf(msg, sizeof msg, "zero/pole within clearance %g of the circle |z| = %g; perturb R and retry",
                              clearance, R);
                throw numerical_guard_error(msg);
            }
            if (std::abs(r.location) < R) out.push_back({r, sign * r.multiplicity});
        }
    };
    scan(f.num(), +1);
    scan(f.den(), -1);
    return out;
}

} // namespace

double circle_clearance(const RationalFunction& f, double R) {
    double best = std::numeric_limits<double>::infinity();
    for (const Polynomial* part : {&f.num(), &f.den()}) {
        if (part->degree() <= 0) continue;
        for (const ComplexRoot& r : roots(*part)) best = std::min(best, std::abs(std::abs(r.location) - R));
    }
    return best;
}

std::vector<std::pair<Place, double>> support_places(const AdelicCurve& curve, const RationalFunction& f) {
    if (!curve.is_nevanlinna()) throw argument_error("support_places: meromorphic value needs a Nevanlinna curve");
    if (f.is_zero()) throw argument_error("support_places: zero element");
    double R = curve.radius().to_double();
    std::vector<std::pair<Place, double>> out;
    for (const InteriorRoot& ir : interior_roots(f, R, curve.config().clearance)) {
        double az = std::abs(ir.root.location);
        double weight = az == 0.0 ? std::log(R) : std::log(R / az);
        if (ir.root.exact) {
            out.emplace_back(Place(NevanlinnaInterior{*ir.root.exact, curve.radius()}), weight);
        } else {
            // non-exact root: the double location converts to an exact rational
            auto approx = GaussianRational(Rational::from_double(ir.root.location.real()),
                                           Rational::from_double(ir.root.location.imag()));
            out.emplace_back(Place(NevanlinnaInterior{approx, curve.radius()}), weight);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Defect
// ---------------------------------------------------------------------------

DefectReport defect(const AdelicCurve& curve, const Rational& f) {
    if (!curve.is_rational()) throw argument_error("defect: rational value needs the rational curve");
    if (f.is_zero()) throw argument_error("defect: zero element");
    DefectReport rep;
    std::map<Integer, long> expo;
    for (const auto& [p, e] : factor(f.num())) expo[p] += e;
    for (const auto& [p, e] : factor(f.den())) expo[p] -= e;

    std::vector<double> discrete;
    for (const auto& [p, e] : expo)
        if (e != 0) discrete.push_back(-static_cast<double>(e) * log_rational(Rational(p)));
    rep.discrete_part = pairwise_sum(discrete);
    rep.boundary_part = log_rational(abs(f));
    rep.total = rep.discrete_part + rep.boundary_part;
    rep.reference = 0.0;
    rep.gap = rep.total;
    // symbolic bookkeeping: the complete factorization reassembles |f| exactly,
    // so the prime exponents cancel against the archimedean term identically
    rep.exact = true;
    return rep;
}

double boundary_log_mean(const RationalFunction& f, const Rational& R, const IntegrationConfig& cfg) {
    cfg.validate();
    if (f.is_zero()) throw argument_error("boundary_log_mean: zero element");
    double Rd = R.to_double();
    if (circle_clearance(f, Rd) < cfg.clearance)
        throw numerical_guard_error("zero/pole within clearance of the circle |z| = " + R.str() +
                                    "; perturb R and retry");
    return circle_mean(cfg.nodes, [&](double theta) {
        std::complex<double> z = Rd * std::complex<double>(std::cos(theta), std::sin(theta));
        return std::log(std::abs(f.eval(z)));
    });
}

DefectReport defect(const AdelicCurve& curve, const RationalFunction& f) {
    if (!curve.is_nevanlinna()) throw argument_error("defect: meromorphic value needs a Nevanlinna curve");
    if (f.is_zero()) throw argument_error("defect: zero element");
    const IntegrationConfig& cfg = curve.config();
    double R = curve.radius().to_double();

    DefectReport rep;
    std::vector<double> discrete;
    for (const InteriorRoot& ir : interior_roots(f, R, cfg.clearance)) {
        double az = std::abs(ir.root.location);
        double weight = az == 0.0 ? std::log(R) : std::log(R / az);
        discrete.push_back(-static_cast<double>(ir.ord) * weight);
    }
    rep.discrete_part = pairwise_sum(discrete);
    rep.boundary_part = boundary_log_mean(f, curve.radius(), cfg);
    rep.total = rep.discrete_part + rep.boundary_part;
    GaussianRational c = laurent_leading(f, GaussianRational(0));
    rep.reference = 0.5 * log_rational(c.norm());
    rep.gap = rep.total - *rep.reference;
    return rep;
}

DefectReport defect_quadratic(long d, const QuadraticElement& f, IntegrationConfig cfg) {
    check_quadratic_d(d);
    if (f.d != d) throw argument_error("defect_quadratic: field mismatch");
    if (f.is_zero()) throw argument_error("defect_quadratic: zero element");
    Rational N = f.norm();

    std::map<Integer, long> expo;
    for (const auto& [p, e] : factor(N.num())) expo[p] += e;
    for (const auto& [p, e] : factor(N.den())) expo[p] -= e;

    DefectReport rep;
    std::vector<double> discrete;
    for (const auto& [p, e] : expo) {
        if (e == 0) continue;
        for (const WeightedPlace& wp : split_rational_place(d, Place(RationalFinite{p})))
            discrete.push_back(wp.weight.to_double() * log_pav_eval(wp.place, f));
    }
    rep.discrete_part = pairwise_sum(discrete);

    std::vector<double> arch;
    for (const WeightedPlace& wp : split_rational_place(d, Place(RationalInfinite{})))
        arch.push_back(wp.weight.to_double() * log_pav_eval(wp.place, f));
    rep.boundary_part = pairwise_sum(arch);
    rep.total = rep.discrete_part + rep.boundary_part;

    AdelicCurve base = AdelicCurve::rational(cfg);
    rep.reference = 0.5 * defect(base, N).total;
    rep.gap = rep.total - *rep.reference;
    return rep;
}

std::vector<FamilyDefectRow> family_defect(const RationalFunction& f, const std::vector<Rational>& R_grid,
                                           IntegrationConfig cfg) {
    if (f.is_zero()) throw argument_error("family_defect: zero element");
    std::vector<FamilyDefectRow> rows;
    for (const Rational& R : R_grid) {
        FamilyDefectRow row;
        row.R = R;
        try {
            row.report = defect(AdelicCurve::nevanlinna(R, cfg), f);
        } catch (const numerical_guard_error& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace adelic
