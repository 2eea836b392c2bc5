#include "adelic/heights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "adelic/arith.hpp"
#include "adelic/errors.hpp"
#include "adelic/quadrature.hpp"
#include "adelic/roots.hpp"

namespace adelic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Quadrature with kink-cell refinement
//
// log+ integrands are continuous but only piecewise smooth; the cells where
// the label changes (sign of log|g|, or the argmax coordinate) are re-integrated
// on a fixed 64-panel subgrid, which restores the accuracy of the periodic
// trapezoid rule on the smooth pieces.
// ---------------------------------------------------------------------------

double refined_circle_mean(int nodes, const std::function<double(double)>& integrand,
                           const std::function<int(double)>& label) {
    const double h = 2.0 * M_PI / static_cast<double>(nodes);
    std::vector<double> vals = evaluate_nodes(nodes, [&](int j) { return integrand(h * j); });
    std::vector<int> labels = [&] {
        std::vector<int> out(static_cast<std::size_t>(nodes));
        for (int j = 0; j < nodes; ++j) out[static_cast<std::size_t>(j)] = label(h * j);
        return out;
    }();

    double mean = pairwise_sum(vals) / static_cast<double>(nodes);

    auto at = [&](int j) { return vals[static_cast<std::size_t>(((j % nodes) + nodes) % nodes)]; };

    constexpr int kPanels = 64;
    std::vector<double> corrections;
    for (int j = 0; j < nodes; ++j) {
        int jn = (j + 1) % nodes;
        if (labels[static_cast<std::size_t>(j)] == labels[static_cast<std::size_t>(jn)]) continue;
        double a = h * j;
        double coarse = 0.5 * (at(j) + at(j + 1)) * h;
        std::vector<double> sub(kPanels + 1);
        sub[0] = at(j);
        sub[kPanels] = at(j + 1);
        for (int m = 1; m < kPanels; ++m) sub[static_cast<std::size_t>(m)] = integrand(a + h * m / kPanels);
        double fine = 0.0;
        for (int m = 0; m < kPanels; ++m)
            fine += 0.5 * (sub[static_cast<std::size_t>(m)] + sub[static_cast<std::size_t>(m + 1)]) * (h / kPanels);
        corrections.push_back(fine - coarse);

        // Euler-Maclaurin endpoint term of the smooth runs flanking this cell:
        // one-sided derivatives at the cell edges from the outside
        double dl = (3.0 * at(j) - 4.0 * at(j - 1) + at(j - 2)) / (2.0 * h);
        double dr = (-3.0 * at(j + 1) + 4.0 * at(j + 2) - at(j + 3)) / (2.0 * h);
        corrections.push_back(-h * h / 12.0 * (dl - dr));
    }
    return mean + pairwise_sum(corrections) / (2.0 * M_PI);
}

int sign_label(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

// ---------------------------------------------------------------------------
// Divisors of f = a
// ---------------------------------------------------------------------------

Polynomial target_divisor(const RationalFunction& f, const Target& a) {
    if (f.is_zero()) throw argument_error("Nevanlinna functions: zero function");
    if (!a) return f.den(); // poles of f
    RationalFunction shifted = f - RationalFunction(*a);
    if (shifted.is_zero()) throw argument_error("Nevanlinna functions: f equals the target identically");
    return shifted.num();
}

struct DivisorTerm {
    double modulus; // |z|
    bool at_origin;
    int multiplicity;
};

std::vector<DivisorTerm> divisor_in_disc(const Polynomial& divisor, double r, double clearance) {
    std::vector<DivisorTerm> out;
    if (divisor.degree() <= 0) return out;
    for (const ComplexRoot& root : roots(divisor)) {
        double az = std::abs(root.location);
        if (std::abs(az - r) < clearance)
            throw numerical_guard_error("solution of f = a within clearance of the circle |z| = " +
                                        std::to_string(r) + "; perturb the radius");
        if (az >= r) continue;
        bool origin = root.exact && root.exact->is_zero();
        out.push_back({az, origin, root.multiplicity});
    }
    return out;
}

int truncate_mult(int mult, int truncation) {
    return truncation == kUntruncated ? mult : std::min(mult, truncation);
}

} // namespace

// ---------------------------------------------------------------------------
// Counting and proximity
// ---------------------------------------------------------------------------

double counting_N(const RationalFunction& f, const Target& a, double r, int truncation,
                  const IntegrationConfig& cfg) {
    if (!(r > 0.0)) throw argument_error("counting_N: radius must be positive");
    if (truncation != kUntruncated && truncation < 0) throw argument_error("counting_N: bad truncation");
    Polynomial divisor = target_divisor(f, a);
    std::vector<double> parts;
    for (const DivisorTerm& t : divisor_in_disc(divisor, r, cfg.clearance)) {
        double weight = t.at_origin ? std::log(r) : std::log(r / t.modulus);
        parts.push_back(static_cast<double>(truncate_mult(t.multiplicity, truncation)) * weight);
    }
    return pairwise_sum(parts);
}

double counting_N_classical(const RationalFunction& f, const Target& a, double r, int truncation,
                            const IntegrationConfig& cfg) {
    if (!(r > 1.0)) throw argument_error("counting_N_classical: radius must exceed 1");
    Polynomial divisor = target_divisor(f, a);
    std::vector<double> parts;
    for (const DivisorTerm& t : divisor_in_disc(divisor, r, cfg.clearance)) {
        double from = t.at_origin ? 1.0 : std::max(1.0, t.modulus);
        parts.push_back(static_cast<double>(truncate_mult(t.multiplicity, truncation)) * std::log(r / from));
    }
    return pairwise_sum(parts);
}

namespace {

// circle mean of log+|g| (invert = false) or log+|1/g| (invert = true)
double logplus_mean(const RationalFunction& g, double r, bool invert, const IntegrationConfig& cfg) {
    // the integrand is unbounded at poles (plain) or zeros (inverted) on the circle
    const Polynomial& singular = invert ? g.num() : g.den();
    if (singular.degree() > 0) {
        for (const ComplexRoot& root : roots(singular)) {
            if (std::abs(std::abs(root.location) - r) < cfg.clearance)
                throw numerical_guard_error("zero/pole within clearance of the circle |z| = " + std::to_string(r));
        }
    }
    auto log_abs = [&](double theta) {
        std::complex<double> z = r * std::complex<double>(std::cos(theta), std::sin(theta));
        std::complex<double> v = g.eval(z);
        if (std::isinf(v.real()) || std::isinf(v.imag())) return kInf;
        double av = std::abs(v);
        return av == 0.0 ? -kInf : std::log(av);
    };
    if (invert)
        return refined_circle_mean(
            cfg.nodes, [&](double t) { return std::max(0.0, -log_abs(t)); },
            [&](double t) { return sign_label(-log_abs(t)); });
    return refined_circle_mean(
        cfg.nodes, [&](double t) { return std::max(0.0, log_abs(t)); },
        [&](double t) { return sign_label(log_abs(t)); });
}

} // namespace

double proximity_m(const RationalFunction& f, const Target& a, double r, const IntegrationConfig& cfg) {
    cfg.validate();
    if (!(r > 0.0)) throw argument_error("proximity_m: radius must be positive");
    if (f.is_zero()) throw argument_error("proximity_m: zero function");
    if (!a) return logplus_mean(f, r, false, cfg);
    RationalFunction shifted = f - RationalFunction(*a);
    if (shifted.is_zero()) throw argument_error("proximity_m: f equals the target identically");
    return logplus_mean(shifted, r, true, cfg);
}

double characteristic_T(const RationalFunction& f, const Target& a, double r, const IntegrationConfig& cfg) {
    return proximity_m(f, a, r, cfg) + counting_N(f, a, r, kUntruncated, cfg);
}

// ---------------------------------------------------------------------------
// Cartan heights over S_R
// ---------------------------------------------------------------------------

namespace {

struct ReducedPoint {
    std::vector<Polynomial> coords; // coprime as a set
    bool reduced = false;
};

ReducedPoint reduce_coordinates(const std::vector<RationalFunction>& coords) {
    bool any_nonzero = false;
    for (const auto& f : coords)
        if (!f.is_zero()) any_nonzero = true;
    if (!any_nonzero) throw argument_error("cartan_fs_height: all coordinates vanish");

    ReducedPoint out;
    // common denominator
    Polynomial common(GaussianRational(1));
    for (const auto& f : coords) {
        if (f.is_zero()) continue;
        Polynomial g = gcd(common, f.den());
        common = divmod(common * f.den(), g).first;
        if (f.den().degree() > 0) out.reduced = true;
    }
    std::vector<Polynomial> cleared;
    for (const auto& f : coords) {
        if (f.is_zero()) {
            cleared.push_back(Polynomial{});
            continue;
        }
        cleared.push_back(f.num() * divmod(common, f.den()).first);
    }
    // divide out the common polynomial factor
    Polynomial content{};
    for (const auto& p : cleared)
        if (!p.is_zero()) content = content.is_zero() ? p : gcd(content, p);
    if (content.degree() > 0) out.reduced = true;
    for (auto& p : cleared)
        if (!p.is_zero() && content.degree() > 0) p = divmod(p, content).first;
    out.coords = std::move(cleared);
    return out;
}

} // namespace

namespace {

// boundary mean of the shape-combined coordinate norm log||(p_0, ..., p_n)||
// over |z| = R; Max-shape argmax switches are kink cells
double shape_boundary_mean(const std::vector<Polynomial>& coords, ArchShape shape, double Rd,
                           const IntegrationConfig& cfg, const std::vector<double>& arch_logs) {
    auto coord_log = [&](std::size_t i, const std::complex<double>& z) {
        if (coords[i].is_zero()) return -kInf;
        double av = std::abs(coords[i].eval(z));
        double base = av == 0.0 ? -kInf : std::log(av);
        return base + (arch_logs.empty() ? 0.0 : arch_logs[i]);
    };
    auto integrand = [&](double theta) {
        std::complex<double> z = Rd * std::complex<double>(std::cos(theta), std::sin(theta));
        if (shape == ArchShape::L2) {
            std::vector<double> logs;
            for (std::size_t i = 0; i < coords.size(); ++i)
                if (!coords[i].is_zero()) logs.push_back(coord_log(i, z));
            double mx = *std::max_element(logs.begin(), logs.end());
            double sum = 0.0;
            for (double l : logs) sum += std::exp(2.0 * (l - mx));
            return mx + 0.5 * std::log(sum);
        }
        double mx = -kInf;
        for (std::size_t i = 0; i < coords.size(); ++i) mx = std::max(mx, coord_log(i, z));
        return mx;
    };
    auto argmax_label = [&](double theta) {
        std::complex<double> z = Rd * std::complex<double>(std::cos(theta), std::sin(theta));
        int best = 0;
        double bv = -kInf;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            double l = coord_log(i, z);
            if (l > bv) {
                bv = l;
                best = static_cast<int>(i);
            }
        }
        return best;
    };
    return shape == ArchShape::Max ? refined_circle_mean(cfg.nodes, integrand, argmax_label)
                                   : circle_mean(cfg.nodes, integrand);
}

} // namespace

CartanHeight cartan_fs_height(const std::vector<RationalFunction>& coords, ArchShape shape, const Rational& R,
                              const IntegrationConfig& cfg, const std::vector<double>& arch_logs) {
    cfg.validate();
    if (coords.empty()) throw argument_error("cartan_fs_height: empty coordinates");
    if (!arch_logs.empty() && arch_logs.size() != coords.size())
        throw argument_error("cartan_fs_height: weight count mismatch");
    ReducedPoint P = reduce_coordinates(coords);
    double Rd = R.to_double();

    // Interior places: ||x||_z = e^{-min_i ord(p_i, z)}; a coprime set of
    // polynomials has no common zero, so the minimum order vanishes and the
    // interior integral is zero.

    CartanHeight out;
    out.reduced_input = P.reduced;

    double boundary = shape_boundary_mean(P.coords, shape, Rd, cfg, arch_logs);

    // subtract the defect of a nonvanishing coordinate; the section norm is
    // |x_j| / ||x||, so the weight belongs to ||x|| only
    AdelicCurve curve = AdelicCurve::nevanlinna(R, cfg);
    std::optional<double> pivot_defect;
    std::string guard;
    for (std::size_t j = 0; j < P.coords.size(); ++j) {
        if (P.coords[j].is_zero()) continue;
        try {
            pivot_defect = defect(curve, RationalFunction(P.coords[j])).total;
            break;
        } catch (const numerical_guard_error& e) {
            guard = e.what();
        }
    }
    if (!pivot_defect) throw numerical_guard_error("cartan_fs_height: every pivot coordinate fails clearance: " + guard);
    out.height = boundary - *pivot_defect;

    // characteristic of the induced map for a two-coordinate point
    if (P.coords.size() == 2 && !P.coords[0].is_zero() && !P.coords[1].is_zero()) {
        RationalFunction f(P.coords[1], P.coords[0]);
        try {
            out.characteristic = characteristic_T(f, std::nullopt, Rd, cfg);
            out.gap = out.height - *out.characteristic;
        } catch (const numerical_guard_error&) {
            // leave the optional columns empty when the circle clips a pole
        }
    }
    return out;
}

CharacteristicReport characteristic_table(const RationalFunction& f, const Target& a,
                                          const std::vector<double>& r_grid, int truncation, bool with_fs_height,
                                          ArchShape shape, const IntegrationConfig& cfg) {
    CharacteristicReport rep;
    rep.target = a;
    rep.truncation = truncation;
    std::vector<double> grid = r_grid;
    std::sort(grid.begin(), grid.end());
    for (double r : grid) {
        CharacteristicRow row;
        row.r = r;
        try {
            row.N = counting_N(f, a, r, kUntruncated, cfg);
            row.N_truncated = counting_N(f, a, r, truncation, cfg);
            row.m = proximity_m(f, a, r, cfg);
            row.T = *row.m + *row.N;
            if (with_fs_height) {
                // height of [1 : f]; against a finite target the gap also
                // carries the first-main-theorem constant
                CartanHeight h = cartan_fs_height({RationalFunction(1), f}, shape, Rational::from_double(r), cfg);
                row.fs_height = h.height;
                row.gap = h.height - *row.T;
            }
        } catch (const numerical_guard_error& e) {
            row.flag = e.what();
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Section change identity
// ---------------------------------------------------------------------------

double characteristic_fs(const RationalFunction& f, const Target& a, const Rational& R, ArchShape shape,
                         const IntegrationConfig& cfg) {
    cfg.validate();
    if (f.is_zero()) throw argument_error("characteristic_fs: zero function");
    // coprime representative [p0 : p1] of the graph point of f, and the
    // section vanishing at the target: T = mean log||(p0, p1)|| - d_R(section)
    const Polynomial& p0 = f.den();
    const Polynomial& p1 = f.num();
    Polynomial section = a ? p1 - Polynomial(GaussianRational(*a)) * p0 : p0;
    if (section.is_zero()) throw argument_error("characteristic_fs: f equals the target identically");

    double boundary = shape_boundary_mean({p0, p1}, shape, R.to_double(), cfg, {});
    AdelicCurve curve = AdelicCurve::nevanlinna(R, cfg);
    double section_defect = defect(curve, RationalFunction(section)).total;
    return boundary - section_defect;
}

std::vector<SectionGapRow> fmt_section_gap(const RationalFunction& f, const Target& a1, const Target& a2,
                                           const std::vector<Rational>& R_grid, const IntegrationConfig& cfg) {
    if (f.is_zero()) throw argument_error("fmt_section_gap: zero function");
    // section ratio (f - a2)/(f - a1), factors dropped at infinite targets
    RationalFunction ratio(1);
    if (a2) {
        RationalFunction shifted = f - RationalFunction(*a2);
        if (shifted.is_zero()) throw argument_error("fmt_section_gap: f equals a target identically");
        ratio *= shifted;
    }
    if (a1) {
        RationalFunction shifted = f - RationalFunction(*a1);
        if (shifted.is_zero()) throw argument_error("fmt_section_gap: f equals a target identically");
        ratio /= shifted;
    }
    GaussianRational c = laurent_leading(ratio, GaussianRational(0));
    double reference = 0.5 * log_rational(c.norm());

    std::vector<SectionGapRow> rows;
    for (const Rational& R : R_grid) {
        SectionGapRow row;
        row.R = R;
        row.reference = reference;
        try {
            row.difference = characteristic_fs(f, a1, R, ArchShape::Max, cfg) -
                             characteristic_fs(f, a2, R, ArchShape::Max, cfg);
            row.gap = *row.difference - reference;
        } catch (const numerical_guard_error& e) {
            row.flag = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Defect estimates
// ---------------------------------------------------------------------------

DefectEstimate defect_estimate(const RationalFunction& f, const Target& a, const std::vector<double>& r_grid,
                               const IntegrationConfig& cfg) {
    if (f.is_constant()) throw argument_error("defect_estimate: nonconstant function required");
    DefectEstimate out;
    out.target = a;
    std::vector<double> grid = r_grid;
    std::sort(grid.begin(), grid.end());
    for (double r : grid) {
        DefectEstimateRow row;
        row.r = r;
        try {
            double T = characteristic_T(f, std::nullopt, r, cfg);
            if (T < 1e-6) {
                row.flag = "characteristic below threshold; row skipped";
            } else {
                row.ratio = proximity_m(f, a, r, cfg) / T;
                out.limit_estimate = row.ratio;
            }
        } catch (const numerical_guard_error& e) {
            row.flag = e.what();
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Heights on proper curves
// ---------------------------------------------------------------------------

namespace {

double quadratic_fs_height(const AdelicCurve& curve, const DiagonalPNF& amb, const QuadraticPoint& point) {
    long d = point.d;
    if (!curve.is_quadratic() || curve.quadratic_d() != d)
        throw argument_error("fs_height: point field does not match the curve");
    bool any = false;
    for (const auto& x : point.coords)
        if (!x.is_zero()) any = true;
    if (!any) throw argument_error("fs_height: all coordinates vanish");
    if (static_cast<int>(point.coords.size()) != amb.rank())
        throw argument_error("fs_height: ambient rank mismatch");

    std::set<Integer> primes;
    for (const auto& x : point.coords) {
        if (x.is_zero()) continue;
        Rational n = x.norm();
        for (const auto& [p, e] : factor(n.num())) primes.insert(p);
        for (const auto& [p, e] : factor(n.den())) primes.insert(p);
    }
    for (const auto& w : amb.weights())
        for (const auto& [place, lw] : w.log_at)
            if (const auto* q = place.get_if<QuadraticPlace>())
                if (!q->base_infinite && lw != 0.0) primes.insert(q->p);

    std::vector<double> parts;
    for (const Integer& p : primes) {
        double logp = log_rational(Rational(p));
        for (const WeightedPlace& wp : split_rational_place(d, Place(RationalFinite{p}))) {
            const auto* q = wp.place.get_if<QuadraticPlace>();
            double best = -kInf;
            for (std::size_t i = 0; i < point.coords.size(); ++i) {
                if (point.coords[i].is_zero()) continue;
                double li = -quadratic_valuation(*q, point.coords[i]).to_double() * logp +
                            amb.weights()[i].log_weight_at(wp.place);
                best = std::max(best, li);
            }
            parts.push_back(wp.weight.to_double() * best);
        }
    }
    for (const WeightedPlace& wp : split_rational_place(d, Place(RationalInfinite{}))) {
        std::vector<double> logs;
        for (std::size_t i = 0; i < point.coords.size(); ++i) {
            if (point.coords[i].is_zero()) continue;
            logs.push_back(log_pav_eval(wp.place, point.coords[i]) + amb.weights()[i].log_weight_at(wp.place));
        }
        double mx = *std::max_element(logs.begin(), logs.end());
        double combined = mx;
        if (amb.shape() == ArchShape::L2) {
            double sum = 0.0;
            for (double l : logs) sum += std::exp(2.0 * (l - mx));
            combined = mx + 0.5 * std::log(sum);
        }
        parts.push_back(wp.weight.to_double() * combined);
    }
    return pairwise_sum(parts);
}

} // namespace

double fs_height(const AdelicCurve& curve, const FSMetricSpec& spec, const ProjectivePoint& point) {
    if (const auto* rp = std::get_if<RationalPoint>(&point)) {
        if (!curve.is_rational()) throw argument_error("fs_height: rational point needs the rational curve");
        RatVec v(static_cast<int>(rp->coords.size()));
        for (std::size_t i = 0; i < rp->coords.size(); ++i) v(static_cast<int>(i)) = rp->coords[i];
        if (const auto* diag = std::get_if<DiagonalPNF>(&spec.ambient)) {
            if (diag->rank() != v.size()) throw argument_error("fs_height: ambient rank mismatch");
            return -degree_element(*diag, v);
        }
        const auto& lh = std::get<LatticeHermitianBundle>(spec.ambient);
        if (lh.rank() != v.size()) throw argument_error("fs_height: ambient rank mismatch");
        return -degree_element(lh, v);
    }
    const auto& qp = std::get<QuadraticPoint>(point);
    const auto* diag = std::get_if<DiagonalPNF>(&spec.ambient);
    if (!diag) throw unsupported_error("fs_height: quadratic points need a diagonal ambient family");
    return quadratic_fs_height(curve, *diag, qp);
}

Bundle bundle_power(const Bundle& b, int m) {
    if (m < 0) throw argument_error("bundle_power: negative power");
    if (const auto* d = std::get_if<DiagonalPNF>(&b)) {
        if (m == 0) return DiagonalPNF(d->curve(), d->shape(), {DiagonalWeight{}});
        DiagonalPNF acc = *d;
        for (int k = 1; k < m; ++k) acc = tensor_bundle(acc, *d);
        return acc;
    }
    const auto& lh = std::get<LatticeHermitianBundle>(b);
    if (m == 0) return LatticeHermitianBundle(rat_identity(1), rat_identity(1));
    LatticeHermitianBundle acc = lh;
    for (int k = 1; k < m; ++k) acc = tensor_bundle(acc, lh);
    return acc;
}

std::vector<Rational> coordinate_power(const std::vector<Rational>& coords, int m) {
    if (m < 0) throw argument_error("coordinate_power: negative power");
    std::vector<Rational> acc{Rational(1)};
    for (int k = 0; k < m; ++k) {
        std::vector<Rational> next;
        next.reserve(acc.size() * coords.size());
        for (const Rational& a : acc)
            for (const Rational& c : coords) next.push_back(a * c);
        acc = std::move(next);
    }
    return acc;
}

AdditivityReport height_additivity_check(const AdelicCurve& curve, const FSMetricSpec& spec1,
                                         const FSMetricSpec& spec2, const ProjectivePoint& point, int m1, int m2) {
    const auto* rp = std::get_if<RationalPoint>(&point);
    if (!rp) throw unsupported_error("height_additivity_check: rational points only");

    AdditivityReport rep;
    rep.h1 = fs_height(curve, spec1, point);
    rep.h2 = fs_height(curve, spec2, point);

    // a zeroth power contributes the unit line; kron with its single
    // coordinate 1 leaves the coordinate vector unchanged
    Bundle combined = tensor_bundle(bundle_power(spec1.ambient, m1), bundle_power(spec2.ambient, m2));
    std::vector<Rational> powered = coordinate_power(rp->coords, m1 + m2);
    rep.h_combined = fs_height(curve, FSMetricSpec{combined}, ProjectivePoint(RationalPoint{powered}));
    rep.additivity_gap = rep.h_combined - (static_cast<double>(m1) * rep.h1 + static_cast<double>(m2) * rep.h2);

    try {
        rep.metric_distance = distance_integral(spec1.ambient, spec2.ambient);
        rep.metric_bound_holds = std::fabs(rep.h1 - rep.h2) <= *rep.metric_distance + 1e-9;
    } catch (const unsupported_error&) {
        rep.metric_distance = std::nullopt;
        rep.metric_bound_holds = std::nullopt;
    }
    return rep;
}

} // namespace adelic
