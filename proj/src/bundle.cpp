#include "adelic/bundle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "adelic/arith.hpp"
#include "adelic/errors.hpp"
#include "adelic/quadrature.hpp"
#include "adelic/roots.hpp"

namespace {

bool same_matrix(const adelic::RatMat& a, const adelic::RatMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

} // namespace

namespace adelic {

double place_mass(const Place& w) {
    if (w.is<RationalFinite>() || w.is<RationalInfinite>()) return 1.0;
    if (const auto* q = w.get_if<QuadraticPlace>()) {
        switch (q->kind) {
        case SplitKind::Split:
        case SplitKind::RealEmbedding:
            return 0.5;
        default:
            return 1.0;
        }
    }
    if (const auto* ni = w.get_if<NevanlinnaInterior>()) {
        double az = std::sqrt(ni->z.norm().to_double());
        double R = ni->R.to_double();
        return az == 0.0 ? std::log(R) : std::log(R / az);
    }
    throw argument_error("place_mass: boundary places carry continuous mass");
}

// ---------------------------------------------------------------------------
// DiagonalPNF
// ---------------------------------------------------------------------------

double DiagonalWeight::log_weight_at(const Place& w) const {
    for (const auto& [place, lw] : log_at)
        if (place == w) return lw;
    return 0.0;
}

DiagonalPNF::DiagonalPNF(AdelicCurve curve, ArchShape shape, std::vector<DiagonalWeight> weights)
    : curve_(std::move(curve)), shape_(shape), weights_(std::move(weights)) {
    if (weights_.empty()) throw argument_error("DiagonalPNF: rank must be positive");
    for (const auto& w : weights_) {
        for (const auto& [place, lw] : w.log_at) {
            if (!std::isfinite(lw)) throw argument_error("DiagonalPNF: weights must be finite"); // condition (*)
            if (curve_.is_rational() && !(place.is<RationalFinite>() || place.is<RationalInfinite>()))
                throw argument_error("DiagonalPNF: place does not belong to the rational curve");
            if (curve_.is_quadratic() && !place.is<QuadraticPlace>())
                throw argument_error("DiagonalPNF: place does not belong to the quadratic curve");
        }
        if (curve_.is_nevanlinna() && w.g.is_zero())
            throw argument_error("DiagonalPNF: modulus rule must be a nonzero function");
    }
}

double DiagonalPNF::line_degree(int i) const {
    const DiagonalWeight& w = weights_.at(static_cast<std::size_t>(i));
    if (curve_.is_nevanlinna()) {
        double integral = defect(curve_, w.g).total + w.arch_log;
        return -integral;
    }
    std::vector<double> parts;
    for (const auto& [place, lw] : w.log_at) parts.push_back(lw * place_mass(place));
    return -pairwise_sum(parts);
}

// ---------------------------------------------------------------------------
// LatticeHermitianBundle
// ---------------------------------------------------------------------------

LatticeHermitianBundle::LatticeHermitianBundle(RatMat lattice, RatMat gram)
    : lattice_(std::move(lattice)), gram_(std::move(gram)) {
    if (lattice_.rows() != lattice_.cols()) throw infeasible_error("lattice basis must be square");
    if (gram_.rows() != gram_.cols() || gram_.rows() != lattice_.rows())
        throw infeasible_error("Gram matrix must match the lattice rank");
    if (exact_det(lattice_).is_zero()) throw infeasible_error("lattice basis is singular");
    if (!is_positive_definite(gram_)) throw infeasible_error("Gram matrix is not positive definite");
    lattice_gram_ = lattice_.transpose() * gram_ * lattice_;
}

int bundle_rank(const Bundle& b) {
    return std::visit([](const auto& x) { return x.rank(); }, b);
}

// ---------------------------------------------------------------------------
// Subspaces
// ---------------------------------------------------------------------------

SubspaceBasis::SubspaceBasis(RatMat basis) : cols(std::move(basis)) {
    if (cols.cols() == 0 || cols.cols() > cols.rows()) throw argument_error("SubspaceBasis: bad dimensions");
    if (!is_integral(cols)) throw argument_error("SubspaceBasis: integral coordinates required");
    if (exact_rank(cols) != cols.cols()) throw argument_error("SubspaceBasis: columns must be independent");
    saturated = is_saturated(cols);
}

// ---------------------------------------------------------------------------
// Duals
// ---------------------------------------------------------------------------

DiagonalPNF dual_bundle(const DiagonalPNF& b) {
    std::vector<DiagonalWeight> w = b.weights();
    for (auto& weight : w) {
        for (auto& [place, lw] : weight.log_at) lw = -lw;
        if (b.curve().is_nevanlinna()) weight.g = RationalFunction(1) / weight.g;
        weight.arch_log = -weight.arch_log;
    }
    return DiagonalPNF(b.curve(), b.shape(), std::move(w));
}

LatticeHermitianBundle dual_bundle(const LatticeHermitianBundle& b) {
    return LatticeHermitianBundle(exact_inverse(b.lattice().transpose()), exact_inverse(b.gram()));
}

Bundle dual_bundle(const Bundle& b) {
    return std::visit([](const auto& x) -> Bundle { return dual_bundle(x); }, b);
}

// ---------------------------------------------------------------------------
// Tensor, determinant
// ---------------------------------------------------------------------------

DiagonalPNF tensor_bundle(const DiagonalPNF& a, const DiagonalPNF& b) {
    if (a.curve().describe() != b.curve().describe())
        throw argument_error("tensor_bundle: mismatched curves");
    if (a.shape() != b.shape()) throw unsupported_error("tensor_bundle: mixed archimedean shapes");
    std::vector<DiagonalWeight> w;
    for (const auto& wa : a.weights())
        for (const auto& wb : b.weights()) {
            DiagonalWeight t;
            std::map<Place, double> merged;
            for (const auto& [p, l] : wa.log_at) merged[p] += l;
            for (const auto& [p, l] : wb.log_at) merged[p] += l;
            t.log_at.assign(merged.begin(), merged.end());
            t.g = wa.g * wb.g;
            t.arch_log = wa.arch_log + wb.arch_log;
            w.push_back(std::move(t));
        }
    return DiagonalPNF(a.curve(), a.shape(), std::move(w));
}

LatticeHermitianBundle tensor_bundle(const LatticeHermitianBundle& a, const LatticeHermitianBundle& b) {
    return LatticeHermitianBundle(kron(a.lattice(), b.lattice()), kron(a.gram(), b.gram()));
}

Bundle tensor_bundle(const Bundle& a, const Bundle& b) {
    if (const auto* da = std::get_if<DiagonalPNF>(&a)) {
        const auto* db = std::get_if<DiagonalPNF>(&b);
        if (!db) throw unsupported_error("tensor_bundle: mixed bundle kinds");
        return tensor_bundle(*da, *db);
    }
    const auto* lb = std::get_if<LatticeHermitianBundle>(&b);
    if (!lb) throw unsupported_error("tensor_bundle: mixed bundle kinds");
    return tensor_bundle(std::get<LatticeHermitianBundle>(a), *lb);
}

Bundle det_bundle(const Bundle& b) {
    if (const auto* d = std::get_if<DiagonalPNF>(&b)) {
        DiagonalWeight t;
        std::map<Place, double> merged;
        for (const auto& w : d->weights()) {
            for (const auto& [p, l] : w.log_at) merged[p] += l;
            t.g *= w.g;
            t.arch_log += w.arch_log;
        }
        t.log_at.assign(merged.begin(), merged.end());
        return DiagonalPNF(d->curve(), d->shape(), {std::move(t)});
    }
    const auto& lh = std::get<LatticeHermitianBundle>(b);
    RatMat m = rat_identity(1);
    RatMat g = rat_identity(1);
    g(0, 0) = exact_det(lh.lattice_gram());
    return LatticeHermitianBundle(std::move(m), std::move(g));
}

// ---------------------------------------------------------------------------
// Restriction / quotient
// ---------------------------------------------------------------------------

LatticeHermitianBundle restrict_bundle(const LatticeHermitianBundle& b, const SubspaceBasis& sub,
                                       bool* auto_saturated) {
    if (sub.ambient() != b.rank()) throw argument_error("restrict_bundle: dimension mismatch");
    RatMat basis = sub.cols;
    bool flagged = false;
    if (!sub.saturated) {
        basis = saturate_columns(basis);
        flagged = true;
    }
    if (auto_saturated) *auto_saturated = flagged;
    // restricted bundle in the coordinates of the saturated basis: lattice is
    // standard, Gram is the basis Gram under M^T G M
    RatMat gram = basis.transpose() * b.lattice_gram() * basis;
    return LatticeHermitianBundle(rat_identity(sub.dim()), std::move(gram));
}

DiagonalPNF restrict_bundle(const DiagonalPNF& b, const std::vector<int>& coords) {
    if (coords.empty()) throw argument_error("restrict_bundle: empty coordinate set");
    std::vector<DiagonalWeight> w;
    for (int i : coords) {
        if (i < 0 || i >= b.rank()) throw argument_error("restrict_bundle: coordinate out of range");
        w.push_back(b.weights()[static_cast<std::size_t>(i)]);
    }
    return DiagonalPNF(b.curve(), b.shape(), std::move(w));
}

QuotientResult quotient_bundle(const LatticeHermitianBundle& b, const SubspaceBasis& sub) {
    if (sub.ambient() != b.rank()) throw argument_error("quotient_bundle: dimension mismatch");
    if (sub.dim() >= b.rank()) throw argument_error("quotient_bundle: subspace must be proper");
    RatMat basis = sub.saturated ? sub.cols : saturate_columns(sub.cols);
    RatMat comp = unimodular_complement(basis);
    int n = b.rank(), k = sub.dim();
    RatMat u(n, n);
    u.leftCols(k) = basis;
    u.rightCols(n - k) = comp;
    // Gram in the adapted coordinates; hermitian quotient = Schur complement
    RatMat adapted = u.transpose() * b.lattice_gram() * u;
    RatMat quotient_gram = schur_complement(adapted, k);
    return {LatticeHermitianBundle(rat_identity(n - k), std::move(quotient_gram)), std::move(comp)};
}

DiagonalPNF quotient_bundle(const DiagonalPNF& b, const std::vector<int>& coords_removed) {
    std::set<int> removed(coords_removed.begin(), coords_removed.end());
    std::vector<int> keep;
    for (int i = 0; i < b.rank(); ++i)
        if (!removed.count(i)) keep.push_back(i);
    return restrict_bundle(b, keep); // quotient of a diagonal by coordinates = diagonal on the rest
}

// ---------------------------------------------------------------------------
// Degrees
// ---------------------------------------------------------------------------

double degree(const DiagonalPNF& b) {
    std::vector<double> parts;
    for (int i = 0; i < b.rank(); ++i) parts.push_back(b.line_degree(i));
    return pairwise_sum(parts);
}

double degree(const LatticeHermitianBundle& b) {
    return -0.5 * log_rational(exact_det(b.lattice_gram()));
}

double degree(const Bundle& b) {
    return std::visit([](const auto& x) { return degree(x); }, b);
}

namespace {

// primes where some coordinate has nonzero valuation or some weight is nonzero
std::set<Integer> support_primes(const DiagonalPNF& b, const RatVec& s) {
    std::set<Integer> primes;
    for (int i = 0; i < s.size(); ++i) {
        if (s(i).is_zero()) continue;
        for (const auto& [p, e] : factor(s(i).num())) primes.insert(p);
        for (const auto& [p, e] : factor(s(i).den())) primes.insert(p);
    }
    for (const auto& w : b.weights())
        for (const auto& [place, lw] : w.log_at)
            if (const auto* rf = place.get_if<RationalFinite>())
                if (lw != 0.0) primes.insert(rf->p);
    return primes;
}

double arch_combine(ArchShape shape, const std::vector<double>& logs) {
    // combine per-coordinate log magnitudes into log||s|| at an archimedean place
    if (logs.empty()) return -std::numeric_limits<double>::infinity();
    double mx = -std::numeric_limits<double>::infinity();
    for (double l : logs) mx = std::max(mx, l);
    if (shape == ArchShape::Max || mx == -std::numeric_limits<double>::infinity()) return mx;
    double sum = 0.0;
    for (double l : logs) sum += std::exp(2.0 * (l - mx));
    return mx + 0.5 * std::log(sum);
}

} // namespace

double degree_element(const DiagonalPNF& b, const RatVec& s) {
    if (static_cast<int>(s.size()) != b.rank()) throw argument_error("degree_element: dimension mismatch");
    bool zero = true;
    for (int i = 0; i < s.size(); ++i)
        if (!s(i).is_zero()) zero = false;
    if (zero) throw argument_error("degree_element: zero element");
    if (!b.curve().is_rational())
        throw unsupported_error("degree_element: rational coordinates need the rational curve");

    std::vector<double> parts;
    for (const Integer& p : support_primes(b, s)) {
        Place w{RationalFinite{p}};
        double logp = log_rational(Rational(p));
        double best = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < s.size(); ++i) {
            if (s(i).is_zero()) continue;
            auto v = padic_valuation(s(i), p);
            double li = -static_cast<double>(*v) * logp + b.weights()[static_cast<std::size_t>(i)].log_weight_at(w);
            best = std::max(best, li);
        }
        parts.push_back(best);
    }
    Place inf{RationalInfinite{}};
    std::vector<double> logs;
    for (int i = 0; i < s.size(); ++i) {
        if (s(i).is_zero()) continue;
        logs.push_back(log_rational(abs(s(i))) + b.weights()[static_cast<std::size_t>(i)].log_weight_at(inf));
    }
    parts.push_back(arch_combine(b.shape(), logs));
    return -pairwise_sum(parts);
}

double degree_element(const LatticeHermitianBundle& b, const RatVec& s) {
    if (static_cast<int>(s.size()) != b.rank()) throw argument_error("degree_element: dimension mismatch");
    RatVec y = exact_inverse(b.lattice()) * s; // coordinates in the lattice basis
    bool zero = true;
    for (int i = 0; i < y.size(); ++i)
        if (!y(i).is_zero()) zero = false;
    if (zero) throw argument_error("degree_element: zero element");

    std::set<Integer> primes;
    for (int i = 0; i < y.size(); ++i) {
        if (y(i).is_zero()) continue;
        for (const auto& [p, e] : factor(y(i).num())) primes.insert(p);
        for (const auto& [p, e] : factor(y(i).den())) primes.insert(p);
    }
    std::vector<double> parts;
    for (const Integer& p : primes) {
        long vmin = 0;
        bool first = true;
        for (int i = 0; i < y.size(); ++i) {
            if (y(i).is_zero()) continue;
            long v = *padic_valuation(y(i), p);
            vmin = first ? v : std::min(vmin, v);
            first = false;
        }
        parts.push_back(-static_cast<double>(vmin) * log_rational(Rational(p))); // log||s||_p = -min v_p
    }
    Rational quad = (s.transpose() * b.gram() * s)(0, 0);
    parts.push_back(0.5 * log_rational(quad));
    return -pairwise_sum(parts);
}

double degree_element(const DiagonalPNF& b, const std::vector<RationalFunction>& s) {
    if (static_cast<int>(s.size()) != b.rank()) throw argument_error("degree_element: dimension mismatch");
    if (!b.curve().is_nevanlinna())
        throw unsupported_error("degree_element: meromorphic coordinates need a Nevanlinna curve");
    bool zero = true;
    for (const auto& f : s)
        if (!f.is_zero()) zero = false;
    if (zero) throw argument_error("degree_element: zero element");

    const IntegrationConfig& cfg = b.curve().config();
    double R = b.curve().radius().to_double();

    // h_i = s_i * g_i carries the full interior modulus rule of coordinate i
    std::vector<RationalFunction> h;
    for (std::size_t i = 0; i < s.size(); ++i) h.push_back(s[i] * b.weights()[i].g);

    // cluster interior zeros/poles of all coordinates and take the min order
    struct Cluster {
        std::complex<double> at;
        std::map<std::size_t, int> ord;
    };
    std::vector<Cluster> clusters;
    auto locate = [&](const std::complex<double>& z) -> Cluster& {
        for (auto& c : clusters)
            if (std::abs(c.at - z) < 1e-8) return c;
        clusters.push_back({z, {}});
        return clusters.back();
    };
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (h[i].is_zero()) continue;
        for (const Polynomial* part : {&h[i].num(), &h[i].den()}) {
            if (part->degree() <= 0) continue;
            int sign = part == &h[i].num() ? 1 : -1;
            for (const ComplexRoot& r : roots(*part)) {
                if (std::abs(std::abs(r.location) - R) < cfg.clearance)
                    throw numerical_guard_error("degree_element: zero/pole within clearance of the circle");
                if (std::abs(r.location) >= R) continue;
                locate(r.location).ord[i] += sign * r.multiplicity;
            }
        }
    }

    std::vector<double> parts;
    for (const Cluster& c : clusters) {
        int min_ord = 0; // coordinates without a root there have order 0
        bool all_present = c.ord.size() == h.size();
        bool first = true;
        for (const auto& [i, o] : c.ord) {
            min_ord = first ? o : std::min(min_ord, o);
            first = false;
        }
        if (!all_present) min_ord = std::min(min_ord, 0);
        double az = std::abs(c.at);
        double mass = az == 0.0 ? std::log(R) : std::log(R / az);
        parts.push_back(-static_cast<double>(min_ord) * mass); // log||s||_z = -min ord
    }
    double interior = pairwise_sum(parts);

    double boundary = circle_mean(cfg.nodes, [&](double theta) {
        std::complex<double> z = R * std::complex<double>(std::cos(theta), std::sin(theta));
        std::vector<double> logs;
        for (std::size_t i = 0; i < h.size(); ++i) {
            if (h[i].is_zero()) continue;
            logs.push_back(std::log(std::abs(h[i].eval(z))) + b.weights()[i].arch_log);
        }
        return arch_combine(b.shape(), logs);
    });
    return -(interior + boundary);
}

Rational subspace_degree_invariant(const LatticeHermitianBundle& b, const SubspaceBasis& sub) {
    if (sub.ambient() != b.rank()) throw argument_error("subspace_degree: dimension mismatch");
    Integer g = minor_gcd(sub.cols);
    Rational det = exact_det(sub.cols.transpose() * b.lattice_gram() * sub.cols);
    if (!(det > Rational(0))) throw infeasible_error("subspace_degree: degenerate Gram");
    Integer g2 = g * g;
    return Rational(g2) / det;
}

double subspace_degree(const LatticeHermitianBundle& b, const SubspaceBasis& sub) {
    return 0.5 * log_rational(subspace_degree_invariant(b, sub));
}

// ---------------------------------------------------------------------------
// Local distance
// ---------------------------------------------------------------------------

namespace {

double diagonal_distance_at(const DiagonalPNF& a, const DiagonalPNF& b, const Place& w) {
    double best = 0.0;
    for (int i = 0; i < a.rank(); ++i) {
        const auto& wa = a.weights()[static_cast<std::size_t>(i)];
        const auto& wb = b.weights()[static_cast<std::size_t>(i)];
        double la, lb;
        if (a.curve().is_nevanlinna()) {
            if (const auto* nb = w.get_if<NevanlinnaBoundary>()) {
                double R = nb->R.to_double();
                std::complex<double> z = R * std::complex<double>(std::cos(nb->theta), std::sin(nb->theta));
                la = std::log(std::abs(wa.g.eval(z))) + wa.arch_log;
                lb = std::log(std::abs(wb.g.eval(z))) + wb.arch_log;
            } else if (const auto* ni = w.get_if<NevanlinnaInterior>()) {
                la = -static_cast<double>(ord_at(wa.g, ni->z));
                lb = -static_cast<double>(ord_at(wb.g, ni->z));
            } else {
                throw argument_error("local_distance: place does not belong to the curve");
            }
        } else {
            la = wa.log_weight_at(w);
            lb = wb.log_weight_at(w);
        }
        best = std::max(best, std::abs(la - lb));
    }
    return best;
}

double hermitian_arch_distance(const LatticeHermitianBundle& a, const LatticeHermitianBundle& b) {
    int n = a.rank();
    Eigen::MatrixXd g1(n, n), g2(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            g1(i, j) = a.gram()(i, j).to_double();
            g2(i, j) = b.gram()(i, j).to_double();
        }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(g2, g1); // G2 x = lambda G1 x
    double best = 0.0;
    for (int i = 0; i < n; ++i) best = std::max(best, std::abs(std::log(es.eigenvalues()(i))));
    return 0.5 * best;
}

} // namespace

double local_distance(const Bundle& b1, const Bundle& b2, const Place& w) {
    if (bundle_rank(b1) != bundle_rank(b2)) throw argument_error("local_distance: rank mismatch");
    if (const auto* d1 = std::get_if<DiagonalPNF>(&b1)) {
        const auto* d2 = std::get_if<DiagonalPNF>(&b2);
        if (!d2 || d1->shape() != d2->shape() || d1->curve().describe() != d2->curve().describe())
            throw unsupported_error("local_distance: incomparable pseudo-norm families");
        return diagonal_distance_at(*d1, *d2, w);
    }
    const auto& l1 = std::get<LatticeHermitianBundle>(b1);
    const auto* l2 = std::get_if<LatticeHermitianBundle>(&b2);
    if (!l2) throw unsupported_error("local_distance: incomparable pseudo-norm families");
    if (!same_matrix(l1.lattice(), l2->lattice()))
        throw unsupported_error("local_distance: hermitian pair must share the lattice");
    if (w.is<RationalFinite>()) return 0.0; // identical lattice norms
    if (w.is<RationalInfinite>()) return hermitian_arch_distance(l1, *l2);
    throw argument_error("local_distance: place does not belong to the rational curve");
}

double distance_integral(const Bundle& b1, const Bundle& b2) {
    if (bundle_rank(b1) != bundle_rank(b2)) throw argument_error("distance_integral: rank mismatch");
    if (const auto* d1 = std::get_if<DiagonalPNF>(&b1)) {
        const auto* d2 = std::get_if<DiagonalPNF>(&b2);
        if (!d2 || d1->shape() != d2->shape() || d1->curve().describe() != d2->curve().describe())
            throw unsupported_error("distance_integral: incomparable pseudo-norm families");
        if (d1->curve().is_nevanlinna()) {
            const IntegrationConfig& cfg = d1->curve().config();
            double R = d1->curve().radius().to_double();
            // interior: only roots of the modulus rules contribute
            std::map<Place, double> masses;
            for (const DiagonalPNF* d : {d1, d2})
                for (const auto& w : d->weights())
                    for (const auto& [place, mass] : support_places(d1->curve(), w.g)) masses[place] = mass;
            std::vector<double> parts;
            for (const auto& [place, mass] : masses)
                parts.push_back(local_distance(b1, b2, place) * mass);
            double interior = pairwise_sum(parts);
            double boundary = circle_mean(cfg.nodes, [&](double theta) {
                Place w{NevanlinnaBoundary{d1->curve().radius(), theta}};
                return diagonal_distance_at(*d1, *d2, w);
            });
            (void)R;
            return interior + boundary;
        }
        std::set<Place> places;
        for (const DiagonalPNF* d : {d1, d2})
            for (const auto& w : d->weights())
                for (const auto& [place, lw] : w.log_at) places.insert(place);
        std::vector<double> parts;
        for (const Place& w : places) parts.push_back(local_distance(b1, b2, w) * place_mass(w));
        return pairwise_sum(parts);
    }
    // hermitian pair over Q: finite places agree, only the archimedean place contributes
    return local_distance(b1, b2, Place(RationalInfinite{}));
}

} // namespace adelic
