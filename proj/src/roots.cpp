#include "adelic/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "adelic/errors.hpp"

namespace adelic {

namespace {

using cplx = std::complex<double>;

cplx horner(const std::vector<cplx>& c, cplx z) {
    cplx acc(0.0, 0.0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

std::vector<cplx> derivative(const std::vector<cplx>& c) {
    std::vector<cplx> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(double(k) * c[k]);
    return d;
}

// Cauchy bound on root moduli.
double root_radius(const std::vector<cplx>& c) {
    double an = std::abs(c.back());
    double r = 0.0;
    for (std::size_t k = 0; k + 1 < c.size(); ++k) r = std::max(r, std::abs(c[k]) / an);
    return 1.0 + r;
}

// Rational reconstruction of x by continued fractions, denominator capped.
std::optional<Rational> reconstruct(double x, const Integer& max_den, double tol) {
    if (!std::isfinite(x)) return std::nullopt;
    double target = x;
    Integer p0(0), q0(1), p1(1), q1(0);
    double v = x;
    for (int iter = 0; iter < 64; ++iter) {
        double fl = std::floor(v);
        if (fl > 9e17 || fl < -9e17) return std::nullopt;
        Integer a(static_cast<long>(fl));
        Integer p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        Rational cand(p1, q1);
        if (std::abs(cand.to_double() - target) <= tol) return cand;
        double frac = v - fl;
        if (frac < 1e-15) break;
        v = 1.0 / frac;
    }
    return std::nullopt;
}

} // namespace

std::vector<cplx> aberth_roots(const std::vector<cplx>& coeffs) {
    std::vector<cplx> c = coeffs;
    while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
    if (c.size() <= 1) return {};
    const int n = static_cast<int>(c.size()) - 1;
    std::vector<cplx> d = derivative(c);

    std::vector<cplx> z(n);
    double r = root_radius(c);
    for (int k = 0; k < n; ++k) {
        double ang = 2.0 * M_PI * k / n + 0.4;
        z[k] = 0.7 * r * cplx(std::cos(ang), std::sin(ang));
    }

    for (int iter = 0; iter < 400; ++iter) {
        double worst = 0.0;
        for (int k = 0; k < n; ++k) {
            cplx pv = horner(c, z[k]);
            cplx dv = horner(d, z[k]);
            if (pv == cplx(0.0, 0.0)) continue;
            cplx newton = dv == cplx(0.0, 0.0) ? cplx(0.0, 0.0) : pv / dv;
            cplx rep(0.0, 0.0);
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                cplx diff = z[k] - z[j];
                if (std::abs(diff) < 1e-300) diff = cplx(1e-300, 0.0);
                rep += 1.0 / diff;
            }
            cplx denom = 1.0 - newton * rep;
            cplx w = std::abs(denom) < 1e-300 ? newton : newton / denom;
            z[k] -= w;
            worst = std::max(worst, std::abs(w) / (1.0 + std::abs(z[k])));
        }
        if (worst < 1e-14) break;
    }

    // Newton polish: roots of a squarefree factor are simple
    for (int k = 0; k < n; ++k) {
        for (int it = 0; it < 5; ++it) {
            cplx pv = horner(c, z[k]);
            cplx dv = horner(d, z[k]);
            if (std::abs(dv) < 1e-300) break;
            cplx step = pv / dv;
            z[k] -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(z[k]))) break;
        }
    }
    return z;
}

std::vector<ComplexRoot> roots(const Polynomial& poly) {
    if (poly.is_zero()) throw argument_error("roots: zero polynomial");
    std::vector<ComplexRoot> out;
    if (poly.degree() == 0) return out;

    for (const auto& [factor, mult] : squarefree_decomposition(poly)) {
        std::vector<cplx> c;
        for (const auto& g : factor.coeffs()) c.push_back(g.to_complex());
        std::vector<cplx> zs = aberth_roots(c);

        // residual guard, relative to the coefficient scale at the root
        for (const cplx& z : zs) {
            double scale = 0.0, zp = 1.0;
            for (const cplx& ck : c) {
                scale += std::abs(ck) * zp;
                zp *= std::abs(z);
            }
            double res = std::abs(horner(c, z));
            if (!(res <= 1e-10 * (scale + 1.0)))
                throw numerical_guard_error("roots: residual " + std::to_string(res) +
                                            " above tolerance after polish");
        }

        // enforce conjugate pairing for real-coefficient factors
        if (factor.has_real_coeffs()) {
            std::vector<bool> used(zs.size(), false);
            for (std::size_t i = 0; i < zs.size(); ++i) {
                if (used[i] || std::abs(zs[i].imag()) < 1e-12 * (1.0 + std::abs(zs[i]))) continue;
                std::size_t best = i;
                double best_d = std::numeric_limits<double>::infinity();
                for (std::size_t j = 0; j < zs.size(); ++j) {
                    if (j == i || used[j]) continue;
                    double dd = std::abs(zs[j] - std::conj(zs[i]));
                    if (dd < best_d) {
                        best_d = dd;
                        best = j;
                    }
                }
                if (best != i) {
                    zs[best] = std::conj(zs[i]);
                    used[i] = used[best] = true;
                }
            }
        }

        for (const cplx& z : zs) {
            ComplexRoot root;
            root.location = z;
            root.multiplicity = mult;
            double mag = 1.0 + std::abs(z);
            auto re = reconstruct(z.real(), Integer(1000000), 1e-9 * mag);
            auto im = reconstruct(z.imag(), Integer(1000000), 1e-9 * mag);
            if (re && im) {
                GaussianRational cand(*re, *im);
                if (factor.eval(cand).is_zero()) {
                    root.exact = cand;
                    root.location = cand.to_complex();
                }
            }
            out.push_back(std::move(root));
        }
    }

    std::sort(out.begin(), out.end(), [](const ComplexRoot& a, const ComplexRoot& b) {
        if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    });
    return out;
}

} // namespace adelic
