#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "adelic/bundle.hpp"
#include "adelic/errors.hpp"
#include "adelic/expr.hpp"

using namespace adelic;

namespace {

RatMat mat2(long a, long b, long c, long d) {
    RatMat m(2, 2);
    m << Rational(a), Rational(b), Rational(c), Rational(d);
    return m;
}

RatMat diag2(const Rational& a, const Rational& b) {
    RatMat m = RatMat::Constant(2, 2, Rational(0));
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

DiagonalPNF arch_diagonal(std::vector<double> logs, ArchShape shape = ArchShape::L2) {
    std::vector<DiagonalWeight> w;
    for (double l : logs) {
        DiagonalWeight dw;
        if (l != 0.0) dw.log_at.emplace_back(Place(RationalInfinite{}), l);
        w.push_back(std::move(dw));
    }
    return DiagonalPNF(AdelicCurve::rational(), shape, std::move(w));
}

LatticeHermitianBundle standard(int n) {
    return LatticeHermitianBundle(rat_identity(n), rat_identity(n));
}

std::mt19937_64 rng(23);

LatticeHermitianBundle random_lattice_bundle(int n) {
    std::uniform_int_distribution<long> entry(-3, 3);
    while (true) {
        RatMat m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = Rational(entry(rng));
        if (exact_det(m).is_zero()) continue;
        RatMat a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = Rational(entry(rng), 1 + std::abs(entry(rng)));
        RatMat g = a.transpose() * a + rat_identity(n); // positive definite
        return LatticeHermitianBundle(std::move(m), std::move(g));
    }
}

} // namespace

TEST_CASE("exact linear algebra") {
    RatMat m = mat2(1, 2, 3, 4);
    CHECK(exact_det(m) == Rational(-2));
    RatMat inv = exact_inverse(m);
    CHECK(inv(0, 0) == Rational(-2));
    CHECK(inv(0, 1) == Rational(1));
    CHECK(is_positive_definite(diag2(Rational(1), Rational(1, 100))));
    CHECK(!is_positive_definite(diag2(Rational(1), Rational(-1))));
    CHECK_THROWS_AS(exact_inverse(mat2(1, 2, 2, 4)), infeasible_error);

    RatMat b(2, 1);
    b << Rational(2), Rational(4);
    CHECK(minor_gcd(b) == 2);
    RatMat sat = saturate_columns(b);
    CHECK(minor_gcd(sat) == 1);
    CHECK(sat(0, 0) * Rational(2) == sat(1, 0)); // spans the same line

    RatMat c(3, 2);
    c << Rational(1), Rational(0), Rational(0), Rational(2), Rational(0), Rational(0);
    CHECK(minor_gcd(c) == 2);
    CHECK(!is_saturated(c));

    RatMat comp = unimodular_complement(saturate_columns(c));
    CHECK(comp.cols() == 1);
}

TEST_CASE("subspace sum and intersection") {
    RatMat e1(3, 1), e2(3, 1), mix(3, 2);
    e1 << Rational(1), Rational(0), Rational(0);
    e2 << Rational(0), Rational(1), Rational(0);
    mix.col(0) = e1;
    mix.col(1) = e2;
    RatMat sum = subspace_sum(e1, e2);
    CHECK(sum.cols() == 2);
    RatMat inter = subspace_intersection(mix, e2);
    CHECK(inter.cols() == 1);
    CHECK(inter(1, 0) != Rational(0));
    CHECK(subspace_intersection(e1, e2).cols() == 0);
}

TEST_CASE("dual bundles") {
    DiagonalPNF d = arch_diagonal({std::log(2.0)});
    DiagonalPNF dd = dual_bundle(d);
    CHECK(dd.weights()[0].log_at[0].second == doctest::Approx(-std::log(2.0)));

    LatticeHermitianBundle s = standard(2);
    LatticeHermitianBundle sd = dual_bundle(s);
    CHECK(degree(sd) == doctest::Approx(0.0)); // self-dual

    LatticeHermitianBundle g = LatticeHermitianBundle(rat_identity(2), diag2(Rational(4), Rational(1)));
    LatticeHermitianBundle gd = dual_bundle(g);
    CHECK(gd.gram()(0, 0) == Rational(1, 4));
    CHECK(gd.gram()(1, 1) == Rational(1));
}

TEST_CASE("degree examples") {
    CHECK(degree(Bundle(standard(2))) == doctest::Approx(0.0));

    // rank 1, ||e||_inf = 1/2, lattice Z -> log 2
    RatMat one = rat_identity(1);
    RatMat quarter = rat_identity(1);
    quarter(0, 0) = Rational(1, 4);
    CHECK(degree(LatticeHermitianBundle(one, quarter)) == doctest::Approx(std::log(2.0)).epsilon(1e-14));

    CHECK(degree(LatticeHermitianBundle(rat_identity(2), diag2(Rational(1), Rational(1, 100)))) ==
          doctest::Approx(std::log(10.0)).epsilon(1e-14));

    // det of diagonal weights (a, b) at infinity -> rank 1, weight a + b
    DiagonalPNF d = arch_diagonal({0.3, 1.2});
    Bundle det = det_bundle(Bundle(d));
    const auto& dd = std::get<DiagonalPNF>(det);
    CHECK(dd.rank() == 1);
    CHECK(dd.weights()[0].log_at[0].second == doctest::Approx(1.5));
    CHECK(degree(det) == doctest::Approx(degree(Bundle(d))).epsilon(1e-12));
}

TEST_CASE("tensor bundles") {
    DiagonalPNF a = arch_diagonal({0.25});
    DiagonalPNF b = arch_diagonal({0.5});
    DiagonalPNF t = tensor_bundle(a, b);
    CHECK(t.rank() == 1);
    CHECK(t.weights()[0].log_at[0].second == doctest::Approx(0.75));

    // tensor degree on hermitian bundles
    for (int iter = 0; iter < 10; ++iter) {
        LatticeHermitianBundle x = random_lattice_bundle(2), y = random_lattice_bundle(3);
        double lhs = degree(tensor_bundle(x, y));
        double rhs = 3.0 * degree(x) + 2.0 * degree(y);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("hermitian duality and tensor identities at random") {
    for (int iter = 0; iter < 25; ++iter) {
        LatticeHermitianBundle x = random_lattice_bundle(2 + static_cast<int>(rng() % 3));
        CHECK(degree(dual_bundle(x)) == doctest::Approx(-degree(x)).epsilon(1e-10));
    }
    for (int iter = 0; iter < 25; ++iter) {
        DiagonalPNF x = arch_diagonal({0.1 * static_cast<double>(rng() % 30), -0.2, 0.4});
        CHECK(degree(Bundle(dual_bundle(x))) == doctest::Approx(-degree(Bundle(x))).epsilon(1e-10));
    }
}

TEST_CASE("restriction and quotient") {
    // restrict standard Z^2 to span(0,1) -> rank-1 standard
    RatMat e2(2, 1);
    e2 << Rational(0), Rational(1);
    LatticeHermitianBundle r = restrict_bundle(standard(2), SubspaceBasis(e2));
    CHECK(r.rank() == 1);
    CHECK(degree(r) == doctest::Approx(0.0));

    // non-saturated input is auto-saturated with a flag
    RatMat twice(2, 1);
    twice << Rational(2), Rational(0);
    bool flagged = false;
    LatticeHermitianBundle r2 = restrict_bundle(standard(2), SubspaceBasis(twice), &flagged);
    CHECK(flagged);
    CHECK(degree(r2) == doctest::Approx(0.0));

    // flag additivity: deg(F) + deg(E/F) = deg(E) for hermitian bundles
    for (int iter = 0; iter < 10; ++iter) {
        LatticeHermitianBundle e = random_lattice_bundle(3);
        RatMat b(3, 1);
        b << Rational(1), Rational(static_cast<long>(rng() % 5)), Rational(static_cast<long>(rng() % 5));
        SubspaceBasis sub(b);
        double df = degree(restrict_bundle(e, sub));
        double dq = degree(quotient_bundle(e, sub).bundle);
        CHECK(df + dq == doctest::Approx(degree(e)).epsilon(1e-10));
    }
}

TEST_CASE("diagonal coordinate flags are exactly additive") {
    DiagonalPNF d = arch_diagonal({0.7, -0.3, 1.1}, ArchShape::L2);
    double total = degree(Bundle(d));
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) sum += restrict_bundle(d, {i}).line_degree(0);
    CHECK(sum == doctest::Approx(total).epsilon(1e-14));

    // subquotients along the coordinate flag {0} < {0,1} < {0,1,2}
    double d0 = restrict_bundle(d, {0}).line_degree(0);
    double d1 = quotient_bundle(restrict_bundle(d, {0, 1}), {0}).line_degree(0);
    double d2 = quotient_bundle(d, {0, 1}).line_degree(0);
    CHECK(d0 + d1 + d2 == doctest::Approx(total).epsilon(1e-14));
}

TEST_CASE("degree of elements") {
    // (standard rank 2, (3,4)) -> -log 5 with l2 at infinity
    RatVec s(2);
    s << Rational(3), Rational(4);
    CHECK(degree_element(standard(2), s) == doctest::Approx(-std::log(5.0)).epsilon(1e-12));

    DiagonalPNF std_l2 = arch_diagonal({0.0, 0.0});
    CHECK(degree_element(std_l2, s) == doctest::Approx(-std::log(5.0)).epsilon(1e-12));

    DiagonalPNF std_max = arch_diagonal({0.0, 0.0}, ArchShape::Max);
    CHECK(degree_element(std_max, s) == doctest::Approx(-std::log(4.0)).epsilon(1e-12));

    // rank-1 bundle with ||e|| = 1/2: deg(e) = log 2
    RatMat one = rat_identity(1);
    RatMat quarter = rat_identity(1);
    quarter(0, 0) = Rational(1, 4);
    RatVec e(1);
    e << Rational(1);
    CHECK(degree_element(LatticeHermitianBundle(one, quarter), e) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    CHECK_THROWS_AS(degree_element(standard(2), RatVec(RatVec::Constant(2, Rational(0)))), argument_error);
}

TEST_CASE("Nevanlinna rank-1 element degree is -log|c(f,0)| - log||e||") {
    double log_e = std::log(0.7);
    for (const char* Rtxt : {"2", "4", "11"}) {
        DiagonalWeight w;
        w.arch_log = log_e;
        DiagonalPNF line(AdelicCurve::nevanlinna(Rational::parse(Rtxt)), ArchShape::L2, {w});
        RationalFunction f = parse_rational_function("(2z^2-z)/(z-5)");
        // c(f, 0) = -1/(-5) ... ord 1 at 0: c = leading Laurent coefficient
        GaussianRational c = laurent_leading(f, GaussianRational(0));
        double expected = -0.5 * log_rational(c.norm()) - log_e;
        CHECK(degree_element(line, std::vector<RationalFunction>{f}) == doctest::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("subspace degrees") {
    LatticeHermitianBundle s2 = standard(2);
    RatMat b34(2, 1);
    b34 << Rational(3), Rational(4);
    CHECK(subspace_degree(s2, SubspaceBasis(b34)) == doctest::Approx(-std::log(5.0)).epsilon(1e-12));

    LatticeHermitianBundle h = LatticeHermitianBundle(rat_identity(2), diag2(Rational(1), Rational(1, 100)));
    RatMat e2(2, 1);
    e2 << Rational(0), Rational(1);
    CHECK(subspace_degree(h, SubspaceBasis(e2)) == doctest::Approx(std::log(10.0)).epsilon(1e-12));

    // gcd of minors corrects non-saturation: span(2,0) in (Z^2, I)
    RatMat twice(2, 1);
    twice << Rational(2), Rational(0);
    CHECK(subspace_degree(s2, SubspaceBasis(twice)) == doctest::Approx(0.0));

    // equals degree(restrict(saturate))
    for (int iter = 0; iter < 10; ++iter) {
        LatticeHermitianBundle e = random_lattice_bundle(3);
        RatMat b(3, 2);
        b << Rational(2), Rational(0), Rational(2), Rational(4), Rational(0), Rational(static_cast<long>(1 + rng() % 4));
        SubspaceBasis sub(b);
        CHECK(subspace_degree(e, sub) == doctest::Approx(degree(restrict_bundle(e, sub))).epsilon(1e-10));
    }
}

TEST_CASE("subspace degree is invariant under unimodular right action and saturation") {
    LatticeHermitianBundle e = random_lattice_bundle(4);
    RatMat b(4, 2);
    b << Rational(1), Rational(0), Rational(2), Rational(3), Rational(0), Rational(6), Rational(1), Rational(1);
    double base = subspace_degree(e, SubspaceBasis(b));

    RatMat u = mat2(1, 3, 0, -1); // unimodular
    CHECK(subspace_degree(e, SubspaceBasis(RatMat(b * u))) == doctest::Approx(base).epsilon(1e-12));

    RatMat doubled = b;
    for (int i = 0; i < 4; ++i) doubled(i, 0) *= Rational(3);
    CHECK(subspace_degree(e, SubspaceBasis(doubled)) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("submodularity on random rank-4 hermitian bundles") {
    std::uniform_int_distribution<long> entry(-2, 2);
    int checked = 0;
    for (int iter = 0; iter < 60 && checked < 20; ++iter) {
        LatticeHermitianBundle e = random_lattice_bundle(4);
        RatMat b1(4, 2), b2(4, 2);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 2; ++j) {
                b1(i, j) = Rational(entry(rng));
                b2(i, j) = Rational(entry(rng));
            }
        if (exact_rank(b1) != 2 || exact_rank(b2) != 2) continue;
        RatMat inter = subspace_intersection(b1, b2);
        RatMat sum = subspace_sum(b1, b2);
        double lhs = (inter.cols() > 0 ? subspace_degree(e, SubspaceBasis(inter)) : 0.0) +
                     subspace_degree(e, SubspaceBasis(sum));
        double rhs = subspace_degree(e, SubspaceBasis(b1)) + subspace_degree(e, SubspaceBasis(b2));
        CHECK(lhs >= rhs - 1e-9);
        ++checked;
    }
    CHECK(checked == 20);
}

TEST_CASE("local distance") {
    DiagonalPNF a = arch_diagonal({0.0, 0.0});
    CHECK(distance_integral(Bundle(a), Bundle(a)) == doctest::Approx(0.0));

    // lambda vs lambda + c at a place of mass m
    DiagonalWeight w1, w2;
    Place p3{RationalFinite{Integer(3)}};
    w1.log_at.emplace_back(p3, 0.25);
    w2.log_at.emplace_back(p3, 0.25 + 0.5);
    DiagonalPNF d1(AdelicCurve::rational(), ArchShape::L2, {w1, DiagonalWeight{}});
    DiagonalPNF d2(AdelicCurve::rational(), ArchShape::L2, {w2, DiagonalWeight{}});
    CHECK(local_distance(Bundle(d1), Bundle(d2), p3) == doctest::Approx(0.5));
    CHECK(distance_integral(Bundle(d1), Bundle(d2)) == doctest::Approx(0.5));

    // hermitian pair: G1 = I, G2 = diag(4,1) -> (1/2) log 4
    LatticeHermitianBundle g1 = standard(2);
    LatticeHermitianBundle g2(rat_identity(2), diag2(Rational(4), Rational(1)));
    CHECK(distance_integral(Bundle(g1), Bundle(g2)) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    CHECK_THROWS_AS(local_distance(Bundle(a), Bundle(g1), p3), unsupported_error);
}

TEST_CASE("infeasible constructions") {
    CHECK_THROWS_AS(LatticeHermitianBundle(mat2(1, 2, 2, 4), rat_identity(2)), infeasible_error);
    CHECK_THROWS_AS(LatticeHermitianBundle(rat_identity(2), diag2(Rational(1), Rational(-1))), infeasible_error);
}
