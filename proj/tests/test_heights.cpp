#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "adelic/errors.hpp"
#include "adelic/expr.hpp"
#include "adelic/heights.hpp"

using namespace adelic;

namespace {

DiagonalPNF standard_diag(int n, ArchShape shape = ArchShape::L2) {
    return DiagonalPNF(AdelicCurve::rational(), shape, std::vector<DiagonalWeight>(static_cast<std::size_t>(n)));
}

RationalPoint pt(std::vector<long> coords) {
    RationalPoint p;
    for (long c : coords) p.coords.emplace_back(c);
    return p;
}

std::mt19937_64 rng(41);

} // namespace

TEST_CASE("Fubini-Study heights of rational points") {
    AdelicCurve Q = AdelicCurve::rational();
    FSMetricSpec l2{Bundle(standard_diag(2))};
    FSMetricSpec mx{Bundle(standard_diag(2, ArchShape::Max))};

    CHECK(fs_height(Q, l2, ProjectivePoint(pt({3, 4}))) == doctest::Approx(std::log(5.0)).epsilon(1e-12));
    CHECK(fs_height(Q, mx, ProjectivePoint(pt({3, 4}))) == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    CHECK(fs_height(Q, l2, ProjectivePoint(pt({1, 0}))) == doctest::Approx(0.0));

    // lattice-hermitian ambient gives the same standard height
    FSMetricSpec lat{Bundle(LatticeHermitianBundle(rat_identity(2), rat_identity(2)))};
    CHECK(fs_height(Q, lat, ProjectivePoint(pt({3, 4}))) == doctest::Approx(std::log(5.0)).epsilon(1e-12));

    CHECK_THROWS_AS(fs_height(Q, l2, ProjectivePoint(pt({0, 0}))), argument_error);
}

TEST_CASE("height is invariant under coordinate scaling") {
    AdelicCurve Q = AdelicCurve::rational();
    FSMetricSpec l2{Bundle(standard_diag(3))};
    std::uniform_int_distribution<long> coord(-50, 50);
    for (int iter = 0; iter < 40; ++iter) {
        RationalPoint p = pt({coord(rng), coord(rng), coord(rng)});
        bool allzero = true;
        for (auto& c : p.coords)
            if (!c.is_zero()) allzero = false;
        if (allzero) continue;
        Rational lambda(coord(rng), 1 + std::labs(coord(rng)));
        if (lambda.is_zero()) continue;
        RationalPoint q = p;
        for (auto& c : q.coords) c *= lambda;
        CHECK(fs_height(Q, l2, ProjectivePoint(p)) ==
              doctest::Approx(fs_height(Q, l2, ProjectivePoint(q))).epsilon(1e-10));
    }
}

TEST_CASE("heights of quadratic points") {
    AdelicCurve Qi = AdelicCurve::quadratic(-1);
    std::vector<DiagonalWeight> w(2);
    DiagonalPNF amb(Qi, ArchShape::L2, w);
    FSMetricSpec spec{Bundle(amb)};

    // [1 : 0] has height zero
    QuadraticPoint unit{-1, {QuadraticElement(-1, Rational(1), Rational(0)), QuadraticElement(-1, Rational(0), Rational(0))}};
    CHECK(fs_height(Qi, spec, ProjectivePoint(unit)) == doctest::Approx(0.0));

    // [1 : i]: finite places contribute 0, complex place gives log sqrt(2), mass 1
    QuadraticPoint onei{-1, {QuadraticElement(-1, Rational(1), Rational(0)), QuadraticElement(-1, Rational(0), Rational(1))}};
    CHECK(fs_height(Qi, spec, ProjectivePoint(onei)) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-12));

    // scaling invariance by 1 + i
    QuadraticPoint scaled = onei;
    QuadraticElement lambda(-1, Rational(1), Rational(1));
    for (auto& c : scaled.coords) c = c * lambda;
    CHECK(fs_height(Qi, spec, ProjectivePoint(scaled)) ==
          doctest::Approx(fs_height(Qi, spec, ProjectivePoint(onei))).epsilon(1e-10));
}

TEST_CASE("counting function") {
    RationalFunction z = RationalFunction::variable();

    CHECK(counting_N(z, std::nullopt, 10.0) == doctest::Approx(0.0)); // polynomial: no poles
    CHECK(counting_N(RationalFunction(1) / z, std::nullopt, 7.0) == doctest::Approx(std::log(7.0)).epsilon(1e-12));

    // (z-1)^2 at a = 0, truncation 1: min(1, 2) log 10
    RationalFunction f = (z - RationalFunction(1)) * (z - RationalFunction(1));
    CHECK(counting_N(f, GaussianRational(0), 10.0, 1) == doctest::Approx(std::log(10.0)).epsilon(1e-12));
    CHECK(counting_N(f, GaussianRational(0), 10.0) == doctest::Approx(2.0 * std::log(10.0)).epsilon(1e-12));

    // classical integral form agrees when no solutions lie in 0 < |z| <= 1
    RationalFunction g = parse_rational_function("(z-2)(z-3)/(z-5)");
    CHECK(counting_N_classical(g, GaussianRational(0), 10.0) ==
          doctest::Approx(counting_N(g, GaussianRational(0), 10.0)).epsilon(1e-12));

    CHECK_THROWS_AS(counting_N(z, GaussianRational(0), 1e-9), numerical_guard_error); // root on the circle? no: radius guard
}

TEST_CASE("proximity function") {
    RationalFunction z = RationalFunction::variable();
    IntegrationConfig cfg;

    CHECK(proximity_m(z, std::nullopt, 10.0, cfg) == doctest::Approx(std::log(10.0)).epsilon(1e-10));
    CHECK(proximity_m(z, std::nullopt, 0.5, cfg) == doctest::Approx(0.0));
    CHECK(proximity_m(RationalFunction(1) / z, std::nullopt, 10.0, cfg) == doctest::Approx(0.0));

    // kink-refined quadrature: |z - 1/2| crosses 1 on the circle r = 1.2
    RationalFunction f = parse_rational_function("z-1/2");
    double m = proximity_m(f, std::nullopt, 1.2, cfg);
    IntegrationConfig fine;
    fine.nodes = 1 << 16;
    double m_ref = proximity_m(f, std::nullopt, 1.2, fine);
    CHECK(m == doctest::Approx(m_ref).epsilon(1e-9));
}

TEST_CASE("characteristic function") {
    RationalFunction z = RationalFunction::variable();
    IntegrationConfig cfg;
    for (double r : {1.0, 2.0, 8.0}) {
        CHECK(characteristic_T(z, std::nullopt, r, cfg) == doctest::Approx(std::log(r)).epsilon(1e-10));
        CHECK(characteristic_T(RationalFunction(1) / z, std::nullopt, r, cfg) ==
              doctest::Approx(std::log(r)).epsilon(1e-10));
        // first main theorem instance: T(r, z at 0) - T(r, z at infinity) = 0
        double diff = characteristic_T(z, GaussianRational(0), r, cfg) - characteristic_T(z, std::nullopt, r, cfg);
        CHECK(diff == doctest::Approx(0.0).epsilon(1e-9));
    }
}

TEST_CASE("characteristic subadditivity T(f+g) <= T(f) + T(g) + log 2") {
    std::mt19937_64 gen(47);
    std::uniform_int_distribution<long> c(-6, 6);
    RationalFunction z = RationalFunction::variable();
    IntegrationConfig cfg;
    cfg.nodes = 1024;
    int done = 0;
    for (int iter = 0; iter < 40 && done < 12; ++iter) {
        RationalFunction f = (z - RationalFunction(GaussianRational(Rational(c(gen)), Rational(c(gen), 3)))) /
                             (z - RationalFunction(GaussianRational(Rational(c(gen), 2), Rational(7))));
        RationalFunction g = (z - RationalFunction(GaussianRational(Rational(c(gen), 3)))) *
                             RationalFunction(GaussianRational(Rational(1 + std::labs(c(gen)))));
        if (f.is_zero() || g.is_zero() || (f + g).is_zero()) continue;
        for (double r : {1.5, 6.0}) {
            try {
                double lhs = characteristic_T(f + g, std::nullopt, r, cfg);
                double rhs = characteristic_T(f, std::nullopt, r, cfg) + characteristic_T(g, std::nullopt, r, cfg);
                CHECK(lhs <= rhs + std::log(2.0) + 1e-8);
                ++done;
            } catch (const numerical_guard_error&) {
            }
        }
    }
    CHECK(done >= 8);
}

TEST_CASE("N, m, T nonnegative and nondecreasing for polynomials at infinity") {
    RationalFunction f = parse_rational_function("z^3-2z+1");
    IntegrationConfig cfg;
    cfg.nodes = 1024;
    double prevT = -1.0, prevN = -1.0;
    for (double r : {1.0, 2.0, 4.0, 16.0, 64.0}) {
        double N = counting_N(f, std::nullopt, r, kUntruncated, cfg);
        double m = proximity_m(f, std::nullopt, r, cfg);
        double T = m + N;
        CHECK(N >= -1e-12);
        CHECK(m >= -1e-12);
        CHECK(T >= prevT - 1e-9);
        CHECK(N >= prevN - 1e-12);
        prevT = T;
        prevN = N;
    }
}

TEST_CASE("Cartan height of [1:z]") {
    IntegrationConfig cfg;
    for (double r : {2.0, 7.0}) {
        Rational R = Rational::from_double(r);
        CartanHeight mx = cartan_fs_height({RationalFunction(1), RationalFunction::variable()}, ArchShape::Max, R, cfg);
        CHECK(mx.height == doctest::Approx(std::log(r)).epsilon(1e-10));
        REQUIRE(mx.characteristic.has_value());
        CHECK(*mx.gap == doctest::Approx(0.0).epsilon(1e-9));

        CartanHeight l2 = cartan_fs_height({RationalFunction(1), RationalFunction::variable()}, ArchShape::L2, R, cfg);
        CHECK(l2.height == doctest::Approx(0.5 * std::log(1.0 + r * r)).epsilon(1e-10));
        CHECK(std::fabs(*l2.gap) <= 0.5 * std::log(2.0) + 1e-9);
    }

    // constant point
    CartanHeight c = cartan_fs_height({RationalFunction(1), RationalFunction(1)}, ArchShape::Max, Rational(3), cfg);
    CHECK(c.height == doctest::Approx(0.0).epsilon(1e-10));

    // non-coprime input is reduced and flagged
    RationalFunction z = RationalFunction::variable();
    CartanHeight red = cartan_fs_height({z, z * z}, ArchShape::Max, Rational(2), cfg);
    CHECK(red.reduced_input);
    CHECK(red.height == doctest::Approx(std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("metrized characteristic") {
    IntegrationConfig cfg;
    RationalFunction z = RationalFunction::variable();
    for (double r : {2.0, 8.0}) {
        Rational R = Rational::from_double(r);
        // T_fs(z at infinity) = mean log max(1, |z|) = log r
        CHECK(characteristic_fs(z, std::nullopt, R, ArchShape::Max, cfg) ==
              doctest::Approx(std::log(r)).epsilon(1e-10));
        // section change to a = 0 is exactly neutral for f = z (c = 1)
        CHECK(characteristic_fs(z, GaussianRational(0), R, ArchShape::Max, cfg) ==
              doctest::Approx(std::log(r)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(characteristic_fs(z, GaussianRational(0), Rational(1, 1000000000L), ArchShape::Max, cfg),
                    numerical_guard_error); // solution z = 0 within clearance of a tiny circle
}

TEST_CASE("section change identity") {
    IntegrationConfig cfg;
    RationalFunction z = RationalFunction::variable();
    std::vector<Rational> grid{Rational(2), Rational(4), Rational(8)};

    // f = z, a1 = 0, a2 = infinity: difference 0, reference 0
    auto rows = fmt_section_gap(z, GaussianRational(0), std::nullopt, grid, cfg);
    for (const auto& row : rows) {
        REQUIRE(row.difference.has_value());
        CHECK(row.reference == doctest::Approx(0.0));
        CHECK(std::fabs(*row.gap) < 1e-8);
    }

    // f = 2z: the identity pins difference = reference = log|c(1/(2z), 0)| = -log 2
    auto rows2 = fmt_section_gap(parse_rational_function("2z"), GaussianRational(0), std::nullopt, grid, cfg);
    for (const auto& row : rows2) {
        CHECK(row.reference == doctest::Approx(-std::log(2.0)).epsilon(1e-12));
        CHECK(std::fabs(*row.gap) < 1e-8);
    }

    // equal targets
    auto rows3 = fmt_section_gap(z, GaussianRational(1), GaussianRational(1), grid, cfg);
    for (const auto& row : rows3) {
        CHECK(row.reference == doctest::Approx(0.0));
        CHECK(std::fabs(*row.difference) < 1e-12);
    }
}

TEST_CASE("defect estimates") {
    IntegrationConfig cfg;
    cfg.nodes = 1024;
    RationalFunction z = RationalFunction::variable();

    // polynomials omit infinity entirely: delta(infinity) = 1
    DefectEstimate poly = defect_estimate(z * z, std::nullopt, {10.0, 100.0, 1000.0}, cfg);
    REQUIRE(poly.limit_estimate.has_value());
    CHECK(*poly.limit_estimate == doctest::Approx(1.0).epsilon(1e-3));

    // z attains 1 once: ratio tends to 0
    DefectEstimate hit = defect_estimate(z, GaussianRational(1), {10.0, 100.0, 1000.0}, cfg);
    REQUIRE(hit.limit_estimate.has_value());
    CHECK(std::fabs(*hit.limit_estimate) < 1e-2);

    // ratios approach the limit monotonically at this scale and stay in [0, 1]
    DefectEstimate mono = defect_estimate(z, GaussianRational(1), {10.0, 100.0, 1000.0}, cfg);
    for (const auto& row : mono.rows) {
        REQUIRE(row.ratio.has_value());
        CHECK(std::fabs(*row.ratio - *mono.limit_estimate) < 1e-1);
        CHECK(*row.ratio >= -1e-9);
        CHECK(*row.ratio <= 1.0 + 1e-9);
    }

    CHECK_THROWS_AS(defect_estimate(RationalFunction(3), std::nullopt, {10.0}, cfg), argument_error);
}

TEST_CASE("characteristic table") {
    IntegrationConfig cfg;
    cfg.nodes = 1024;
    RationalFunction f = parse_rational_function("(z-1)^2/(z-3)");
    CharacteristicReport rep = characteristic_table(f, GaussianRational(0), {2.0, 5.0, 10.0}, 1, true,
                                                    ArchShape::Max, cfg);
    REQUIRE(rep.rows.size() == 3);
    for (const auto& row : rep.rows) {
        if (row.flag) continue;
        REQUIRE(row.T.has_value());
        CHECK(*row.T == doctest::Approx(*row.m + *row.N).epsilon(1e-12));
        CHECK(*row.N_truncated <= *row.N + 1e-12);
        REQUIRE(row.fs_height.has_value());
    }
}

TEST_CASE("height additivity and metric change bound") {
    AdelicCurve Q = AdelicCurve::rational();
    FSMetricSpec l2{Bundle(standard_diag(2))};
    ProjectivePoint P{pt({3, 4})};

    AdditivityReport rep = height_additivity_check(Q, l2, l2, P, 1, 1);
    CHECK(rep.h_combined == doctest::Approx(2.0 * std::log(5.0)).epsilon(1e-10));
    CHECK(std::fabs(rep.additivity_gap) < 1e-10);

    // diag(4,1) pairing: distance log 2
    std::vector<DiagonalWeight> w(2);
    w[0].log_at.emplace_back(Place(RationalInfinite{}), std::log(2.0)); // ||e_0|| = 2 : Gram 4
    FSMetricSpec stretched{Bundle(DiagonalPNF(Q, ArchShape::L2, w))};
    AdditivityReport rep2 = height_additivity_check(Q, l2, stretched, P, 1, 1);
    REQUIRE(rep2.metric_distance.has_value());
    CHECK(*rep2.metric_distance == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    REQUIRE(rep2.metric_bound_holds.has_value());
    CHECK(*rep2.metric_bound_holds);
    CHECK(std::fabs(rep2.additivity_gap) < 1e-10);

    // trivial point
    AdditivityReport rep3 = height_additivity_check(Q, l2, stretched, ProjectivePoint(pt({1, 0})), 2, 1);
    CHECK(*rep3.metric_bound_holds);
}

TEST_CASE("powers of a point match tensor powers of the metric") {
    AdelicCurve Q = AdelicCurve::rational();
    FSMetricSpec l2{Bundle(standard_diag(2))};
    std::uniform_int_distribution<long> coord(-30, 30);
    for (int m = 1; m <= 4; ++m) {
        for (int iter = 0; iter < 5; ++iter) {
            RationalPoint p = pt({coord(rng), coord(rng)});
            if (p.coords[0].is_zero() && p.coords[1].is_zero()) continue;
            double h1 = fs_height(Q, l2, ProjectivePoint(p));
            Bundle powered = bundle_power(l2.ambient, m);
            double hm = fs_height(Q, FSMetricSpec{powered}, ProjectivePoint(RationalPoint{coordinate_power(p.coords, m)}));
            CHECK(hm == doctest::Approx(static_cast<double>(m) * h1).epsilon(1e-10));
        }
    }
}
