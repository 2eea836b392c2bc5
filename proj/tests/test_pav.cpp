#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "adelic/arith.hpp"
#include "adelic/errors.hpp"
#include "adelic/expr.hpp"
#include "adelic/place.hpp"

using namespace adelic;

TEST_CASE("pav evaluation on rational places") {
    Place p5{RationalFinite{Integer(5)}};
    CHECK(pav_eval(p5, Rational(6, 5)).value == doctest::Approx(5.0).epsilon(1e-14)); // v_5 = -1
    CHECK(pav_eval(p5, Rational(0)).value == 0.0);

    Place inf{RationalInfinite{}};
    CHECK(pav_eval(inf, Rational(-7, 2)).value == doctest::Approx(3.5));
    CHECK_THROWS_AS(Place(RationalFinite{Integer(6)}), argument_error);
}

TEST_CASE("pav evaluation on Nevanlinna places") {
    RationalFunction f = parse_rational_function("z - 1/2");
    Place interior{NevanlinnaInterior{GaussianRational(Rational(1, 2)), Rational(1)}};
    CHECK(pav_eval(interior, f).value == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(!is_archimedean(interior));

    RationalFunction g = parse_rational_function("1/(z-1)");
    Place boundary{NevanlinnaBoundary{Rational(1), 0.0}}; // theta = 0 sits exactly on the pole
    CHECK(pav_eval(boundary, g).infinite);
    CHECK(!is_finite(boundary, g));
    CHECK(is_archimedean(boundary));
    // a zero exactly at the node lands in the kernel
    CHECK(in_kernel(boundary, parse_rational_function("z-1")));
    // near-misses trip the clearance guard instead of returning junk
    Place near_pole_node{NevanlinnaBoundary{Rational(1), 1e-12}};
    CHECK_THROWS_AS(pav_eval(near_pole_node, g), numerical_guard_error);

    Place off{NevanlinnaBoundary{Rational(1), M_PI}};
    CHECK(pav_eval(off, g).value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(is_finite(off, g));
    CHECK(!in_kernel(off, g));

    // interior point must lie strictly inside
    CHECK_THROWS_AS(Place(NevanlinnaInterior{GaussianRational(Rational(1)), Rational(1)}), argument_error);

    // field mismatch
    CHECK_THROWS_AS(pav_eval(interior, Rational(2)), argument_error);
}

TEST_CASE("classification, finiteness, kernel") {
    Place p3{RationalFinite{Integer(3)}};
    CHECK(!is_archimedean(p3));
    CHECK(classify(p3) == PlaceClass::NonArchimedean);
    CHECK(classify(Place(NevanlinnaInterior{GaussianRational(Rational(0)), Rational(1)})) ==
          PlaceClass::NonArchimedean);
    CHECK(classify(Place(RationalInfinite{})) == PlaceClass::Archimedean);
    CHECK(is_finite(p3, Rational(6)));
    CHECK(!in_kernel(p3, Rational(6))); // |6|_3 = 1/3 != 0
    CHECK(in_kernel(p3, Rational(0)));

    RationalFunction g = parse_rational_function("1/(z-1)");
    Place bnd{NevanlinnaBoundary{Rational(1), 0.0}};
    CHECK(!is_finite(bnd, g)); // pole sits exactly at the node
    Place away{NevanlinnaBoundary{Rational(1), 0.5}};
    CHECK(is_finite(away, g));
}

TEST_CASE("log multiplicativity away from the {0, inf} clash") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> coef(-30, 30);
    std::vector<Place> places = {Place(RationalFinite{Integer(2)}), Place(RationalFinite{Integer(7)}),
                                 Place(RationalInfinite{})};
    for (int iter = 0; iter < 200; ++iter) {
        Rational f(coef(rng), 1 + std::abs(coef(rng)));
        Rational g(coef(rng), 1 + std::abs(coef(rng)));
        if (f.is_zero() || g.is_zero()) continue;
        for (const Place& w : places) {
            double lhs = log_pav_eval(w, f * g);
            double rhs = log_pav_eval(w, f) + log_pav_eval(w, g);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("ultrametric inequality at non-archimedean places") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> coef(-50, 50);
    for (int iter = 0; iter < 300; ++iter) {
        Rational a(coef(rng), 1 + std::abs(coef(rng)));
        Rational b(coef(rng), 1 + std::abs(coef(rng)));
        for (long pl : {2L, 3L, 5L, 13L}) {
            Place w{RationalFinite{Integer(pl)}};
            double va = pav_eval(w, a).value, vb = pav_eval(w, b).value;
            double vs = pav_eval(w, a + b).value;
            CHECK(vs <= std::max(va, vb) * (1 + 1e-12));
        }
    }
}

TEST_CASE("splitting in Q(i)") {
    Place p5{RationalFinite{Integer(5)}};
    auto above5 = split_rational_place(-1, p5); // 5 = (2+i)(2-i)
    REQUIRE(above5.size() == 2);
    CHECK(above5[0].weight == Rational(1, 2));
    CHECK(above5[1].weight == Rational(1, 2));

    auto above2 = split_rational_place(-1, Place(RationalFinite{Integer(2)})); // 2 ramifies
    REQUIRE(above2.size() == 1);
    CHECK(above2[0].weight == Rational(1));
    CHECK(above2[0].place.get_if<QuadraticPlace>()->kind == SplitKind::Ramified);

    auto above3 = split_rational_place(-1, Place(RationalFinite{Integer(3)})); // 3 inert
    REQUIRE(above3.size() == 1);
    CHECK(above3[0].place.get_if<QuadraticPlace>()->kind == SplitKind::Inert);

    auto aboveInf = split_rational_place(-1, Place(RationalInfinite{}));
    REQUIRE(aboveInf.size() == 1);
    CHECK(aboveInf[0].weight == Rational(1)); // complex place

    auto aboveInf5 = split_rational_place(5, Place(RationalInfinite{}));
    REQUIRE(aboveInf5.size() == 2); // two real embeddings

    CHECK_THROWS_AS(split_rational_place(4, p5), argument_error);
}

TEST_CASE("split weights sum to one for many d and p") {
    for (long d : {-1L, -3L, 5L, -5L, 2L, -2L, 13L}) {
        for (long p = 2; p <= 100; ++p) {
            if (!is_prime(Integer(p))) continue;
            Rational total(0);
            for (const auto& wp : split_rational_place(d, Place(RationalFinite{Integer(p)}))) total += wp.weight;
            CHECK(total == Rational(1));
        }
        Rational total(0);
        for (const auto& wp : split_rational_place(d, Place(RationalInfinite{}))) total += wp.weight;
        CHECK(total == Rational(1));
    }
}

TEST_CASE("quadratic valuations against explicit factorizations") {
    // 2+i generates one of the primes above 5 in Z[i]
    QuadraticElement x(-1, Rational(2), Rational(1));
    auto above5 = split_rational_place(-1, Place(RationalFinite{Integer(5)}));
    Rational v0 = quadratic_valuation(*above5[0].place.get_if<QuadraticPlace>(), x);
    Rational v1 = quadratic_valuation(*above5[1].place.get_if<QuadraticPlace>(), x);
    CHECK(((v0 == Rational(1) && v1 == Rational(0)) || (v0 == Rational(0) && v1 == Rational(1))));

    // 1+i has valuation 1/2 at the ramified prime above 2 (normalised by p^-v)
    QuadraticElement y(-1, Rational(1), Rational(1));
    auto above2 = split_rational_place(-1, Place(RationalFinite{Integer(2)}));
    CHECK(quadratic_valuation(*above2[0].place.get_if<QuadraticPlace>(), y) == Rational(1, 2));

    // 3 inert: v(3) = 1 via norm 9
    QuadraticElement three(-1, Rational(3), Rational(0));
    auto above3 = split_rational_place(-1, Place(RationalFinite{Integer(3)}));
    CHECK(quadratic_valuation(*above3[0].place.get_if<QuadraticPlace>(), three) == Rational(1));
}

TEST_CASE("place keys") {
    CHECK(Place(RationalFinite{Integer(5)}).key() == "p=5");
    CHECK(Place(RationalInfinite{}).key() == "inf");
    auto q = split_rational_place(-1, Place(RationalFinite{Integer(5)}))[0].place;
    CHECK(q.key() == "quad(d=-1,p=5,#0)");
    Place ni{NevanlinnaInterior{GaussianRational(Rational(1, 2)), Rational(1)}};
    CHECK(ni.key() == "nev-int(z=1/2, R=1)");
    CHECK(Place(NevanlinnaBoundary{Rational(1), 0.25}).key() == "nev-bnd(R=1)");
}
