// Copyright (c) 2026 The kappa authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kappa/padics.hpp"

#include <random>

using namespace kappa;

TEST_CASE("Padic construction and lifts") {
    Padic x = Padic::from_rational(Rational(7, 24), 2, 10);
    CHECK(x.val() == -3);
    // 24 * x = 7 exactly, so 3 * unit = 7 mod 2^10.
    CHECK(mod_reduce(3 * x.unit() - 7, ipow(2, 10)) == 0);

    Padic y = Padic::from_integer(9, 3, 5);
    CHECK(y.val() == 2);
    CHECK(y.unit() == 1);
    CHECK(y.lift() == 9);

    CHECK(Padic::from_integer(0, 5, 4).is_exact_zero());
    CHECK(Padic::from_rational(Rational(0), 5, 4).is_exact_zero());
    CHECK(Padic::make(5, 0, 75, 4).val() == 2); // normalizes non-units
}

TEST_CASE("Padic arithmetic: valuation rules and cancellation") {
    std::mt19937_64 rng(5);
    const Integer p = 5;
    for (int i = 0; i < 100; ++i) {
        Rational a(static_cast<long>(rng() % 2000) - 1000, static_cast<long>(rng() % 50) + 1);
        Rational b(static_cast<long>(rng() % 2000) - 1000, static_cast<long>(rng() % 50) + 1);
        a.canonicalize();
        b.canonicalize();
        if (a == 0 || b == 0) continue;
        Padic xa = Padic::from_rational(a, p, 12);
        Padic xb = Padic::from_rational(b, p, 12);
        CHECK((xa * xb).val() == xa.val() + xb.val());
        Padic sum = xa + xb;
        if (a + b != 0) {
            Padic expect = Padic::from_rational(a + b, p, 12);
            CHECK(congruent(sum, expect, std::min(sum.abs_precision(), expect.abs_precision())));
        }
    }

    Padic x = Padic::from_integer(7, 5, 8);
    CHECK((x - x).is_zero_like());
    CHECK((x - x).abs_precision() == 8);

    // (x + 5^3 y) - x has valuation exactly 3.
    Padic y = Padic::from_integer(2 * 125, 5, 8);
    CHECK(((x + y) - x).val() == 3);
}

TEST_CASE("Padic division, powers, congruence") {
    Padic x = Padic::from_rational(Rational(10, 3), 5, 10);
    Padic inv = Padic::make(5, 0, 1, 10) / x;
    CHECK(congruent(x * inv, Padic::make(5, 0, 1, 10), 9));
    CHECK(x.pow(-2).val() == -2);
    CHECK(congruent(x.pow(3), x * x * x, 10));

    CHECK_THROWS_AS(x / Padic::zero(5), domain_error);
    CHECK_THROWS_AS(x / Padic::approx_zero(5, 4), precision_error);
    CHECK_THROWS_AS(Padic::approx_zero(5, 4).val(), precision_error);
}

TEST_CASE("Padic square roots with the mod-8 obstruction") {
    std::mt19937_64 rng(17);
    for (const long pl : {2L, 3L, 5L, 13L}) {
        Integer p(pl);
        for (int i = 0; i < 60; ++i) {
            Integer r = Integer(static_cast<unsigned long>(rng() % 10000) + 1);
            Padic x = Padic::from_integer(r, p, 12);
            Padic sq = x * x;
            auto root = sqrt(sq);
            REQUIRE(root.has_value());
            CHECK(congruent(*root * *root, sq, sq.abs_precision() - (p == 2 ? 2 : 0)));
            CHECK(is_square(sq));
        }
    }
    // 5 = 1 + 4 is not a square in Q_2; 17 = 1 + 16 is.
    CHECK(!is_square(Padic::from_integer(5, 2, 10)));
    CHECK(!sqrt(Padic::from_integer(5, 2, 10)).has_value());
    CHECK(is_square(Padic::from_integer(17, 2, 10)));
    // odd valuation
    CHECK(!is_square(Padic::from_integer(8, 2, 10)));
    CHECK(!sqrt(Padic::from_integer(27, 3, 10)).has_value());
}

TEST_CASE("quadratic field setup") {
    QuadraticField F2(2);
    CHECK(F2.D == 5);
    CHECK(F2.s == 1);
    CHECK(F2.t == 1);

    QuadraticField F3(3);
    CHECK(F3.D == 2);
    QuadraticField F7(7);
    CHECK(F7.D == 3); // 2 is a QR mod 7

    // sqrt(D) expressed in the integral basis squares to D.
    for (const Integer& pl : {Integer(2), Integer(3), Integer(7)}) {
        QuadraticField F(pl);
        QuadElement sd = QuadElement::make(F, 0, F.sqrt_a, F.sqrt_b, 8);
        QuadElement target = QuadElement::from_rational(F, Rational(F.D), 8);
        CHECK(congruent(sd * sd, target, 8));
    }
}

TEST_CASE("quadratic extension arithmetic: norm, trace, conjugation") {
    QuadraticField F(3);
    std::mt19937_64 rng(23);
    for (int i = 0; i < 60; ++i) {
        QuadElement x = QuadElement::make(F, static_cast<long>(rng() % 5) - 2,
                                          Integer(static_cast<unsigned long>(rng() % 700 + 1)),
                                          Integer(static_cast<unsigned long>(rng() % 700)), 10);
        QuadElement y = QuadElement::make(F, 0,
                                          Integer(static_cast<unsigned long>(rng() % 700)),
                                          Integer(static_cast<unsigned long>(rng() % 700 + 1)), 10);
        // N(xy) = N(x)N(y)
        Padic nxy = (x * y).norm();
        CHECK(congruent(nxy, x.norm() * y.norm(), nxy.abs_precision()));
        // x * conj(x) = N(x), x + conj(x) = Tr(x)
        CHECK(congruent(x * x.conj(), QuadElement::from_padic(F, x.norm()),
                        x.norm().abs_precision()));
        QuadElement sumc = x + x.conj();
        Padic tr = x.trace();
        if (!sumc.is_zero_like() && !tr.is_zero_like())
            CHECK(congruent(sumc, QuadElement::from_padic(F, tr),
                            std::min(sumc.abs_precision(), tr.abs_precision())));
        // division inverts multiplication
        QuadElement q = x / y;
        CHECK(congruent(q * y, x, q.abs_precision() - 1));
    }
}

TEST_CASE("golden-ratio unit in the unramified quadratic over Q_2") {
    QuadraticField F(2);
    // eps = (-1 + sqrt 5)/2 = theta - 1 has norm -1; eps^2 = 2 - theta.
    QuadElement eps = QuadElement::make(F, 0, -1, 1, 12);
    Padic none = eps.norm();
    CHECK(congruent(none, -Padic::make(Integer(2), 0, 1, 12), 12));
    QuadElement eps2 = eps * eps;
    CHECK(congruent(eps2, QuadElement::make(F, 0, 2, -1, 12), 12));
    CHECK(congruent(eps.pow(6) * eps.pow(-6), QuadElement::make(F, 0, 1, 0, 12), 11));
}

TEST_CASE("quadratic square roots") {
    std::mt19937_64 rng(31);
    for (const Integer& pl : {Integer(2), Integer(3), Integer(13)}) {
        QuadraticField F(pl);
        for (int i = 0; i < 25; ++i) {
            QuadElement x = QuadElement::make(F, 0,
                                              Integer(static_cast<unsigned long>(rng() % 500 + 1)),
                                              Integer(static_cast<unsigned long>(rng() % 500)), 10);
            QuadElement sq = x * x;
            CHECK(is_square(sq));
            auto root = sqrt(sq);
            REQUIRE(root.has_value());
            CHECK(congruent(*root * *root, sq, sq.abs_precision() - (pl == 2 ? 2 : 0)));
        }
        // Odd valuation is never a square in the unramified extension.
        QuadElement odd = QuadElement::make(F, 1, 1, 1, 8);
        CHECK(!is_square(odd));
    }
    // -1 is not a square in Q_2(sqrt 5): no zeta_4 in unramified extensions of Q_2.
    QuadraticField F2(2);
    CHECK(!is_square(QuadElement::make(F2, 0, -1, 0, 8)));
    // 5 = (2 theta - 1)^2 becomes a square there.
    CHECK(is_square(QuadElement::from_rational(F2, Rational(5), 8)));
}

TEST_CASE("exponentials are homomorphic where they converge") {
    QuadraticField F5(5);
    QuadElement x = QuadElement::make(F5, 1, 2, 3, 9); // valuation 1
    QuadElement ex = exp(x);
    CHECK(congruent(exp(x + x), ex * ex, ex.abs_precision() - 1));
    QuadElement ex_inv = exp(-x);
    CHECK(congruent(ex * ex_inv, QuadElement::make(F5, 0, 1, 0, 9), ex.abs_precision() - 1));

    // p = 2 requires valuation >= 2.
    QuadraticField F2(2);
    QuadElement y = QuadElement::make(F2, 2, 1, 1, 9);
    QuadElement ey = exp(y);
    CHECK(congruent(exp(y + y), ey * ey, ey.abs_precision() - 2));
    CHECK_THROWS_AS(exp(QuadElement::make(F2, 1, 1, 0, 6)), domain_error);

    Padic px = Padic::from_integer(10, 5, 8);
    CHECK(congruent(exp(px + px), exp(px) * exp(px), 8));
}
