// Copyright (c) 2026 The kappa authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kappa/integers.hpp"

#include <random>
#include <set>

using namespace kappa;

TEST_CASE("factor: conductor of the rank-2 curve with additive 71") {
    Factorization f = factor(Integer(10082));
    REQUIRE(f.sign == 1);
    REQUIRE(f.primes.size() == 2);
    CHECK(f.primes[0] == std::pair<Integer, unsigned>{2, 1});
    CHECK(f.primes[1] == std::pair<Integer, unsigned>{71, 2});
    CHECK(f.value() == 10082);
}

TEST_CASE("factor: units and a large signed discriminant") {
    Factorization u = factor(Integer(-1));
    CHECK(u.sign == -1);
    CHECK(u.primes.empty());
    CHECK(u.value() == -1);

    Integer delta = -ipow(2, 19) * ipow(5, 6) * 313;
    Factorization f = factor(delta);
    CHECK(f.sign == -1);
    REQUIRE(f.primes.size() == 3);
    CHECK(f.primes[0] == std::pair<Integer, unsigned>{2, 19});
    CHECK(f.primes[1] == std::pair<Integer, unsigned>{5, 6});
    CHECK(f.primes[2] == std::pair<Integer, unsigned>{313, 1});
    CHECK(f.value() == delta);
    CHECK(f.to_string() == "-2^19 * 5^6 * 313");
}

TEST_CASE("factor: zero input rejected, random round trips") {
    CHECK_THROWS_AS(factor(Integer(0)), domain_error);

    std::mt19937_64 rng(20260808);
    for (int i = 0; i < 40; ++i) {
        Integer n = Integer(static_cast<unsigned long>(rng() % 1000000000000000000ULL)) + 2;
        if (rng() & 1) n = -n;
        CHECK(factor(n).value() == n);
    }
}

TEST_CASE("valuation: basic and curve-derived values") {
    CHECK(valuation(Integer(ipow(2, 3) * ipow(71, 3)), Integer(71)) == 3);
    CHECK(valuation(Rational(1), Integer(5)) == Valuation(0));

    // j-invariant of the conductor-15650 curve: -2^-19 * 313^-1 * 7^3*103^3*139^3.
    Rational j(ipow(7, 3) * ipow(103, 3) * ipow(139, 3), ipow(2, 19) * 313);
    j.canonicalize();
    j = -j;
    CHECK(valuation(j, Integer(2)) == Valuation(-19));
    CHECK(valuation(j, Integer(313)) == Valuation(-1));
    CHECK(valuation(j, Integer(7)) == Valuation(3));

    CHECK(valuation(Rational(0), Integer(3)).is_infinite());
    CHECK_THROWS_AS(valuation(Rational(1, 2), Integer(4)), domain_error);
}

TEST_CASE("valuation: multiplicativity and ultrametric inequality") {
    std::mt19937_64 rng(7);
    const Integer p = 5;
    for (int i = 0; i < 200; ++i) {
        Rational x(Integer(rng() % 100000) - 50000, Integer(rng() % 999 + 1));
        Rational y(Integer(rng() % 100000) - 50000, Integer(rng() % 999 + 1));
        x.canonicalize();
        y.canonicalize();
        if (x == 0 || y == 0) continue;
        CHECK(valuation(x * y, p) == valuation(x, p) + valuation(y, p));
        Valuation vs = valuation(x + y, p);
        Valuation lo = min(valuation(x, p), valuation(y, p));
        CHECK(lo <= vs);
        if (!(valuation(x, p) == valuation(y, p))) CHECK(vs == lo);
    }
}

namespace {

int brute_kronecker_prime(const Integer& a, long p) {
    // Legendre symbol by an exhaustive table of squares mod p.
    Integer r = mod_reduce(a, p);
    if (r == 0) return 0;
    for (long x = 1; x < p; ++x)
        if (mod_reduce(Integer(x) * x, p) == r) return 1;
    return -1;
}

} // namespace

TEST_CASE("kronecker symbol vs exhaustive squares") {
    CHECK(kronecker_symbol(2, 7) == brute_kronecker_prime(2, 7));
    CHECK(kronecker_symbol(2, 7) == 1);
    CHECK(kronecker_symbol(12345, 1) == 1);
    CHECK(kronecker_symbol(5, 313) == brute_kronecker_prime(5, 313));
    for (long a = -20; a <= 20; ++a) {
        CHECK(kronecker_symbol(a, 313) == brute_kronecker_prime(a, 313));
        CHECK(kronecker_symbol(a, 71) == brute_kronecker_prime(a, 71));
    }
    CHECK_THROWS_AS(kronecker_symbol(3, 0), domain_error);
}

TEST_CASE("sqrt_mod_prime_power: pinned cases") {
    auto one = sqrt_mod_prime_power(1, 7, 5);
    REQUIRE(one.has_value());
    CHECK(mod_reduce(*one * *one - 1, ipow(7, 5)) == 0);

    auto r = sqrt_mod_prime_power(17, 2, 10);
    REQUIRE(r.has_value());
    CHECK(mod_reduce(*r * *r - 17, ipow(2, 10)) == 0);

    // 5 is not 1 mod 8, so it has no 2-adic square root.
    CHECK(!sqrt_mod_prime_power(5, 2, 3).has_value());
    CHECK(!sqrt_mod_prime_power(5, 2, 12).has_value());
}

TEST_CASE("sqrt_mod_prime_power agrees with exhaustive search") {
    const std::vector<std::pair<Integer, unsigned>> moduli = {
        {2, 14}, {3, 8}, {5, 6}, {7, 4}, {11, 3}, {127, 2}, {12007, 1}};
    for (const auto& [p, k] : moduli) {
        Integer pk = ipow(p, k);
        std::set<Integer> squares;
        for (Integer x = 0; x < pk; ++x) squares.insert(mod_reduce(x * x, pk));
        for (Integer a = 0; a < pk; ++a) {
            auto root = sqrt_mod_prime_power(a, p, k);
            if (squares.count(a)) {
                REQUIRE(root.has_value());
                CHECK(mod_reduce(*root * *root - a, pk) == 0);
            } else {
                CHECK(!root.has_value());
            }
        }
    }
}

TEST_CASE("rational_roots: pinned cases") {
    using V = std::vector<Rational>;
    // t^2 - 1
    CHECK(rational_roots(V{-1, 0, 1}) == V{-1, 1});

    // 4t^4 + 4t^3 + j for j = 5^3*19^3/2^3 has no rational root.
    Rational j(ipow(5, 3) * ipow(19, 3), 8);
    j.canonicalize();
    CHECK(rational_roots(V{j, 0, 0, 4, 4}).empty());

    // (t - 3/2)(t^2 + 1) = t^3 - 3/2 t^2 + t - 3/2
    V poly{Rational(-3, 2), 1, Rational(-3, 2), 1};
    auto roots = rational_roots(poly);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0] == Rational(3, 2));

    CHECK_THROWS_AS(rational_roots(V{}), domain_error);
    CHECK_THROWS_AS(rational_roots(V{0, 0}), domain_error);
}

TEST_CASE("rational_roots: random products of linear and irreducible quadratics") {
    std::mt19937_64 rng(42);
    for (int iter = 0; iter < 50; ++iter) {
        // Build (d1 x - n1)(d2 x - n2)(x^2 + c) with c > 0, collect expected roots.
        long n1 = static_cast<long>(rng() % 21) - 10;
        long d1 = static_cast<long>(rng() % 9) + 1;
        long n2 = static_cast<long>(rng() % 21) - 10;
        long d2 = static_cast<long>(rng() % 9) + 1;
        long c = static_cast<long>(rng() % 50) + 1;

        std::vector<Rational> f{Rational(-n1), Rational(d1)};
        std::vector<Rational> g{Rational(-n2), Rational(d2)};
        std::vector<Rational> h{Rational(c), 0, 1};
        auto mul = [](const std::vector<Rational>& a, const std::vector<Rational>& b) {
            std::vector<Rational> out(a.size() + b.size() - 1, Rational(0));
            for (size_t i = 0; i < a.size(); ++i)
                for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
            return out;
        };
        auto poly = mul(mul(f, g), h);

        std::set<Rational> expect;
        Rational r1(n1, d1), r2(n2, d2);
        r1.canonicalize();
        r2.canonicalize();
        expect.insert(r1);
        expect.insert(r2);

        auto got = rational_roots(poly);
        std::set<Rational> gotset(got.begin(), got.end());
        CHECK(gotset == expect);
    }
}

TEST_CASE("primality and divisor enumeration") {
    CHECK(is_prime(Integer(2)));
    CHECK(is_prime(Integer(313)));
    CHECK(is_prime(Integer("1000000000000000003")));
    CHECK(!is_prime(Integer(1)));
    CHECK(!is_prime(Integer("1000000000000000005")));

    auto ds = divisors(Integer(-12));
    CHECK(ds == std::vector<Integer>{1, 2, 3, 4, 6, 12});
}
