// Copyright (c) 2026 The kappa authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kappa/galois.hpp"
#include "kappa/reduction.hpp"

#include <numeric>
#include <set>

using namespace kappa;

TEST_CASE("mod-2 division field Galois types") {
    CHECK(mod2_division_galois(WeierstrassModel{1, 0, 1, -141, 624}) == Mod2GaloisType::S3);
    CHECK(mod2_division_galois(WeierstrassModel{1, 1, 1, -55238, 4974531}) == Mod2GaloisType::S3);
    // Full rational 2-torsion.
    CHECK(mod2_division_galois(WeierstrassModel{0, 0, 0, -1, 0}) == Mod2GaloisType::C1);
    // Exactly one rational 2-torsion point.
    CHECK(mod2_division_galois(WeierstrassModel{0, 0, 0, -2, 0}) == Mod2GaloisType::C2);
    // Irreducible with square discriminant: x^3 - 3x - 1.
    CHECK(mod2_division_galois(WeierstrassModel{0, 0, 0, -3, -1}) == Mod2GaloisType::C3);
    // Irreducible, nonsquare discriminant.
    CHECK(mod2_division_galois(WeierstrassModel{0, 0, 0, 0, -2}) == Mod2GaloisType::S3);
}

TEST_CASE("quartic criterion for the mod-2^n tower") {
    Rational j71(ipow(5, 3) * ipow(19, 3), ipow(2, 3));
    j71.canonicalize();
    CHECK(!quartic_obstructed(j71));

    Rational j313(ipow(7, 3) * ipow(103, 3) * ipow(139, 3), ipow(2, 19) * 313);
    j313.canonicalize();
    CHECK(!quartic_obstructed(-j313));

    // j = -4 t0^3 (t0 + 1) for t0 = 1: the quartic gains the root t = 1.
    CHECK(quartic_obstructed(Rational(-8)));
}

TEST_CASE("GL_2 orders by enumeration") {
    CHECK(gl2_order(2) == 6);
    CHECK(gl2_order(4) == 96);
    CHECK(gl2_order(8) == 1536);
    CHECK(gl2_order(9) == 3888);
    CHECK_THROWS_AS(gl2_order(64), capability_error);
}

TEST_CASE("trace coverage: full-image curve completes, CM curve stalls") {
    // Conductor-13467 curve at p = 3, level 9.
    WeierstrassModel m67{1, 0, 0, 543, 10026};
    TraceCoverage cov = trace_coverage(m67, 3, 2, 10000);
    CHECK(cov.complete);
    CHECK(cov.observed == cov.target);

    // Every unit determinant occurs with every trace mod 9 (companion matrices).
    CHECK(cov.target == 9 * 6);

    // CM curve y^2 = x^3 - x: a_ell = 0 at the inert primes; coverage cannot
    // complete mod 9.
    WeierstrassModel cm{0, 0, 0, -1, 0};
    TraceCoverage stuck = trace_coverage(cm, 3, 2, 3000);
    CHECK(!stuck.complete);
    CHECK(stuck.observed < stuck.target);

    TraceCoverage none = trace_coverage(m67, 3, 2, 0);
    CHECK(!none.complete);
    CHECK(none.observed == 0);
    CHECK(none.primes_used == 0);
}

TEST_CASE("image diagnostics aggregate the evidence") {
    WeierstrassModel m71{1, 0, 1, -141, 624};
    ImageDiagnostic d71 = galois_image_diagnostic(m71, 2, 10000);
    CHECK(d71.mod2_type == Mod2GaloisType::S3);
    CHECK(!d71.quartic_obstruction);
    CHECK(d71.verdict == "consistent-with-surjective");

    // Rational 2-torsion is an obstruction witness at p = 2.
    ImageDiagnostic bad = galois_image_diagnostic(WeierstrassModel{0, 0, 0, -2, 0}, 2, 500);
    CHECK(bad.verdict == "obstructed");

    // Tiny budget: inconclusive, never obstructed without a witness.
    WeierstrassModel m67{1, 0, 0, 543, 10026};
    ImageDiagnostic thin = galois_image_diagnostic(m67, 3, 20);
    CHECK(thin.verdict == "inconclusive");
}

TEST_CASE("(trace, det) target set is closed under trace negation") {
    // Conjugation by -I fixes det and negates nothing, but -M realizes
    // (-t, d); the realized set must be symmetric.
    const long m = 9;
    std::set<std::pair<long, long>> target;
    for (long a = 0; a < m; ++a)
        for (long b = 0; b < m; ++b)
            for (long c = 0; c < m; ++c)
                for (long d = 0; d < m; ++d) {
                    long det = ((a * d - b * c) % m + m) % m;
                    if (std::gcd(det, m) != 1) continue;
                    target.insert({(a + d) % m, det});
                }
    for (const auto& [t, d] : target) CHECK(target.count({(m - t) % m, d}) == 1);
}

TEST_CASE("submodule lattice of M_2(F_2) is the published one") {
    SubmoduleLatticeReport r = verify_submodule_lattice();
    CHECK(r.nontrivial_proper_count == 4);
    CHECK(r.found_v1);
    CHECK(r.found_v21);
    CHECK(r.found_v22);
    CHECK(r.found_v3);
    CHECK(r.inclusion_v1_in_v21);
    CHECK(r.inclusion_v22_in_v3);
    CHECK(r.direct_sum_v21_v22);
    CHECK(r.quotient_v4_v3_order2);
    CHECK(r.pass);
}

TEST_CASE("the square-generated subgroup of 1+2M_2(Z_2) mod 8") {
    HStructureReport r = verify_h_structure();
    CHECK(r.h_order == 8);
    CHECK(r.index_in_h1 == 32); // 2^5
    CHECK(r.index_in_h2 == 2);
    CHECK(r.equals_det_kernel);
    CHECK(r.det_of_squares_ok);
    CHECK(r.h2_squares_trivial);
    CHECK(r.normal_in_h1);
    CHECK(r.pass);
}

TEST_CASE("inertia matrix span meets V2(1) trivially") {
    InertiaMatrixReport r = verify_inertia_matrices();
    CHECK(r.span_size == 4);
    CHECK(r.intersection_v21_size == 1); // just the zero matrix
    // Exhaustively computed: the span also meets V2(2) only in 0.
    CHECK(r.intersection_v22_size == 1);
    CHECK(r.pass);
}

TEST_CASE("verifications are deterministic") {
    SubmoduleLatticeReport a = verify_submodule_lattice();
    SubmoduleLatticeReport b = verify_submodule_lattice();
    CHECK(a.nontrivial_proper_count == b.nontrivial_proper_count);
    HStructureReport h1 = verify_h_structure();
    HStructureReport h2 = verify_h_structure();
    CHECK(h1.h_order == h2.h_order);
}
