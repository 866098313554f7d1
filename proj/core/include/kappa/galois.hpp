// Copyright (c) 2026 The kappa authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include "kappa/curves.hpp"

#include <string>

namespace kappa {

// Galois group of the 2-division cubic 4x^3 + b2 x^2 + 2 b4 x + b6.
enum class Mod2GaloisType { S3, C3, C2, C1 };
std::string to_string(Mod2GaloisType t);

Mod2GaloisType mod2_division_galois(const WeierstrassModel& m);

// Rational solvability of 4t^3(t+1) + j = 0; a root obstructs full mod-2^n
// image (p = 2 criterion).
bool quartic_obstructed(const Rational& j);

// 1 for p > 3, 2 for p = 3, 3 for p = 2: full image at these levels implies
// full image at every level.
long default_n0(const Integer& p);

// |GL_2(Z/m)| by direct enumeration (m <= 32).
size_t gl2_order(long m);

struct TraceCoverage {
    Integer p;
    long n0 = 1;
    long budget = 0;       // primes ell <= budget are sampled
    size_t target = 0;     // # (trace, det) pairs realized by GL_2(Z/p^n0)
    size_t observed = 0;   // # pairs hit by Frobenius data
    long primes_used = 0;
    bool complete = false; // observed covers target
};

// Necessary-condition evidence: Frobenius (a_ell, ell) pairs mod p^n0 against
// the exhaustively enumerated (trace, det) set of GL_2(Z/p^n0). Never
// "obstructed" on its own; incomplete coverage is merely inconclusive.
TraceCoverage trace_coverage(const WeierstrassModel& minimal_model, const Integer& p, long n0,
                             long budget);

struct ImageDiagnostic {
    Mod2GaloisType mod2_type = Mod2GaloisType::S3; // p = 2 only
    bool quartic_obstruction = false;              // p = 2 only
    TraceCoverage coverage;
    std::string verdict; // consistent-with-surjective | obstructed | inconclusive
};

ImageDiagnostic galois_image_diagnostic(const WeierstrassModel& minimal_model, const Integer& p,
                                        long budget);

// ---- exhaustive finite-group verifications ----

struct SubmoduleLatticeReport {
    size_t nontrivial_proper_count = 0; // expected: 4
    bool found_v1 = false, found_v21 = false, found_v22 = false, found_v3 = false;
    bool inclusion_v1_in_v21 = false;
    bool inclusion_v22_in_v3 = false;
    bool direct_sum_v21_v22 = false; // V4 = V2(1) (+) V2(2)
    bool quotient_v4_v3_order2 = false;
    bool pass = false;
};

// Enumerates all 2^16 subsets of M_2(F_2) closed under addition and
// conjugation by the two generators of GL_2(F_2).
SubmoduleLatticeReport verify_submodule_lattice();

struct HStructureReport {
    size_t h_order = 0;        // |H / H_3|, expected 8
    size_t index_in_h1 = 0;    // expected 32
    size_t index_in_h2 = 0;    // expected 2
    bool equals_det_kernel = false; // <squares of H_1> = {g in H_2 : det = 1 mod 8}
    bool det_of_squares_ok = false; // det(h^2) = 1 mod 8 for all h in H_1
    bool h2_squares_trivial = false; // squares of H_2 die mod 8
    bool normal_in_h1 = false;
    bool pass = false;
};

// Works in H_1/H_3 = (1 + 2 M_2(Z/4Z)) mod 8, 256 classes.
HStructureReport verify_h_structure();

struct InertiaMatrixReport {
    size_t span_size = 0;              // additive span of the two matrices
    size_t intersection_v21_size = 0;  // with V2(1); expected 1 (= {0})
    size_t intersection_v22_size = 0;  // with V2(2); computed exhaustively
    bool pass = false;                 // span meets V2(1) trivially
};

InertiaMatrixReport verify_inertia_matrices();

} // namespace kappa
