// Copyright (c) 2026 The kappa authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include "kappa/curves.hpp"

#include <string>
#include <vector>

namespace kappa {

enum class ReductionClass { good, split_multiplicative, nonsplit_multiplicative, additive };

bool is_multiplicative(ReductionClass c);
std::string to_string(ReductionClass c);

struct KodairaSymbol {
    enum class Kind { I0, In, II, III, IV, I0star, Instar, IVstar, IIIstar, IIstar };
    Kind kind = Kind::I0;
    long n = 0; // index for In / In*

    // Number of irreducible components of the special fiber (with
    // multiplicity one each), as used in Ogg's formula.
    long components() const;
    std::string str() const;
    bool operator==(const KodairaSymbol&) const = default;
};

struct LocalReductionData {
    Integer prime;
    WeierstrassModel minimal_model; // integral and minimal at this prime
    long ord_delta = 0;             // ord_p of the minimal discriminant
    KodairaSymbol kodaira;
    long conductor_exponent = 0;
    ReductionClass cls = ReductionClass::good;
    bool potentially_good = false; // additive with integral j
    long rescalings = 0;           // how many u=p scalings minimality needed

    // Composite substitution carrying the input model onto minimal_model;
    // points move along via transformed(P, tr_u, tr_r, tr_s, tr_t).
    Rational tr_u{1}, tr_r{0}, tr_s{0}, tr_t{0};

    Point to_minimal(const Point& P) const { return transformed(P, tr_u, tr_r, tr_s, tr_t); }
};

// Full Tate algorithm at ell, wild primes included. Accepts any nonsingular
// model over Q; internally clears denominators and minimizes at ell.
LocalReductionData tate_algorithm(const WeierstrassModel& model, const Integer& ell);

enum class Splitness { split, nonsplit };

// Tangent-direction rationality at a multiplicative prime. For ell >= 5 this
// agrees with -c6 being a square mod ell; for ell in {2,3} the tangent-cone
// quadratic on the minimal model is factored directly.
// Throws contract_error if the reduction is not multiplicative.
Splitness split_or_nonsplit(const LocalReductionData& data);

struct GlobalReductionProfile {
    Integer conductor = 1;
    Integer minimal_discriminant = 0;
    WeierstrassModel global_minimal_model;
    std::vector<LocalReductionData> local; // bad primes, increasing

    const LocalReductionData* at(const Integer& prime) const;
};

// Runs tate_algorithm at every prime dividing the discriminant of an
// integral model and assembles N and Delta_min.
GlobalReductionProfile conductor(const WeierstrassModel& model);

struct HypothesisCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct HypothesisReport {
    bool pass = false;
    std::vector<HypothesisCheck> checks;
};

// Conditions required by the bound: multiplicative reduction at p,
// multiplicative or potentially good reduction elsewhere, and
// p not dividing ord_p(Delta_min). Diagnostics, not exceptions.
HypothesisReport hypothesis_check(const GlobalReductionProfile& profile, const Integer& p);

} // namespace kappa
