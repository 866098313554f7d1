// Copyright (c) 2026 The kappa authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include "kappa/reduction.hpp"
#include "kappa/tate.hpp"

#include <string>
#include <vector>

namespace kappa {

// Per-prime ramification deduction nu_ell at level n. ell != p required.
// Odd p: min{ord_p(ord_ell(Delta)), n} at split multiplicative ell, else 0.
// p = 2: additionally 1 at potentially good ell when n = 1 and 1 at
// nonsplit multiplicative ell with even ord_ell(Delta).
long nu_ell(const LocalReductionData& data, const Integer& p, long n);

struct NuEntry {
    Integer ell;
    long nu = 0;
    ReductionClass cls = ReductionClass::good;
    long ord_delta = 0;
};

struct NuTable {
    long n = 1;
    std::vector<NuEntry> entries; // bad primes != p, increasing
    long s() const;               // sum of the nu_ell
};

NuTable nu_table(const GlobalReductionProfile& profile, const Integer& p, long n);

// |I_p| <= p^(this); exact for odd p.
long inertia_bound_p_exponent(const Integer& p, long n, long nu, int r2n, int delta2);

// |I_ell| <= p^(2 nu_ell).
long inertia_bound_ell_exponent(long nu_ell_value);

struct BoundReport {
    Integer p;
    long n = 1;
    unsigned rank = 0;
    NuTable nus;
    int r2n = 1;
    int delta2 = 0;
    long nu = 0;            // co-depth of the distinguished generator image
    long headline = 0;      // main inequality, before clamping
    long refined = 0;       // odd p improvement via nu; = headline for p = 2
    long kappa_lower_bound = 0;
    long claim_exponent = 0; // max(kappa_lower_bound, 0)
    bool clamped = false;
    long inertia_p_exponent = 0;
    bool exact = false;     // prime conductor: the bound is an equality
    long exact_kappa = 0;

    // Alternative reading that keeps the potentially-good deduction at every
    // level (see the worked p=2, N=10082 example); reported side by side and
    // never silently merged.
    bool prose_variant_differs = false;
    long prose_variant_bound = 0;
};

BoundReport assemble_bound(const GlobalReductionProfile& profile, const Integer& p, long n,
                           unsigned rank, const LocalImageData& image);

// kappa_n = 2n(r-1) + 2 nu for n > nu, 2nr otherwise. Contract: conductor = p.
long corollary_exact_kappa(long n, unsigned rank, long nu);
long corollary_exact_kappa(const GlobalReductionProfile& profile, const Integer& p, long n,
                           unsigned rank, long nu);

struct DivisibilityClaim {
    Integer p;
    long n = 1;
    long exponent = 0;
    bool vacuous = false; // exponent clamped to 0
    std::string text;     // "p^k | h_{K_n}"
};

DivisibilityClaim divisibility_claim(const BoundReport& report);

} // namespace kappa
