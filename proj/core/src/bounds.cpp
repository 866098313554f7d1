// Copyright (c) 2026 The kappa authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "kappa/bounds.hpp"

#include <algorithm>
#include <sstream>

namespace kappa {

namespace {

long vp_of(long x, const Integer& p) {
    long v = 0;
    long pl = static_cast<long>(p.get_si());
    while (x != 0 && x % pl == 0) {
        x /= pl;
        ++v;
    }
    return v;
}

} // namespace

long nu_ell(const LocalReductionData& data, const Integer& p, long n) {
    if (data.prime == p) throw contract_error("nu_ell: ell = p");
    if (n < 1) throw contract_error("nu_ell: n < 1");
    switch (data.cls) {
        case ReductionClass::good:
            return 0;
        case ReductionClass::split_multiplicative:
            return std::min<long>(vp_of(data.ord_delta, p), n);
        case ReductionClass::nonsplit_multiplicative:
            if (p == 2 && data.ord_delta % 2 == 0) return 1;
            return 0;
        case ReductionClass::additive:
            if (!data.potentially_good)
                throw hypothesis_error("nu_ell: additive prime that is not potentially good");
            if (p == 2 && n == 1) return 1;
            return 0;
    }
    return 0;
}

long NuTable::s() const {
    long sum = 0;
    for (const auto& e : entries) sum += e.nu;
    return sum;
}

NuTable nu_table(const GlobalReductionProfile& profile, const Integer& p, long n) {
    NuTable t;
    t.n = n;
    for (const auto& d : profile.local) {
        if (d.prime == p) continue;
        t.entries.push_back({d.prime, nu_ell(d, p, n), d.cls, d.ord_delta});
    }
    return t;
}

long inertia_bound_p_exponent(const Integer& p, long n, long nu, int r2n, int delta2) {
    if (p == 2) return 2 * (n + r2n - 2) + delta2;
    return n > nu ? 2 * (n - nu) : 0;
}

long inertia_bound_ell_exponent(long nu_ell_value) { return 2 * nu_ell_value; }

BoundReport assemble_bound(const GlobalReductionProfile& profile, const Integer& p, long n,
                           unsigned rank, const LocalImageData& image) {
    BoundReport rep;
    rep.p = p;
    rep.n = n;
    rep.rank = rank;
    rep.nus = nu_table(profile, p, n);
    rep.r2n = image.r2n;
    rep.delta2 = image.delta2;
    rep.nu = image.nu;

    long r = static_cast<long>(rank);
    long s = rep.nus.s();
    if (p == 2) {
        rep.headline = 2 * n * (r - 1) - 2 * (rep.r2n - 2) - rep.delta2 - 2 * s;
        rep.refined = rep.headline; // the nu improvement is an odd-p statement
    } else {
        rep.headline = 2 * n * (r - 1) - 2 * s;
        rep.refined = (n > rep.nu) ? 2 * n * (r - 1) + 2 * rep.nu - 2 * s : 2 * n * r - 2 * s;
    }
    rep.kappa_lower_bound = std::max(rep.headline, rep.refined);
    rep.claim_exponent = std::max<long>(rep.kappa_lower_bound, 0);
    rep.clamped = rep.kappa_lower_bound < 0;
    rep.inertia_p_exponent = inertia_bound_p_exponent(p, n, rep.nu, rep.r2n, rep.delta2);

    rep.exact = (profile.conductor == p);
    if (rep.exact) rep.exact_kappa = corollary_exact_kappa(n, rank, rep.nu);

    // Variant that keeps the level-1 potentially-good deduction at every n
    // (p = 2 only); differs exactly when such a prime exists and n >= 2.
    if (p == 2) {
        long s_prose = 0;
        for (const auto& e : rep.nus.entries) {
            long v = e.nu;
            if (e.cls == ReductionClass::additive) v = 1;
            s_prose += v;
        }
        rep.prose_variant_bound = 2 * n * (r - 1) - 2 * (rep.r2n - 2) - rep.delta2 - 2 * s_prose;
        rep.prose_variant_differs = (s_prose != s);
    } else {
        rep.prose_variant_bound = rep.headline;
        rep.prose_variant_differs = false;
    }
    return rep;
}

long corollary_exact_kappa(long n, unsigned rank, long nu) {
    long r = static_cast<long>(rank);
    return n > nu ? 2 * n * (r - 1) + 2 * nu : 2 * n * r;
}

long corollary_exact_kappa(const GlobalReductionProfile& profile, const Integer& p, long n,
                           unsigned rank, long nu) {
    if (profile.conductor != p)
        throw contract_error("corollary_exact_kappa: conductor is not the single prime p");
    return corollary_exact_kappa(n, rank, nu);
}

DivisibilityClaim divisibility_claim(const BoundReport& report) {
    DivisibilityClaim c;
    c.p = report.p;
    c.n = report.n;
    c.exponent = report.claim_exponent;
    c.vacuous = report.clamped;
    std::ostringstream os;
    os << report.p.get_str() << "^" << c.exponent << " | h_{K_" << report.n << "}";
    c.text = os.str();
    return c;
}

} // namespace kappa
