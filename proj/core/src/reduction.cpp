// Copyright (c) 2026 The kappa authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "kappa/reduction.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace kappa {

bool is_multiplicative(ReductionClass c) {
    return c == ReductionClass::split_multiplicative ||
           c == ReductionClass::nonsplit_multiplicative;
}

std::string to_string(ReductionClass c) {
    switch (c) {
        case ReductionClass::good: return "good";
        case ReductionClass::split_multiplicative: return "split-mult";
        case ReductionClass::nonsplit_multiplicative: return "nonsplit-mult";
        case ReductionClass::additive: return "additive";
    }
    return "?";
}

long KodairaSymbol::components() const {
    switch (kind) {
        case Kind::I0: return 1;
        case Kind::In: return n;
        case Kind::II: return 1;
        case Kind::III: return 2;
        case Kind::IV: return 3;
        case Kind::I0star: return 5;
        case Kind::Instar: return 5 + n;
        case Kind::IVstar: return 7;
        case Kind::IIIstar: return 8;
        case Kind::IIstar: return 9;
    }
    return 0;
}

std::string KodairaSymbol::str() const {
    switch (kind) {
        case Kind::I0: return "I0";
        case Kind::In: return "I" + std::to_string(n);
        case Kind::II: return "II";
        case Kind::III: return "III";
        case Kind::IV: return "IV";
        case Kind::I0star: return "I0*";
        case Kind::Instar: return "I" + std::to_string(n) + "*";
        case Kind::IVstar: return "IV*";
        case Kind::IIIstar: return "III*";
        case Kind::IIstar: return "II*";
    }
    return "?";
}

namespace {

// Integral Weierstrass model with the bookkeeping Tate's algorithm needs.
struct IModel {
    Integer a1, a2, a3, a4, a6;

    Integer b2() const { return a1 * a1 + 4 * a2; }
    Integer b4() const { return 2 * a4 + a1 * a3; }
    Integer b6() const { return a3 * a3 + 4 * a6; }
    Integer b8() const {
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    }
    Integer disc() const {
        Integer B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
    }
    Integer c4() const { return b2() * b2() - 24 * b4(); }
    Integer c6() const {
        Integer B2 = b2();
        return -B2 * B2 * B2 + 36 * B2 * b4() - 216 * b6();
    }

    // (r, s, t) translation with u = 1; stays integral.
    IModel rst(const Integer& r, const Integer& s, const Integer& t) const {
        IModel n;
        n.a1 = a1 + 2 * s;
        n.a2 = a2 - s * a1 + 3 * r - s * s;
        n.a3 = a3 + r * a1 + 2 * t;
        n.a4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
        n.a6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        return n;
    }

    // u = p scaling of a p^12-divisible discriminant model (exact divisions).
    IModel rescale(const Integer& p) const {
        IModel n;
        n.a1 = a1 / p;
        n.a2 = a2 / (p * p);
        n.a3 = a3 / (p * p * p);
        n.a4 = a4 / (p * p * p * p);
        n.a6 = a6 / (p * p * p * p * p * p);
        if (n.a1 * p != a1 || n.a2 * p * p != a2 || n.a3 * p * p * p != a3 ||
            n.a4 * ipow(p, 4) != a4 || n.a6 * ipow(p, 6) != a6)
            throw error("tate: inexact rescale (internal bug)");
        return n;
    }

    WeierstrassModel to_model() const {
        return WeierstrassModel{Rational(a1), Rational(a2), Rational(a3), Rational(a4),
                                Rational(a6)};
    }
};

long ival(const Integer& n, const Integer& p) {
    if (n == 0) return std::numeric_limits<long>::max();
    long v = 0;
    Integer m = n;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

bool pdiv(const Integer& n, const Integer& p, long k = 1) { return ival(n, p) >= k; }

// Root structure in F_p of the monic cubic T^3 + b T^2 + c T + d: 3 distinct
// roots, a double root, or a triple root, plus the repeated root itself.
struct CubicRoots {
    int distinct = 0; // 3, 2, or 1
    Integer repeated; // the multiple root when distinct < 3
};

CubicRoots analyse_cubic(const Integer& b, const Integer& c, const Integer& d, const Integer& p) {
    CubicRoots out;
    if (p < 100) {
        // Scan F_p; multiplicity from the derivative, with the one char-2
        // degeneracy (P'' = 0 identically) patched by comparing against
        // (T + x)^3 directly.
        Integer rep = -1;
        int maxmult = 0;
        for (Integer x = 0; x < p; ++x) {
            if (mod_reduce(((x + b) * x + c) * x + d, p) != 0) continue;
            Integer d1 = mod_reduce((3 * x + 2 * b) * x + c, p);
            int mult = 1;
            if (d1 == 0) {
                if (p == 2) {
                    bool triple = mod_reduce(b - x, 2) == 0 &&
                                  mod_reduce(c - x * x, 2) == 0 &&
                                  mod_reduce(d - x * x * x, 2) == 0;
                    mult = triple ? 3 : 2;
                } else {
                    mult = (mod_reduce(6 * x + 2 * b, p) == 0) ? 3 : 2;
                }
            }
            if (mult > maxmult) {
                maxmult = mult;
                rep = x;
            }
        }
        if (maxmult >= 2) {
            out.distinct = (maxmult == 3) ? 1 : 2;
            out.repeated = rep;
        } else {
            out.distinct = 3;
        }
        return out;
    }
    // p >= 5: discriminant test.
    Integer disc = 18 * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * c * c * c -
                   27 * d * d;
    Integer sep = b * b - 3 * c; // vanishes exactly for a triple root
    if (!pdiv(disc, p)) {
        out.distinct = 3;
        return out;
    }
    if (!pdiv(sep, p)) {
        out.distinct = 2;
        out.repeated = mod_reduce((9 * d - b * c) * inv_mod(2 * sep, p), p);
        return out;
    }
    out.distinct = 1;
    out.repeated = mod_reduce(-b * inv_mod(3, p), p); // triple root of the reduction
    return out;
}

// Separability of A y^2 + B y + C mod p, A a unit mod p.
bool quadratic_has_distinct_roots(const Integer& A, const Integer& B, const Integer& C,
                                  const Integer& p) {
    if (p == 2) return !pdiv(B, p); // separable iff B odd
    Integer disc = B * B - 4 * A * C;
    return !pdiv(disc, p);
}

// Double root of A y^2 + B y + C mod p (assumed inseparable, A a unit).
Integer quadratic_double_root(const Integer& A, const Integer& B, const Integer& C,
                              const Integer& p) {
    if (p == 2) {
        if (!pdiv(B, p)) throw error("tate: double root of a separable quadratic");
        // y^2 = -C/A and A is odd, so the root is C mod 2.
        return mod_reduce(C, 2);
    }
    return mod_reduce(-B * inv_mod(2 * A, p), p);
}

// Translation taking the singular point of the reduced curve to (0, 0),
// i.e. making p | a3, a4, a6.
IModel move_singular_point(const IModel& e, const Integer& p, Integer& r_out, Integer& t_out) {
    if (p <= 3) {
        for (Integer r = 0; r < p; ++r)
            for (Integer t = 0; t < p; ++t) {
                IModel n = e.rst(r, 0, t);
                if (pdiv(n.a3, p) && pdiv(n.a4, p) && pdiv(n.a6, p)) {
                    r_out = r;
                    t_out = t;
                    return n;
                }
            }
        throw error("tate: singular point not found (internal bug)");
    }
    Integer r, t;
    if (pdiv(e.c4(), p)) {
        r = mod_reduce(-e.b2() * inv_mod(12, p), p);
    } else {
        r = mod_reduce(-(e.c6() + e.b2() * e.c4()) * inv_mod(12 * e.c4(), p), p);
    }
    t = mod_reduce(-(e.a1 * r + e.a3) * inv_mod(2, p), p);
    IModel n = e.rst(r, 0, t);
    if (!(pdiv(n.a3, p) && pdiv(n.a4, p) && pdiv(n.a6, p)))
        throw error("tate: singular point translation failed (internal bug)");
    r_out = r;
    t_out = t;
    return n;
}

// Make p | a1, a2; p^2 | a3, a4; p^3 | a6 (possible once types In-IV are
// excluded).
IModel normalise_for_cubic(const IModel& e, const Integer& p, Integer& s_out, Integer& t_out) {
    if (p <= 3) {
        for (Integer s = 0; s < p; ++s)
            for (Integer t = 0; t < p * p; ++t) {
                IModel n = e.rst(0, s, t);
                if (pdiv(n.a1, p) && pdiv(n.a2, p) && pdiv(n.a3, p, 2) && pdiv(n.a4, p, 2) &&
                    pdiv(n.a6, p, 3)) {
                    s_out = s;
                    t_out = t;
                    return n;
                }
            }
        throw error("tate: cubic normalisation failed (internal bug)");
    }
    Integer s = mod_reduce(-e.a1 * inv_mod(2, p), p);
    IModel mid = e.rst(0, s, 0);
    Integer p2 = p * p;
    Integer t = mod_reduce(-mid.a3 * inv_mod(2, p2), p2);
    IModel n = mid.rst(0, 0, t);
    if (!(pdiv(n.a1, p) && pdiv(n.a2, p) && pdiv(n.a3, p, 2) && pdiv(n.a4, p, 2) &&
          pdiv(n.a6, p, 3)))
        throw error("tate: cubic normalisation failed (internal bug)");
    s_out = s;
    t_out = t;
    return n;
}

Splitness multiplicative_splitness(const IModel& translated, const Integer& p) {
    // Tangent cone at the node (0,0): y^2 + a1 xy - a2 x^2; slopes are the
    // roots of T^2 + a1 T - a2.
    if (p == 2) {
        // b2 odd means a1 odd; T^2 + T + a2 factors over F_2 iff a2 is even.
        return pdiv(translated.a2, p) ? Splitness::split : Splitness::nonsplit;
    }
    Integer disc = translated.b2(); // a1^2 + 4 a2
    return kronecker_symbol(disc, p) == 1 ? Splitness::split : Splitness::nonsplit;
}

} // namespace

LocalReductionData tate_algorithm(const WeierstrassModel& model, const Integer& ell) {
    if (!is_prime(ell)) throw domain_error("tate_algorithm: ell not prime");
    Integer scale;
    WeierstrassModel mi = integral_model(model, scale);
    invariants(mi); // nonsingularity check

    const Integer& p = ell;
    IModel e{mi.a1.get_num(), mi.a2.get_num(), mi.a3.get_num(), mi.a4.get_num(),
             mi.a6.get_num()};

    LocalReductionData out;
    out.prime = p;
    out.rescalings = 0;
    // Composite (u, r, s, t) from the input model to the working model.
    out.tr_u = Rational(1, scale);
    out.tr_r = 0;
    out.tr_s = 0;
    out.tr_t = 0;
    auto compose_rst = [&out](const Integer& r, const Integer& s, const Integer& t) {
        // (U,R,S,T) followed by (1, r, s, t).
        out.tr_r += out.tr_u * out.tr_u * Rational(r);
        out.tr_t += out.tr_u * out.tr_u * out.tr_u * Rational(t) +
                    out.tr_s * out.tr_u * out.tr_u * Rational(r);
        out.tr_s += out.tr_u * Rational(s);
    };

    while (true) {
        Integer delta = e.disc();
        long n = ival(delta, p);

        if (n == 0) {
            out.kodaira = {KodairaSymbol::Kind::I0, 0};
            out.conductor_exponent = 0;
            out.cls = ReductionClass::good;
            break;
        }

        Integer mv_r, mv_t;
        IModel e0 = move_singular_point(e, p, mv_r, mv_t);
        compose_rst(mv_r, 0, mv_t);

        if (!pdiv(e0.b2(), p)) {
            out.kodaira = {KodairaSymbol::Kind::In, n};
            out.conductor_exponent = 1;
            out.cls = multiplicative_splitness(e0, p) == Splitness::split
                          ? ReductionClass::split_multiplicative
                          : ReductionClass::nonsplit_multiplicative;
            e = e0;
            break;
        }

        out.cls = ReductionClass::additive;

        if (!pdiv(e0.a6, p, 2)) {
            out.kodaira = {KodairaSymbol::Kind::II, 0};
            out.conductor_exponent = n;
            e = e0;
            break;
        }
        if (!pdiv(e0.b8(), p, 3)) {
            out.kodaira = {KodairaSymbol::Kind::III, 0};
            out.conductor_exponent = n - 1;
            e = e0;
            break;
        }
        if (!pdiv(e0.b6(), p, 3)) {
            out.kodaira = {KodairaSymbol::Kind::IV, 0};
            out.conductor_exponent = n - 2;
            e = e0;
            break;
        }

        Integer no_s, no_t;
        IModel e1 = normalise_for_cubic(e0, p, no_s, no_t);
        compose_rst(0, no_s, no_t);

        // P(T) = T^3 + (a2/p) T^2 + (a4/p^2) T + (a6/p^3) mod p.
        Integer b = e1.a2 / p, c = e1.a4 / (p * p), d = e1.a6 / (p * p * p);
        CubicRoots roots = analyse_cubic(b, c, d, p);

        if (roots.distinct == 3) {
            out.kodaira = {KodairaSymbol::Kind::I0star, 0};
            out.conductor_exponent = n - 4;
            e = e1;
            break;
        }

        if (roots.distinct == 2) {
            // I_m*: walk the chain of quadratics after centering the double root.
            IModel f = e1.rst(p * roots.repeated, 0, 0);
            compose_rst(p * roots.repeated, 0, 0);
            if (!(ival(f.a2, p) == 1 && pdiv(f.a3, p, 2) && pdiv(f.a4, p, 3) &&
                  pdiv(f.a6, p, 4)))
                throw error("tate: Im* entry state invalid (internal bug)");
            Integer mx = p * p, my = p * p;
            long ix = 3, iy = 3;
            bool done = false;
            while (!done) {
                Integer a2t = f.a2 / p;
                Integer a3t = f.a3 / my;
                Integer a6t = f.a6 / (mx * my);
                if (quadratic_has_distinct_roots(1, a3t, -a6t, p)) {
                    done = true;
                    break;
                }
                Integer y0 = quadratic_double_root(1, a3t, -a6t, p);
                f = f.rst(0, 0, my * y0);
                compose_rst(0, 0, my * y0);
                my *= p;
                ++iy;

                Integer a4t = f.a4 / (p * mx);
                a6t = f.a6 / (mx * my);
                if (quadratic_has_distinct_roots(a2t, a4t, a6t, p)) {
                    done = true;
                    break;
                }
                Integer x0 = quadratic_double_root(a2t, a4t, a6t, p);
                f = f.rst(mx * x0, 0, 0);
                compose_rst(mx * x0, 0, 0);
                mx *= p;
                ++ix;
            }
            long m = ix + iy - 5;
            out.kodaira = {KodairaSymbol::Kind::Instar, m};
            out.conductor_exponent = n - 4 - m;
            e = f;
            break;
        }

        // Triple root: center it.
        IModel f = e1.rst(p * roots.repeated, 0, 0);
        compose_rst(p * roots.repeated, 0, 0);
        if (!(pdiv(f.a2, p, 2) && pdiv(f.a4, p, 3) && pdiv(f.a6, p, 4)))
            throw error("tate: triple-root state invalid (internal bug)");

        Integer a3t = f.a3 / (p * p), a6t = f.a6 / ipow(p, 4);
        if (quadratic_has_distinct_roots(1, a3t, -a6t, p)) {
            out.kodaira = {KodairaSymbol::Kind::IVstar, 0};
            out.conductor_exponent = n - 6;
            e = f;
            break;
        }
        Integer y0 = quadratic_double_root(1, a3t, -a6t, p);
        f = f.rst(0, 0, p * p * y0);
        compose_rst(0, 0, p * p * y0);
        if (!(pdiv(f.a3, p, 3) && pdiv(f.a6, p, 5)))
            throw error("tate: IV*-III* state invalid (internal bug)");

        if (!pdiv(f.a4, p, 4)) {
            out.kodaira = {KodairaSymbol::Kind::IIIstar, 0};
            out.conductor_exponent = n - 7;
            e = f;
            break;
        }
        if (!pdiv(f.a6, p, 6)) {
            out.kodaira = {KodairaSymbol::Kind::IIstar, 0};
            out.conductor_exponent = n - 8;
            e = f;
            break;
        }

        // Non-minimal model; scale down and restart.
        e = f.rescale(p);
        out.tr_u *= Rational(p);
        ++out.rescalings;
    }

    out.minimal_model = e.to_model();
    if (transformed(model, out.tr_u, out.tr_r, out.tr_s, out.tr_t) != out.minimal_model)
        throw error("tate: transform bookkeeping broken (internal bug)");
    out.ord_delta = (out.cls == ReductionClass::good) ? 0 : ival(e.disc(), p);
    out.potentially_good = false;
    if (out.cls == ReductionClass::additive) {
        CurveInvariants inv = invariants(out.minimal_model);
        Valuation vj = valuation(inv.j, p);
        out.potentially_good = !(vj < Valuation(0));
    }

    // Structural sanity: the invariants promised to every consumer.
    if ((out.conductor_exponent == 0) != (out.cls == ReductionClass::good))
        throw error("tate: f/class mismatch (internal bug)");
    if (is_multiplicative(out.cls) &&
        !(out.conductor_exponent == 1 && out.kodaira.kind == KodairaSymbol::Kind::In &&
          out.kodaira.n == out.ord_delta && out.ord_delta >= 1))
        throw error("tate: multiplicative invariants violated (internal bug)");
    if (out.cls == ReductionClass::additive && out.conductor_exponent < 2)
        throw error("tate: additive with f < 2 (internal bug)");
    return out;
}

Splitness split_or_nonsplit(const LocalReductionData& data) {
    if (!is_multiplicative(data.cls))
        throw contract_error("split_or_nonsplit: reduction not multiplicative");
    return data.cls == ReductionClass::split_multiplicative ? Splitness::split
                                                            : Splitness::nonsplit;
}

const LocalReductionData* GlobalReductionProfile::at(const Integer& prime) const {
    for (const auto& d : local)
        if (d.prime == prime) return &d;
    return nullptr;
}

GlobalReductionProfile conductor(const WeierstrassModel& model) {
    Integer scale;
    WeierstrassModel mi = integral_model(model, scale);
    CurveInvariants inv = invariants(mi);

    GlobalReductionProfile profile;
    Factorization df = factor(inv.disc.get_num());

    Integer u = 1; // global scaling e -> minimal model
    Integer delta_min = inv.disc.get_num();
    for (const auto& [p, e] : df.primes) {
        LocalReductionData data = tate_algorithm(mi, p);
        u *= ipow(p, data.rescalings);
        delta_min /= ipow(p, 12 * static_cast<unsigned long>(data.rescalings));
        profile.conductor *= ipow(p, data.conductor_exponent);
        if (data.cls != ReductionClass::good) profile.local.push_back(data);
    }
    profile.minimal_discriminant = delta_min;

    // Reconstruct a global minimal model from (c4, c6) of the minimal class
    // (Kraus-Connell).
    Integer c4 = inv.c4.get_num() / ipow(u, 4);
    Integer c6 = inv.c6.get_num() / ipow(u, 6);
    Integer b2 = mod_reduce(-c6, 12);
    if (b2 > 6) b2 -= 12;
    Integer b4 = (b2 * b2 - c4) / 24;
    Integer b6 = (-b2 * b2 * b2 + 36 * b2 * b4 - c6) / 216;
    Integer a1 = mod_reduce(b2, 2);
    Integer a2 = (b2 - a1) / 4;
    Integer a3 = mod_reduce(b6, 2);
    Integer a6 = (b6 - a3) / 4;
    Integer a4 = (b4 - a1 * a3) / 2;
    profile.global_minimal_model = WeierstrassModel{Rational(a1), Rational(a2), Rational(a3),
                                                    Rational(a4), Rational(a6)};
    CurveInvariants minv = invariants(profile.global_minimal_model);
    if (minv.c4.get_num() != c4 || minv.c6.get_num() != c6 ||
        minv.disc.get_num() != delta_min)
        throw error("conductor: minimal model reconstruction failed (internal bug)");
    return profile;
}

HypothesisReport hypothesis_check(const GlobalReductionProfile& profile, const Integer& p) {
    HypothesisReport report;
    report.pass = true;
    auto push = [&](std::string name, bool pass, std::string detail) {
        report.checks.push_back({std::move(name), pass, std::move(detail)});
        report.pass = report.pass && pass;
    };

    const LocalReductionData* dp = profile.at(p);
    if (dp == nullptr) {
        push("multiplicative-at-p", false, "E has good reduction at " + p.get_str());
    } else {
        push("multiplicative-at-p", is_multiplicative(dp->cls),
             "reduction at " + p.get_str() + " is " + to_string(dp->cls));
    }

    bool others_ok = true;
    std::string bad;
    for (const auto& d : profile.local) {
        if (d.prime == p) continue;
        if (!is_multiplicative(d.cls) && !d.potentially_good) {
            others_ok = false;
            bad = d.prime.get_str();
            break;
        }
    }
    push("mult-or-potentially-good-away-from-p", others_ok,
         others_ok ? "every bad prime != p is multiplicative or potentially good"
                   : "additive, not potentially good at " + bad);

    if (dp != nullptr && is_multiplicative(dp->cls)) {
        bool ok = dp->ord_delta % p != 0;
        push("p-does-not-divide-ord-p-of-delta", ok,
             "ord_" + p.get_str() + "(Delta_min) = " + std::to_string(dp->ord_delta));
    } else {
        push("p-does-not-divide-ord-p-of-delta", false, "not multiplicative at p");
    }
    return report;
}

} // namespace kappa
