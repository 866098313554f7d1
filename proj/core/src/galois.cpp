// Copyright (c) 2026 The kappa authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "kappa/galois.hpp"

#include <array>
#include <numeric>
#include <set>

namespace kappa {

std::string to_string(Mod2GaloisType t) {
    switch (t) {
        case Mod2GaloisType::S3: return "S3";
        case Mod2GaloisType::C3: return "C3";
        case Mod2GaloisType::C2: return "C2";
        case Mod2GaloisType::C1: return "C1";
    }
    return "?";
}

Mod2GaloisType mod2_division_galois(const WeierstrassModel& m) {
    CurveInvariants inv = invariants(m);
    // 4x^3 + b2 x^2 + 2 b4 x + b6
    std::vector<Rational> cubic{inv.b6, 2 * inv.b4, inv.b2, 4};
    size_t roots = rational_roots(cubic).size();
    if (roots >= 3) return Mod2GaloisType::C1;
    if (roots == 1) return Mod2GaloisType::C2;
    // Irreducible: cyclic iff the discriminant is a rational square.
    Rational a = 4, b = inv.b2, c = 2 * inv.b4, d = inv.b6;
    Rational disc = 18 * a * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * a * c * c * c -
                    27 * a * a * d * d;
    Integer nd = disc.get_num() * disc.get_den();
    bool square = nd >= 0 && mpz_perfect_square_p(nd.get_mpz_t());
    return square ? Mod2GaloisType::C3 : Mod2GaloisType::S3;
}

bool quartic_obstructed(const Rational& j) {
    std::vector<Rational> quartic{j, 0, 0, 4, 4}; // 4t^4 + 4t^3 + j
    return !rational_roots(quartic).empty();
}

long default_n0(const Integer& p) {
    if (p == 2) return 3;
    if (p == 3) return 2;
    return 1;
}

size_t gl2_order(long m) {
    if (m < 2 || m > 32) throw capability_error("gl2_order: enumeration bound is 32");
    size_t count = 0;
    for (long a = 0; a < m; ++a)
        for (long b = 0; b < m; ++b)
            for (long c = 0; c < m; ++c)
                for (long d = 0; d < m; ++d) {
                    long det = ((a * d - b * c) % m + m) % m;
                    if (std::gcd(det, m) == 1) ++count;
                }
    return count;
}

TraceCoverage trace_coverage(const WeierstrassModel& minimal_model, const Integer& p, long n0,
                             long budget) {
    TraceCoverage out;
    out.p = p;
    out.n0 = n0;
    out.budget = budget;

    Integer modi = ipow(p, static_cast<unsigned long>(n0));
    if (modi > 32) throw capability_error("trace_coverage: p^n0 beyond enumeration bound");
    long m = modi.get_si();

    std::set<std::pair<long, long>> target;
    for (long a = 0; a < m; ++a)
        for (long b = 0; b < m; ++b)
            for (long c = 0; c < m; ++c)
                for (long d = 0; d < m; ++d) {
                    long det = ((a * d - b * c) % m + m) % m;
                    if (std::gcd(det, m) != 1) continue;
                    target.insert({(a + d) % m, det});
                }
    out.target = target.size();

    CurveInvariants inv = invariants(minimal_model);
    std::set<std::pair<long, long>> observed;
    for (Integer ell = 3; ell <= budget; mpz_nextprime(ell.get_mpz_t(), ell.get_mpz_t())) {
        if (inv.disc.get_num() % ell == 0 || ell == p) continue;
        long a = trace_of_frobenius(minimal_model, ell);
        long t = ((a % m) + m) % m;
        long d = mod_reduce(ell, m).get_si();
        observed.insert({t, d});
        ++out.primes_used;
        if (observed.size() == target.size()) break;
    }
    out.observed = observed.size();
    out.complete = observed == target;
    return out;
}

ImageDiagnostic galois_image_diagnostic(const WeierstrassModel& minimal_model, const Integer& p,
                                        long budget) {
    ImageDiagnostic out;
    CurveInvariants inv = invariants(minimal_model);
    bool witness = false;
    if (p == 2) {
        out.mod2_type = mod2_division_galois(minimal_model);
        out.quartic_obstruction = quartic_obstructed(inv.j);
        witness = out.quartic_obstruction || out.mod2_type != Mod2GaloisType::S3;
    }
    out.coverage = trace_coverage(minimal_model, p, default_n0(p), budget);
    if (witness)
        out.verdict = "obstructed";
    else if (out.coverage.complete)
        out.verdict = "consistent-with-surjective";
    else
        out.verdict = "inconclusive";
    return out;
}

// ---- finite group checks over F_2 and Z/4 ----

namespace {

// A matrix in M_2(F_2) as a 4-bit code a | b<<1 | c<<2 | d<<3.
int f2_mul(int x, int y) {
    int xa = x & 1, xb = (x >> 1) & 1, xc = (x >> 2) & 1, xd = (x >> 3) & 1;
    int ya = y & 1, yb = (y >> 1) & 1, yc = (y >> 2) & 1, yd = (y >> 3) & 1;
    int a = (xa & ya) ^ (xb & yc);
    int b = (xa & yb) ^ (xb & yd);
    int c = (xc & ya) ^ (xd & yc);
    int d = (xc & yb) ^ (xd & yd);
    return a | (b << 1) | (c << 2) | (d << 3);
}

constexpr int enc(int a, int b, int c, int d) { return a | (b << 1) | (c << 2) | (d << 3); }

constexpr int kG1 = enc(0, 1, 1, 0);    // (0 1; 1 0), its own inverse
constexpr int kG2 = enc(0, 1, 1, 1);    // (0 1; 1 1)
constexpr int kG2inv = enc(1, 1, 1, 0); // (1 1; 1 0)

int conj(int g, int a, int ginv) { return f2_mul(f2_mul(g, a), ginv); }

bool is_submodule(unsigned mask) {
    if (!(mask & 1)) return false; // must contain the zero matrix
    for (int i = 0; i < 16; ++i) {
        if (!(mask & (1u << i))) continue;
        for (int j = 0; j < 16; ++j) {
            if (!(mask & (1u << j))) continue;
            if (!(mask & (1u << (i ^ j)))) return false; // addition is xor
        }
        if (!(mask & (1u << conj(kG1, i, kG1)))) return false;
        if (!(mask & (1u << conj(kG2, i, kG2inv)))) return false;
    }
    return true;
}

unsigned span_mask(std::initializer_list<int> gens) {
    unsigned mask = 1; // zero matrix
    bool grew = true;
    while (grew) {
        grew = false;
        for (int i = 0; i < 16; ++i) {
            if (!(mask & (1u << i))) continue;
            for (int g : gens) {
                int s = i ^ g;
                if (!(mask & (1u << s))) {
                    mask |= 1u << s;
                    grew = true;
                }
            }
        }
    }
    return mask;
}

} // namespace

SubmoduleLatticeReport verify_submodule_lattice() {
    SubmoduleLatticeReport out;

    const unsigned v1 = span_mask({enc(1, 0, 0, 1)});
    const unsigned v21 = span_mask({enc(0, 1, 1, 1), enc(1, 1, 1, 0)});
    const unsigned v22 = span_mask({enc(1, 1, 0, 1), enc(1, 0, 1, 1)});
    unsigned v3 = 0;
    for (int i = 0; i < 16; ++i) {
        int a = i & 1, d = (i >> 3) & 1;
        if (((a + d) & 1) == 0) v3 |= 1u << i;
    }
    const unsigned v4 = 0xffff;

    std::set<unsigned> found;
    for (unsigned mask = 1; mask <= 0xffff; ++mask) {
        if (!is_submodule(mask)) continue;
        if (mask == 1 || mask == v4) continue;
        found.insert(mask);
    }
    out.nontrivial_proper_count = found.size();
    out.found_v1 = found.count(v1) > 0;
    out.found_v21 = found.count(v21) > 0;
    out.found_v22 = found.count(v22) > 0;
    out.found_v3 = found.count(v3) > 0;
    out.inclusion_v1_in_v21 = (v1 & v21) == v1;
    out.inclusion_v22_in_v3 = (v22 & v3) == v22;
    out.direct_sum_v21_v22 =
        ((v21 & v22) == 1u) &&
        (span_mask({enc(0, 1, 1, 1), enc(1, 1, 1, 0), enc(1, 1, 0, 1), enc(1, 0, 1, 1)}) == v4);
    out.quotient_v4_v3_order2 = (__builtin_popcount(v3) == 8); // index 2 in 16
    out.pass = out.nontrivial_proper_count == 4 && out.found_v1 && out.found_v21 &&
               out.found_v22 && out.found_v3 && out.inclusion_v1_in_v21 &&
               out.inclusion_v22_in_v3 && out.direct_sum_v21_v22 && out.quotient_v4_v3_order2;
    return out;
}

namespace {

// H_1/H_3 realized as 1 + 2M mod 8 with M in M_2(Z/4): index = base-4 digits.
struct M4 {
    std::array<long, 4> e; // a, b, c, d mod 4

    static M4 from_index(int idx) {
        return M4{{idx & 3, (idx >> 2) & 3, (idx >> 4) & 3, (idx >> 6) & 3}};
    }
    int index() const { return static_cast<int>(e[0] | (e[1] << 2) | (e[2] << 4) | (e[3] << 6)); }
};

long red4(long x) { return ((x % 4) + 4) % 4; }

// (1+2M)(1+2M') = 1 + 2(M + M' + 2MM') mod 8.
M4 h_mul(const M4& x, const M4& y) {
    long a = x.e[0] + y.e[0] + 2 * (x.e[0] * y.e[0] + x.e[1] * y.e[2]);
    long b = x.e[1] + y.e[1] + 2 * (x.e[0] * y.e[1] + x.e[1] * y.e[3]);
    long c = x.e[2] + y.e[2] + 2 * (x.e[2] * y.e[0] + x.e[3] * y.e[2]);
    long d = x.e[3] + y.e[3] + 2 * (x.e[2] * y.e[1] + x.e[3] * y.e[3]);
    return M4{{red4(a), red4(b), red4(c), red4(d)}};
}

// (1+2M)^-1 = 1 + 2(-M + 2M^2) mod 8.
M4 h_inv(const M4& x) {
    long a = -x.e[0] + 2 * (x.e[0] * x.e[0] + x.e[1] * x.e[2]);
    long b = -x.e[1] + 2 * (x.e[0] * x.e[1] + x.e[1] * x.e[3]);
    long c = -x.e[2] + 2 * (x.e[2] * x.e[0] + x.e[3] * x.e[2]);
    long d = -x.e[3] + 2 * (x.e[2] * x.e[1] + x.e[3] * x.e[3]);
    return M4{{red4(a), red4(b), red4(c), red4(d)}};
}

// det(1 + 2M) mod 8.
long h_det(const M4& x) {
    long det = (1 + 2 * x.e[0]) * (1 + 2 * x.e[3]) - 4 * x.e[1] * x.e[2];
    return ((det % 8) + 8) % 8;
}

} // namespace

HStructureReport verify_h_structure() {
    HStructureReport out;

    std::set<int> squares;
    for (int i = 0; i < 256; ++i) {
        M4 m = M4::from_index(i);
        squares.insert(h_mul(m, m).index());
    }
    // Subgroup generated by the squares.
    std::set<int> H = squares;
    H.insert(0);
    bool grew = true;
    while (grew) {
        grew = false;
        std::set<int> next = H;
        for (int i : H)
            for (int j : H) {
                int k = h_mul(M4::from_index(i), M4::from_index(j)).index();
                if (next.insert(k).second) grew = true;
            }
        H = next;
    }
    out.h_order = H.size();
    out.index_in_h1 = 256 / H.size();

    // H_2/H_3: classes of 1 + 4M', i.e. M = 2M' with even entries.
    std::set<int> h2;
    for (int i = 0; i < 256; ++i) {
        M4 m = M4::from_index(i);
        if (m.e[0] % 2 == 0 && m.e[1] % 2 == 0 && m.e[2] % 2 == 0 && m.e[3] % 2 == 0)
            h2.insert(i);
    }
    {
        size_t inter = 0;
        for (int i : h2)
            if (H.count(i)) ++inter;
        out.index_in_h2 = inter > 0 ? h2.size() / inter : 0;
    }

    // <squares> should be exactly the determinant-1 part of H_2.
    std::set<int> detker;
    for (int i : h2)
        if (h_det(M4::from_index(i)) == 1) detker.insert(i);
    out.equals_det_kernel = (H == detker);

    out.det_of_squares_ok = true;
    for (int i = 0; i < 256; ++i) {
        M4 m = M4::from_index(i);
        if (h_det(h_mul(m, m)) != 1) out.det_of_squares_ok = false;
    }

    out.h2_squares_trivial = true;
    for (int i : h2) {
        M4 m = M4::from_index(i);
        if (h_mul(m, m).index() != 0) out.h2_squares_trivial = false;
    }

    out.normal_in_h1 = true;
    for (int g = 0; g < 256 && out.normal_in_h1; ++g) {
        M4 mg = M4::from_index(g);
        M4 mginv = h_inv(mg);
        for (int h : H) {
            int c = h_mul(h_mul(mg, M4::from_index(h)), mginv).index();
            if (!H.count(c)) {
                out.normal_in_h1 = false;
                break;
            }
        }
    }

    out.pass = out.h_order == 8 && out.index_in_h1 == 32 && out.index_in_h2 == 2 &&
               out.equals_det_kernel && out.det_of_squares_ok && out.h2_squares_trivial &&
               out.normal_in_h1;
    return out;
}

InertiaMatrixReport verify_inertia_matrices() {
    InertiaMatrixReport out;
    unsigned span = span_mask({enc(0, 0, 0, 1), enc(0, 0, 1, 0)});
    const unsigned v21 = span_mask({enc(0, 1, 1, 1), enc(1, 1, 1, 0)});
    const unsigned v22 = span_mask({enc(1, 1, 0, 1), enc(1, 0, 1, 1)});
    out.span_size = __builtin_popcount(span);
    out.intersection_v21_size = __builtin_popcount(span & v21);
    out.intersection_v22_size = __builtin_popcount(span & v22);
    out.pass = (span & v21) == 1u && out.span_size == 4;
    return out;
}

} // namespace kappa
