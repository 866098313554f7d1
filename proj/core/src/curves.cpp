// Copyright (c) 2026 The kappa authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "kappa/curves.hpp"

#include <algorithm>
#include <set>

namespace kappa {

bool WeierstrassModel::is_integral() const {
    for (const Rational* a : {&a1, &a2, &a3, &a4, &a6})
        if (a->get_den() != 1) return false;
    return true;
}

CurveInvariants invariants(const WeierstrassModel& m) {
    CurveInvariants inv;
    inv.b2 = m.a1 * m.a1 + 4 * m.a2;
    inv.b4 = 2 * m.a4 + m.a1 * m.a3;
    inv.b6 = m.a3 * m.a3 + 4 * m.a6;
    inv.b8 = m.a1 * m.a1 * m.a6 + 4 * m.a2 * m.a6 - m.a1 * m.a3 * m.a4 + m.a2 * m.a3 * m.a3 -
             m.a4 * m.a4;
    inv.c4 = inv.b2 * inv.b2 - 24 * inv.b4;
    inv.c6 = -inv.b2 * inv.b2 * inv.b2 + 36 * inv.b2 * inv.b4 - 216 * inv.b6;
    inv.disc = -inv.b2 * inv.b2 * inv.b8 - 8 * inv.b4 * inv.b4 * inv.b4 -
               27 * inv.b6 * inv.b6 + 9 * inv.b2 * inv.b4 * inv.b6;
    if (inv.disc == 0) throw domain_error("invariants: singular model (disc = 0)");
    inv.j = inv.c4 * inv.c4 * inv.c4 / inv.disc;
    return inv;
}

WeierstrassModel transformed(const WeierstrassModel& m, const Rational& u, const Rational& r,
                             const Rational& s, const Rational& t) {
    if (u == 0) throw domain_error("transformed: u = 0");
    WeierstrassModel n;
    Rational u2 = u * u, u3 = u2 * u;
    n.a1 = (m.a1 + 2 * s) / u;
    n.a2 = (m.a2 - s * m.a1 + 3 * r - s * s) / u2;
    n.a3 = (m.a3 + r * m.a1 + 2 * t) / u3;
    n.a4 = (m.a4 - s * m.a3 + 2 * r * m.a2 - (t + r * s) * m.a1 + 3 * r * r - 2 * s * t) /
           (u2 * u2);
    n.a6 = (m.a6 + r * m.a4 + r * r * m.a2 + r * r * r - t * m.a3 - t * t - r * t * m.a1) /
           (u3 * u3);
    return n;
}

Point transformed(const Point& p, const Rational& u, const Rational& r, const Rational& s,
                  const Rational& t) {
    if (p.at_infinity) return p;
    Rational u2 = u * u;
    Rational xn = (p.x - r) / u2;
    Rational yn = (p.y - s * (p.x - r) - t) / (u2 * u);
    return Point::affine(xn, yn);
}

WeierstrassModel integral_model(const WeierstrassModel& m, Integer& u_out) {
    Integer lcm = 1;
    for (const Rational* a : {&m.a1, &m.a2, &m.a3, &m.a4, &m.a6}) {
        Integer l;
        mpz_lcm(l.get_mpz_t(), lcm.get_mpz_t(), a->get_den().get_mpz_t());
        lcm = l;
    }
    u_out = lcm;
    // x = x'/u^2, y = y'/u^3 scales a_i by u^i.
    return transformed(m, Rational(1, lcm), 0, 0, 0);
}

bool is_on_curve(const WeierstrassModel& m, const Point& p) {
    if (p.at_infinity) return true;
    Rational lhs = p.y * p.y + m.a1 * p.x * p.y + m.a3 * p.y;
    Rational rhs = p.x * p.x * p.x + m.a2 * p.x * p.x + m.a4 * p.x + m.a6;
    return lhs == rhs;
}

Point negated(const WeierstrassModel& m, const Point& p) {
    if (p.at_infinity) return p;
    return Point::affine(p.x, -p.y - m.a1 * p.x - m.a3);
}

Point add(const WeierstrassModel& m, const Point& p, const Point& q) {
    if (!is_on_curve(m, p) || !is_on_curve(m, q)) throw domain_error("add: point not on curve");
    if (p.at_infinity) return q;
    if (q.at_infinity) return p;

    Rational lambda, nu;
    if (p.x == q.x) {
        if (p.y != q.y || q == negated(m, p)) return Point::infinity();
        Rational den = 2 * p.y + m.a1 * p.x + m.a3;
        lambda = (3 * p.x * p.x + 2 * m.a2 * p.x + m.a4 - m.a1 * p.y) / den;
        nu = (-p.x * p.x * p.x + m.a4 * p.x + 2 * m.a6 - m.a3 * p.y) / den;
    } else {
        lambda = (q.y - p.y) / (q.x - p.x);
        nu = p.y - lambda * p.x;
    }
    Rational x3 = lambda * lambda + m.a1 * lambda - m.a2 - p.x - q.x;
    Rational y3 = -(lambda + m.a1) * x3 - nu - m.a3;
    return Point::affine(x3, y3);
}

namespace {

size_t coordinate_bits(const Point& p) {
    if (p.at_infinity) return 0;
    return mpz_sizeinbase(p.x.get_num().get_mpz_t(), 2) +
           mpz_sizeinbase(p.x.get_den().get_mpz_t(), 2) +
           mpz_sizeinbase(p.y.get_num().get_mpz_t(), 2) +
           mpz_sizeinbase(p.y.get_den().get_mpz_t(), 2);
}

} // namespace

Point multiply(const WeierstrassModel& m, const Integer& k, const Point& p,
               size_t coordinate_bit_budget) {
    if (!is_on_curve(m, p)) throw domain_error("multiply: point not on curve");
    Integer n = k;
    Point base = p;
    if (n < 0) {
        n = -n;
        base = negated(m, base);
    }
    Point acc = Point::infinity();
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) acc = add(m, acc, base);
        n /= 2;
        if (n > 0) base = add(m, base, base);
        if (coordinate_bits(acc) > coordinate_bit_budget ||
            coordinate_bits(base) > coordinate_bit_budget)
            throw capability_error("multiply: coordinate size exceeds budget");
    }
    return acc;
}

namespace {

// Order of p if <= 12, else 0. Assumes p on curve.
unsigned small_order(const WeierstrassModel& m, const Point& p) {
    Point acc = p;
    for (unsigned k = 1; k <= 12; ++k) {
        if (acc.at_infinity) return k;
        acc = add(m, acc, p);
    }
    return 0;
}

} // namespace

unsigned torsion_order(const WeierstrassModel& m, const Point& p) {
    if (!is_on_curve(m, p)) throw domain_error("torsion_order: point not on curve");
    if (p.at_infinity) return 1;
    return small_order(m, p);
}

TorsionSubgroup torsion_subgroup(const WeierstrassModel& m) {
    Integer scale;
    WeierstrassModel mi = integral_model(m, scale);
    CurveInvariants inv = invariants(mi);

    // Short model Y^2 = X^3 + AX + B via X = 36x + 3b2, Y = 108(2y + a1x + a3).
    Integer A = -27 * inv.c4.get_num();
    Integer B = -54 * inv.c6.get_num();
    WeierstrassModel shorty{0, 0, 0, Rational(A), Rational(B)};
    Integer disc_short = -16 * (4 * A * A * A + 27 * B * B);

    auto integer_roots = [](const Integer& A_, const Integer& C_) {
        // x^3 + A_ x + C_ = 0; monic integral, so rational roots are integers.
        std::vector<Rational> coeffs{Rational(C_), Rational(A_), 0, 1};
        std::vector<Integer> out;
        for (const Rational& r : rational_roots(coeffs))
            if (r.get_den() == 1) out.push_back(r.get_num());
        return out;
    };

    std::vector<Point> candidates;
    for (const Integer& x : integer_roots(A, B)) candidates.push_back(Point::affine(Rational(x), 0));

    // Y != 0 with Y^2 | disc(short model).
    Factorization df = factor(disc_short);
    Integer sqrt_part = 1;
    for (const auto& [pp, e] : df.primes) sqrt_part *= ipow(pp, e / 2);
    for (const Integer& y : divisors(sqrt_part)) {
        for (const Integer& x : integer_roots(A, B - y * y)) {
            candidates.push_back(Point::affine(Rational(x), Rational(y)));
            candidates.push_back(Point::affine(Rational(x), Rational(-y)));
        }
    }

    std::set<std::pair<Rational, Rational>> seen;
    std::vector<std::pair<Point, unsigned>> torsion; // point on short model, order
    for (const Point& c : candidates) {
        if (!is_on_curve(shorty, c)) continue;
        if (!seen.insert({c.x, c.y}).second) continue;
        unsigned ord = small_order(shorty, c);
        if (ord > 0) torsion.emplace_back(c, ord);
    }

    TorsionSubgroup ts;
    ts.order = static_cast<unsigned>(torsion.size()) + 1;

    auto back_to_input = [&](const Point& p) {
        // Short -> integral: x = (X - 3 b2)/36, y = (Y/108 - a1 x - a3)/2.
        Rational x = (p.x - 3 * inv.b2) / 36;
        Rational y = (p.y / 108 - mi.a1 * x - mi.a3) / 2;
        Point q = Point::affine(x, y);
        // Integral -> input model: the integral model was m scaled by 1/scale.
        return transformed(q, Rational(scale), 0, 0, 0);
    };

    ts.points.push_back(Point::infinity());
    for (const auto& [p, ord] : torsion) {
        Point q = back_to_input(p);
        if (!is_on_curve(m, q)) throw error("torsion_subgroup: mapped point off curve");
        ts.points.push_back(q);
    }

    if (!torsion.empty()) {
        // Generator of maximal order; if the group is Z/2 x Z/2m, add an
        // independent 2-torsion generator.
        auto best = std::max_element(torsion.begin(), torsion.end(),
                                     [](const auto& a, const auto& b) { return a.second < b.second; });
        Point g = best->first;
        unsigned h = best->second;
        ts.generators.push_back(back_to_input(g));
        if (h < ts.order) {
            std::set<std::pair<Rational, Rational>> cyclic;
            Point acc = g;
            for (unsigned i = 1; i < h; ++i) {
                cyclic.insert({acc.x, acc.y});
                acc = add(shorty, acc, g);
            }
            for (const auto& [p, ord] : torsion) {
                if (ord == 2 && !cyclic.count({p.x, p.y})) {
                    ts.generators.push_back(back_to_input(p));
                    break;
                }
            }
            if (ts.generators.size() != 2 || h * 2 != ts.order)
                throw error("torsion_subgroup: unexpected group structure");
        }
    }
    return ts;
}

void validate(const WeierstrassModel& m, const MordellWeilInput& mw) {
    if (mw.generators.size() != mw.rank)
        throw domain_error("Mordell-Weil input: generator count != rank");
    for (const Point& g : mw.generators) {
        if (g.at_infinity || !is_on_curve(m, g))
            throw domain_error("Mordell-Weil input: generator not an affine curve point");
        if (small_order(m, g) != 0)
            throw domain_error("Mordell-Weil input: generator is a torsion point");
    }
}

long trace_of_frobenius(const WeierstrassModel& m, const Integer& ell) {
    if (!m.is_integral()) throw domain_error("trace_of_frobenius: model must be integral");
    if (ell < 3) throw domain_error("trace_of_frobenius: need an odd prime");
    if (!is_prime(ell)) throw domain_error("trace_of_frobenius: ell not prime");
    if (ell > 100000) throw capability_error("trace_of_frobenius: ell beyond enumeration bound");

    CurveInvariants inv = invariants(m);
    if (inv.disc.get_num() % ell == 0)
        throw domain_error("trace_of_frobenius: bad reduction at ell");

    long l = ell.get_si();
    long b2 = mod_reduce(inv.b2.get_num(), ell).get_si();
    long b4 = mod_reduce(inv.b4.get_num(), ell).get_si();
    long b6 = mod_reduce(inv.b6.get_num(), ell).get_si();

    // chi table: chi[r] = legendre(r, ell).
    std::vector<int8_t> chi(l, -1);
    chi[0] = 0;
    for (long x = 1; x < l; ++x) chi[static_cast<size_t>(x * x % l)] = 1;

    // a_ell = -sum_x chi(4x^3 + b2 x^2 + 2 b4 x + b6); the completed-square
    // form is valid since ell is odd.
    long a = 0;
    for (long x = 0; x < l; ++x) {
        long f = ((4 * x + b2) % l * x + 2 * b4) % l * x % l;
        f = (f + b6) % l;
        a -= chi[static_cast<size_t>(f)];
    }
    if (static_cast<double>(a) * a > 4.0 * static_cast<double>(l))
        throw error("trace_of_frobenius: Hasse bound violated (internal bug)");
    return a;
}

} // namespace kappa
