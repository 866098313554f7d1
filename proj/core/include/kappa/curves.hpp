// Copyright (c) 2026 The kappa authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include "kappa/integers.hpp"

#include <vector>

namespace kappa {

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q.
struct WeierstrassModel {
    Rational a1, a2, a3, a4, a6;

    bool is_integral() const;
    bool operator==(const WeierstrassModel&) const = default;
};

struct CurveInvariants {
    Rational b2, b4, b6, b8;
    Rational c4, c6;
    Rational disc; // != 0
    Rational j;    // c4^3 / disc
};

// Throws domain_error if the model is singular.
CurveInvariants invariants(const WeierstrassModel& m);

// Admissible change of variables x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
WeierstrassModel transformed(const WeierstrassModel& m, const Rational& u, const Rational& r,
                             const Rational& s, const Rational& t);

// Scaling (u, 0, 0, 0) with integer u clearing all denominators.
// Returns the integral model; u_out receives the scale used.
WeierstrassModel integral_model(const WeierstrassModel& m, Integer& u_out);

struct Point {
    bool at_infinity = true;
    Rational x, y;

    static Point infinity() { return Point{}; }
    static Point affine(Rational px, Rational py) { return Point{false, std::move(px), std::move(py)}; }
    bool operator==(const Point&) const = default;
};

bool is_on_curve(const WeierstrassModel& m, const Point& p);

Point negated(const WeierstrassModel& m, const Point& p);

// Group law; throws domain_error for off-curve inputs.
Point add(const WeierstrassModel& m, const Point& p, const Point& q);

// Double-and-add. Coordinates explode quickly over Q, so a digit budget
// (total bits of numerator+denominator) guards runaway inputs.
Point multiply(const WeierstrassModel& m, const Integer& k, const Point& p,
               size_t coordinate_bit_budget = 1u << 20);

// Point mapped through the same (u, r, s, t) substitution as the model:
// x' = (x - r)/u^2, y' = (y - s(x - r) - t)/u^3.
Point transformed(const Point& p, const Rational& u, const Rational& r, const Rational& s,
                  const Rational& t);

struct TorsionSubgroup {
    unsigned order = 1;
    std::vector<Point> generators; // empty for the trivial group
    std::vector<Point> points;     // all torsion points incl. infinity
};

// Lutz-Nagell on a short model Y^2 = X^3 + AX + B attached to an integral
// model of m; candidate orders confirmed by explicit multiples (<= 12).
TorsionSubgroup torsion_subgroup(const WeierstrassModel& m);

// Order of p in the group, if it is torsion (order <= 12); 0 otherwise.
unsigned torsion_order(const WeierstrassModel& m, const Point& p);

// Rank, free generators, and (optionally known) torsion order, as supplied
// by the caller; the pipeline takes Mordell-Weil data as input.
struct MordellWeilInput {
    unsigned rank = 0;
    std::vector<Point> generators;
    std::optional<unsigned> torsion_order;
};

// Checks generators are on the curve and the multiple-point search finds no
// small order; throws domain_error on violation.
void validate(const WeierstrassModel& m, const MordellWeilInput& mw);

// a_ell = ell + 1 - #E(F_ell) by direct enumeration with a residue table.
// Requires odd ell of good reduction for this (integral) model, ell <= 1e5.
long trace_of_frobenius(const WeierstrassModel& m, const Integer& ell);

} // namespace kappa
