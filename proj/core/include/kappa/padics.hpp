// Copyright (c) 2026 The kappa authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include "kappa/integers.hpp"

#include <optional>
#include <string>

namespace kappa {

// Truncated p-adic number: p^val * unit with the unit known modulo p^prec.
// Exact zeros and "zero to precision O(p^k)" are tracked separately so the
// usual min-rules stay honest under cancellation.
class Padic {
  public:
    Padic() = default;

    static Padic zero(Integer p);
    static Padic approx_zero(Integer p, long abs_prec);
    static Padic make(Integer p, long val, Integer unit, long prec); // unit coprime to p
    static Padic from_integer(const Integer& n, const Integer& p, long prec);
    static Padic from_rational(const Rational& q, const Integer& p, long prec);

    const Integer& prime() const { return p_; }
    bool is_exact_zero() const { return exact_zero_; }
    bool is_zero_like() const { return exact_zero_ || approx_zero_; }

    // Valuation as a total function; approx-zeros only carry a lower bound,
    // so asking for their exact valuation is a precision failure.
    Valuation valuation() const;
    long val() const; // throws precision_error / contract_error on zeros
    long precision() const { return prec_; }
    long abs_precision() const; // val + prec; the O(p^k) bound for approx-zero

    const Integer& unit() const;

    // Representative integer r with x = r mod p^(abs_precision), valid only
    // when val >= 0 (or zero-like).
    Integer lift() const;

    Padic operator-() const;
    friend Padic operator+(const Padic& a, const Padic& b);
    friend Padic operator-(const Padic& a, const Padic& b);
    friend Padic operator*(const Padic& a, const Padic& b);
    friend Padic operator/(const Padic& a, const Padic& b);

    Padic pow(const Integer& e) const; // negative exponents allowed

    // Truncate to at most `prec` unit digits.
    Padic with_precision(long prec) const;

    // v(a - b) >= abs_prec, treating approx-zero bounds as valuations.
    friend bool congruent(const Padic& a, const Padic& b, long abs_prec);

    std::string str() const;

  private:
    Integer p_ = 0;
    bool exact_zero_ = true;
    bool approx_zero_ = false;
    long val_ = 0;    // for approx_zero: the O() bound lives in val_ with prec_ = 0
    Integer unit_ = 0;
    long prec_ = 0;
};

// The unramified quadratic extension M = Q_p(theta) with theta^2 = s theta + t
// and integral basis {1, theta}: theta = sqrt(D) for odd p (D the smallest
// positive nonresidue) and theta = (1 + sqrt 5)/2 for p = 2.
struct QuadraticField {
    Integer p;
    Integer s, t; // theta^2 = s*theta + t
    Integer D;    // the nonresidue: theta-expression of sqrt(D) is recorded below
    // sqrt(D) = sqrt_b * theta + sqrt_a  (= 2 theta - 1 for p = 2, theta else)
    Integer sqrt_a, sqrt_b;

    explicit QuadraticField(const Integer& prime);
};

// Element p^val * (a + b*theta) of M, the pair (a, b) known mod p^prec and
// not both divisible by p.
class QuadElement {
  public:
    QuadElement() = default;

    static QuadElement zero(const QuadraticField& F);
    static QuadElement approx_zero(const QuadraticField& F, long abs_prec);
    static QuadElement make(const QuadraticField& F, long val, Integer a, Integer b, long prec);
    static QuadElement from_padic(const QuadraticField& F, const Padic& x);
    static QuadElement from_rational(const QuadraticField& F, const Rational& q, long prec);

    const QuadraticField& field() const { return *F_; }
    bool is_exact_zero() const { return exact_zero_; }
    bool is_zero_like() const { return exact_zero_ || approx_zero_; }

    Valuation valuation() const;
    long val() const;
    long precision() const { return prec_; }
    long abs_precision() const;

    const Integer& ca() const { return a_; } // coefficient of 1
    const Integer& cb() const { return b_; } // coefficient of theta

    // The Q_p part, when b = 0 to working precision; throws otherwise.
    Padic to_padic() const;
    bool is_rational() const; // b congruent to 0 at working precision

    QuadElement conj() const;           // a + b*(s - theta)
    Padic norm() const;                 // N_{M/Q_p}
    Padic trace() const;

    QuadElement operator-() const;
    friend QuadElement operator+(const QuadElement& x, const QuadElement& y);
    friend QuadElement operator-(const QuadElement& x, const QuadElement& y);
    friend QuadElement operator*(const QuadElement& x, const QuadElement& y);
    friend QuadElement operator/(const QuadElement& x, const QuadElement& y);

    QuadElement pow(const Integer& e) const;
    QuadElement with_precision(long prec) const;

    friend bool congruent(const QuadElement& x, const QuadElement& y, long abs_prec);

    std::string str() const;

  private:
    const QuadraticField* F_ = nullptr;
    bool exact_zero_ = true;
    bool approx_zero_ = false;
    long val_ = 0;
    Integer a_ = 0, b_ = 0;
    long prec_ = 0;
};

// Square roots. Odd p: Hensel from the residue field. p = 2: a mod-8 search
// seeds a Newton lift (units are squares iff they are squares mod 8 / mod 8O).
std::optional<Padic> sqrt(const Padic& x);
std::optional<QuadElement> sqrt(const QuadElement& x);

bool is_square(const Padic& x);
bool is_square(const QuadElement& x);

// exp(x) for v(x) > 1/(p-1), i.e. v >= 1 for odd p and v >= 2 for p = 2.
Padic exp(const Padic& x);
QuadElement exp(const QuadElement& x);

} // namespace kappa
