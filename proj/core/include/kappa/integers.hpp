// Copyright (c) 2026 The kappa authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kappa {

// Exact arithmetic is delegated to GMP; everything downstream works with
// these two types only.
using Integer = mpz_class;
using Rational = mpq_class;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Bad input value (zero where nonzero required, composite prime, ...).
struct domain_error : error {
    using error::error;
};
// API misuse: a precondition that callers are expected to have established.
struct contract_error : error {
    using error::error;
};
// Input is valid but beyond what this implementation is sized for.
struct capability_error : error {
    using error::error;
};
// A p-adic computation ran out of working digits; retry with more.
struct precision_error : error {
    using error::error;
};
// A hypothesis of the main inequality fails for this curve/prime.
struct hypothesis_error : error {
    using error::error;
};

// An integer extended with +infinity, so that min-rules for valuations of
// sums stay total (valuation of 0 is +infinity, not a sentinel).
class Valuation {
  public:
    constexpr Valuation(long v) : inf_(false), v_(v) {}
    static constexpr Valuation infinity() { return Valuation(); }

    bool is_infinite() const { return inf_; }
    long value() const {
        if (inf_) throw contract_error("Valuation: value() of +infinity");
        return v_;
    }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
    }
    friend bool operator<(const Valuation& a, const Valuation& b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.v_ < b.v_;
    }
    friend bool operator<=(const Valuation& a, const Valuation& b) { return a == b || a < b; }
    friend Valuation operator+(const Valuation& a, const Valuation& b) {
        if (a.inf_ || b.inf_) return infinity();
        return Valuation(a.v_ + b.v_);
    }
    friend Valuation min(const Valuation& a, const Valuation& b) { return a < b ? a : b; }

  private:
    constexpr Valuation() : inf_(true), v_(0) {}
    bool inf_;
    long v_;
};

// ---- primality / factorization ----

// Deterministic for n < 3.3e24 (fixed Miller-Rabin witness set); inputs at
// the scale of this project never exceed that.
bool is_prime(const Integer& n);

struct Factorization {
    int sign = 1;                                       // +1 or -1
    std::vector<std::pair<Integer, unsigned>> primes;   // strictly increasing

    Integer value() const;
    unsigned exponent_of(const Integer& p) const;       // 0 if p absent
    std::string to_string() const;                      // e.g. "-2^19 * 5^6 * 313"
};

// Trial division to 1e6, then Pollard rho (Brent) with certified prime
// factors. Throws domain_error on zero input.
Factorization factor(const Integer& n);

// ---- valuations ----

long valuation(const Integer& n, const Integer& p);       // n != 0
Valuation valuation(const Rational& x, const Integer& p); // +infinity for x = 0

// n with all factors of p removed; v receives the multiplicity.
Integer remove_factor(Integer n, const Integer& p, long& v);

// Unit part of x at p: x / p^valuation(x), as a rational with numerator and
// denominator coprime to p.
Rational unit_part(const Rational& x, const Integer& p);

// ---- small modular utilities ----

int kronecker_symbol(const Integer& a, const Integer& n); // n != 0

Integer pow_mod(const Integer& base, const Integer& exp, const Integer& mod);
Integer inv_mod(const Integer& a, const Integer& mod);    // throws if not invertible
Integer ipow(const Integer& base, unsigned long e);

// Smallest nonnegative residue.
Integer mod_reduce(const Integer& a, const Integer& m);

// A square root of a modulo p^k, if one exists. For p = 2 this honours the
// mod-8 obstruction on units. Absence of a root is not an error.
std::optional<Integer> sqrt_mod_prime_power(const Integer& a, const Integer& p, unsigned k);

// ---- rational roots of a polynomial ----

// coeffs[i] is the coefficient of x^i. Returns exactly the rational roots
// (each once), sorted. Throws domain_error on the zero polynomial.
std::vector<Rational> rational_roots(const std::vector<Rational>& coeffs);

// All positive divisors of |n| (n != 0); callers keep n at desk scale.
std::vector<Integer> divisors(const Integer& n);

// Convenience constructors / formatting.
Rational rational_from_string(const std::string& s); // "a", "a/b"
std::string to_string(const Rational& x);

} // namespace kappa
