// Copyright (c) 2026 The kappa authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "kappa/padics.hpp"

#include <sstream>

namespace kappa {

namespace {

long ival(const Integer& n, const Integer& p) {
    long v = 0;
    Integer m = n;
    while (m != 0 && m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

} // namespace

// ---- Padic ----

Padic Padic::zero(Integer p) {
    Padic x;
    x.p_ = std::move(p);
    x.exact_zero_ = true;
    return x;
}

Padic Padic::approx_zero(Integer p, long abs_prec) {
    Padic x;
    x.p_ = std::move(p);
    x.exact_zero_ = false;
    x.approx_zero_ = true;
    x.val_ = abs_prec;
    return x;
}

Padic Padic::make(Integer p, long val, Integer unit, long prec) {
    if (prec < 1) throw contract_error("Padic::make: prec < 1");
    Integer pk = ipow(p, prec);
    Integer u = mod_reduce(unit, pk);
    if (u == 0 || u % p == 0) {
        // Not a unit: normalize through the generic path.
        long extra = (u == 0) ? prec : ival(u, p);
        if (extra >= prec) return approx_zero(std::move(p), val + prec);
        Integer pe = ipow(p, extra);
        Padic x;
        x.p_ = std::move(p);
        x.exact_zero_ = false;
        x.val_ = val + extra;
        x.prec_ = prec - extra;
        x.unit_ = mod_reduce(u / pe, ipow(x.p_, x.prec_));
        return x;
    }
    Padic x;
    x.p_ = std::move(p);
    x.exact_zero_ = false;
    x.val_ = val;
    x.unit_ = u;
    x.prec_ = prec;
    return x;
}

Padic Padic::from_integer(const Integer& n, const Integer& p, long prec) {
    if (n == 0) return zero(p);
    long v = ival(n, p);
    return make(p, v, n / ipow(p, v), prec);
}

Padic Padic::from_rational(const Rational& q, const Integer& p, long prec) {
    if (q == 0) return zero(p);
    long vn = ival(q.get_num(), p), vd = ival(q.get_den(), p);
    Integer num = q.get_num() / ipow(p, vn);
    Integer den = q.get_den() / ipow(p, vd);
    Integer pk = ipow(p, prec);
    Integer u = mod_reduce(num * inv_mod(den, pk), pk);
    return make(p, vn - vd, u, prec);
}

Valuation Padic::valuation() const {
    if (exact_zero_) return Valuation::infinity();
    if (approx_zero_)
        throw precision_error("Padic: valuation of a value that is zero to precision O(p^" +
                              std::to_string(val_) + ")");
    return Valuation(val_);
}

long Padic::val() const {
    if (exact_zero_) throw contract_error("Padic: val() of exact zero");
    if (approx_zero_)
        throw precision_error("Padic: val() of approx zero O(p^" + std::to_string(val_) + ")");
    return val_;
}

long Padic::abs_precision() const {
    if (exact_zero_) throw contract_error("Padic: abs_precision() of exact zero");
    if (approx_zero_) return val_;
    return val_ + prec_;
}

const Integer& Padic::unit() const {
    if (is_zero_like()) throw precision_error("Padic: unit() of zero-like value");
    return unit_;
}

Integer Padic::lift() const {
    if (is_zero_like()) return 0;
    if (val_ < 0) throw contract_error("Padic: lift() of negative valuation");
    return mod_reduce(ipow(p_, val_) * unit_, ipow(p_, abs_precision()));
}

Padic Padic::operator-() const {
    if (is_zero_like()) return *this;
    Padic x = *this;
    x.unit_ = mod_reduce(-unit_, ipow(p_, prec_));
    return x;
}

Padic operator+(const Padic& a, const Padic& b) {
    if (a.p_ != b.p_) throw contract_error("Padic: mixed primes");
    if (a.exact_zero_) return b;
    if (b.exact_zero_) return a;
    long A = std::min(a.abs_precision(), b.abs_precision());
    if (a.approx_zero_ && b.approx_zero_) return Padic::approx_zero(a.p_, A);
    auto truncated = [&](const Padic& x) {
        if (x.val_ >= A) return Padic::approx_zero(x.p_, A);
        return Padic::make(x.p_, x.val_, x.unit_, A - x.val_);
    };
    if (a.approx_zero_) return truncated(b);
    if (b.approx_zero_) return truncated(a);
    long c = std::min(a.val_, b.val_);
    if (A - c < 1) return Padic::approx_zero(a.p_, A);
    Integer w = ipow(a.p_, a.val_ - c) * a.unit_ + ipow(a.p_, b.val_ - c) * b.unit_;
    return Padic::make(a.p_, c, w, A - c);
}

Padic operator-(const Padic& a, const Padic& b) { return a + (-b); }

Padic operator*(const Padic& a, const Padic& b) {
    if (a.p_ != b.p_) throw contract_error("Padic: mixed primes");
    if (a.exact_zero_ || b.exact_zero_) return Padic::zero(a.p_);
    if (a.approx_zero_ || b.approx_zero_) return Padic::approx_zero(a.p_, a.val_ + b.val_);
    long prec = std::min(a.prec_, b.prec_);
    return Padic::make(a.p_, a.val_ + b.val_, a.unit_ * b.unit_, prec);
}

Padic operator/(const Padic& a, const Padic& b) {
    if (a.p_ != b.p_) throw contract_error("Padic: mixed primes");
    if (b.exact_zero_) throw domain_error("Padic: division by zero");
    if (b.approx_zero_) throw precision_error("Padic: division by zero-to-precision value");
    if (a.exact_zero_) return a;
    if (a.approx_zero_) return Padic::approx_zero(a.p_, a.val_ - b.val_);
    long prec = std::min(a.prec_, b.prec_);
    Integer pk = ipow(a.p_, prec);
    return Padic::make(a.p_, a.val_ - b.val_, a.unit_ * inv_mod(b.unit_, pk), prec);
}

Padic Padic::pow(const Integer& e) const {
    if (e == 0) {
        if (is_zero_like()) throw domain_error("Padic: 0^0");
        return make(p_, 0, 1, prec_);
    }
    if (is_zero_like()) {
        if (e < 0) throw domain_error("Padic: inverse of zero");
        if (exact_zero_) return *this;
        Integer bound = e * val_;
        if (!bound.fits_slong_p()) throw capability_error("Padic: pow overflow");
        return approx_zero(p_, bound.get_si());
    }
    Integer newval = e * val_;
    if (!newval.fits_slong_p()) throw capability_error("Padic: pow overflow");
    Integer pk = ipow(p_, prec_);
    Integer base = (e < 0) ? inv_mod(unit_, pk) : unit_;
    Integer u = pow_mod(base, abs(e), pk);
    return make(p_, newval.get_si(), u, prec_);
}

Padic Padic::with_precision(long prec) const {
    if (is_zero_like()) return *this;
    if (prec >= prec_) return *this;
    if (prec < 1) throw contract_error("Padic: with_precision < 1");
    return make(p_, val_, unit_, prec);
}

bool congruent(const Padic& a, const Padic& b, long abs_prec) {
    Padic d = a - b;
    if (d.exact_zero_) return true;
    return d.val_ >= abs_prec;
}

std::string Padic::str() const {
    std::ostringstream os;
    if (exact_zero_) {
        os << "0";
    } else if (approx_zero_) {
        os << "O(" << p_.get_str() << "^" << val_ << ")";
    } else {
        os << unit_.get_str() << "*" << p_.get_str() << "^" << val_ << " + O(" << p_.get_str()
           << "^" << abs_precision() << ")";
    }
    return os.str();
}

// ---- QuadraticField ----

QuadraticField::QuadraticField(const Integer& prime) : p(prime) {
    if (!is_prime(p)) throw domain_error("QuadraticField: p not prime");
    if (p == 2) {
        // theta = (1 + sqrt 5)/2, theta^2 = theta + 1; sqrt(5) = 2 theta - 1.
        s = 1;
        t = 1;
        D = 5;
        sqrt_a = -1;
        sqrt_b = 2;
    } else {
        Integer d = 2;
        while (kronecker_symbol(d, p) != -1) ++d;
        D = d;
        s = 0;
        t = d;
        sqrt_a = 0;
        sqrt_b = 1;
    }
}

// ---- QuadElement ----

QuadElement QuadElement::zero(const QuadraticField& F) {
    QuadElement x;
    x.F_ = &F;
    x.exact_zero_ = true;
    return x;
}

QuadElement QuadElement::approx_zero(const QuadraticField& F, long abs_prec) {
    QuadElement x;
    x.F_ = &F;
    x.exact_zero_ = false;
    x.approx_zero_ = true;
    x.val_ = abs_prec;
    return x;
}

QuadElement QuadElement::make(const QuadraticField& F, long val, Integer a, Integer b,
                              long prec) {
    if (prec < 1) throw contract_error("QuadElement::make: prec < 1");
    Integer pk = ipow(F.p, prec);
    a = mod_reduce(a, pk);
    b = mod_reduce(b, pk);
    if (a == 0 && b == 0) return approx_zero(F, val + prec);
    long k = std::min(a == 0 ? prec : ival(a, F.p), b == 0 ? prec : ival(b, F.p));
    if (k >= prec) return approx_zero(F, val + prec);
    if (k > 0) {
        Integer pe = ipow(F.p, k);
        a /= pe;
        b /= pe;
        val += k;
        prec -= k;
        Integer pk2 = ipow(F.p, prec);
        a = mod_reduce(a, pk2);
        b = mod_reduce(b, pk2);
    }
    QuadElement x;
    x.F_ = &F;
    x.exact_zero_ = false;
    x.val_ = val;
    x.a_ = std::move(a);
    x.b_ = std::move(b);
    x.prec_ = prec;
    return x;
}

QuadElement QuadElement::from_padic(const QuadraticField& F, const Padic& x) {
    if (x.prime() != F.p) throw contract_error("QuadElement: mixed primes");
    if (x.is_exact_zero()) return zero(F);
    if (x.is_zero_like()) return approx_zero(F, x.abs_precision());
    return make(F, x.val(), x.unit(), 0, x.precision());
}

QuadElement QuadElement::from_rational(const QuadraticField& F, const Rational& q, long prec) {
    return from_padic(F, Padic::from_rational(q, F.p, prec));
}

Valuation QuadElement::valuation() const {
    if (exact_zero_) return Valuation::infinity();
    if (approx_zero_)
        throw precision_error("QuadElement: valuation of O(p^" + std::to_string(val_) + ")");
    return Valuation(val_);
}

long QuadElement::val() const {
    if (exact_zero_) throw contract_error("QuadElement: val() of exact zero");
    if (approx_zero_)
        throw precision_error("QuadElement: val() of approx zero O(p^" + std::to_string(val_) +
                              ")");
    return val_;
}

long QuadElement::abs_precision() const {
    if (exact_zero_) throw contract_error("QuadElement: abs_precision() of exact zero");
    if (approx_zero_) return val_;
    return val_ + prec_;
}

Padic QuadElement::to_padic() const {
    if (exact_zero_) return Padic::zero(F_->p);
    if (approx_zero_) return Padic::approx_zero(F_->p, val_);
    if (!is_rational()) throw contract_error("QuadElement: not in Q_p");
    return Padic::make(F_->p, val_, a_, prec_);
}

bool QuadElement::is_rational() const {
    if (is_zero_like()) return true;
    return b_ == 0;
}

QuadElement QuadElement::conj() const {
    if (is_zero_like()) return *this;
    // conj(a + b theta) = (a + s b) - b theta
    return make(*F_, val_, a_ + F_->s * b_, -b_, prec_);
}

Padic QuadElement::norm() const {
    if (exact_zero_) return Padic::zero(F_->p);
    if (approx_zero_) return Padic::approx_zero(F_->p, 2 * val_);
    // N(a + b theta) = a^2 + s a b - t b^2; a nonzero residue has nonzero
    // norm, so this is a unit times p^(2 val).
    Integer n = a_ * a_ + F_->s * a_ * b_ - F_->t * b_ * b_;
    return Padic::make(F_->p, 2 * val_, n, prec_);
}

Padic QuadElement::trace() const {
    if (exact_zero_) return Padic::zero(F_->p);
    if (approx_zero_) return Padic::approx_zero(F_->p, val_);
    // Known only to the element's own precision.
    return Padic::make(F_->p, val_, 2 * a_ + F_->s * b_, prec_);
}

QuadElement QuadElement::operator-() const {
    if (is_zero_like()) return *this;
    return make(*F_, val_, -a_, -b_, prec_);
}

QuadElement operator+(const QuadElement& x, const QuadElement& y) {
    if (x.F_->p != y.F_->p) throw contract_error("QuadElement: mixed fields");
    if (x.exact_zero_) return y;
    if (y.exact_zero_) return x;
    long A = std::min(x.abs_precision(), y.abs_precision());
    if (x.approx_zero_ && y.approx_zero_) return QuadElement::approx_zero(*x.F_, A);
    auto truncated = [&](const QuadElement& z) {
        if (z.val_ >= A) return QuadElement::approx_zero(*z.F_, A);
        return QuadElement::make(*z.F_, z.val_, z.a_, z.b_, A - z.val_);
    };
    if (x.approx_zero_) return truncated(y);
    if (y.approx_zero_) return truncated(x);
    long c = std::min(x.val_, y.val_);
    if (A - c < 1) return QuadElement::approx_zero(*x.F_, A);
    Integer sa = ipow(x.F_->p, x.val_ - c), sb = ipow(x.F_->p, y.val_ - c);
    return QuadElement::make(*x.F_, c, sa * x.a_ + sb * y.a_, sa * x.b_ + sb * y.b_, A - c);
}

QuadElement operator-(const QuadElement& x, const QuadElement& y) { return x + (-y); }

QuadElement operator*(const QuadElement& x, const QuadElement& y) {
    if (x.F_->p != y.F_->p) throw contract_error("QuadElement: mixed fields");
    if (x.exact_zero_ || y.exact_zero_) return QuadElement::zero(*x.F_);
    if (x.approx_zero_ || y.approx_zero_)
        return QuadElement::approx_zero(*x.F_, x.val_ + y.val_);
    long prec = std::min(x.prec_, y.prec_);
    // (a + b th)(c + d th) = ac + t bd + (ad + bc + s bd) th
    const Integer &a = x.a_, &b = x.b_, &c = y.a_, &d = y.b_;
    Integer ra = a * c + x.F_->t * b * d;
    Integer rb = a * d + b * c + x.F_->s * b * d;
    return QuadElement::make(*x.F_, x.val_ + y.val_, ra, rb, prec);
}

QuadElement operator/(const QuadElement& x, const QuadElement& y) {
    if (y.exact_zero_) throw domain_error("QuadElement: division by zero");
    if (y.approx_zero_) throw precision_error("QuadElement: division by zero-to-precision");
    if (x.exact_zero_) return x;
    // x / y = x * conj(y) / N(y)
    QuadElement num = x * y.conj();
    Padic n = y.norm();
    if (num.is_zero_like()) {
        if (num.exact_zero_) return num;
        return QuadElement::approx_zero(*y.F_, num.val_ - n.val());
    }
    long prec = std::min(num.prec_, n.precision());
    Integer pk = ipow(y.F_->p, prec);
    Integer inv = inv_mod(n.unit(), pk);
    return QuadElement::make(*y.F_, num.val_ - n.val(), num.a_ * inv, num.b_ * inv, prec);
}

QuadElement QuadElement::pow(const Integer& e) const {
    if (e == 0) {
        if (is_zero_like()) throw domain_error("QuadElement: 0^0");
        return make(*F_, 0, 1, 0, prec_);
    }
    if (is_zero_like()) {
        if (e < 0) throw domain_error("QuadElement: inverse of zero");
        if (exact_zero_) return *this;
        Integer bound = e * val_;
        if (!bound.fits_slong_p()) throw capability_error("QuadElement: pow overflow");
        return approx_zero(*F_, bound.get_si());
    }
    QuadElement base = *this;
    Integer k = abs(e);
    QuadElement acc = make(*F_, 0, 1, 0, prec_);
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = acc * base;
        k /= 2;
        if (k > 0) base = base * base;
    }
    if (e < 0) acc = make(*F_, 0, 1, 0, prec_) / acc;
    return acc;
}

QuadElement QuadElement::with_precision(long prec) const {
    if (is_zero_like()) return *this;
    if (prec >= prec_) return *this;
    if (prec < 1) throw contract_error("QuadElement: with_precision < 1");
    return make(*F_, val_, a_, b_, prec);
}

bool congruent(const QuadElement& x, const QuadElement& y, long abs_prec) {
    QuadElement d = x - y;
    if (d.exact_zero_) return true;
    return d.val_ >= abs_prec;
}

std::string QuadElement::str() const {
    std::ostringstream os;
    if (exact_zero_) return "0";
    if (approx_zero_) {
        os << "O(" << F_->p.get_str() << "^" << val_ << ")";
        return os.str();
    }
    os << "(" << a_.get_str() << " + " << b_.get_str() << "*th)*" << F_->p.get_str() << "^"
       << val_ << " + O(" << F_->p.get_str() << "^" << abs_precision() << ")";
    return os.str();
}

// ---- square roots ----

std::optional<Padic> sqrt(const Padic& x) {
    if (x.is_exact_zero()) return x;
    if (x.is_zero_like()) throw precision_error("sqrt: zero-to-precision input");
    if (x.val() % 2 != 0) return std::nullopt;
    const Integer& p = x.prime();
    long prec = x.precision();
    if (p == 2 && prec < 3) throw precision_error("sqrt: need >= 3 digits for p = 2");
    auto r = sqrt_mod_prime_power(x.unit(), p, static_cast<unsigned>(prec));
    if (!r) return std::nullopt;
    long rprec = p == 2 ? prec - 1 : prec;
    return Padic::make(p, x.val() / 2, *r, rprec);
}

bool is_square(const Padic& x) {
    if (x.is_exact_zero()) return true;
    if (x.is_zero_like()) throw precision_error("is_square: zero-to-precision input");
    if (x.val() % 2 != 0) return false;
    const Integer& p = x.prime();
    if (p == 2) {
        if (x.precision() < 3) throw precision_error("is_square: need >= 3 digits for p = 2");
        return mod_reduce(x.unit(), 8) == 1;
    }
    return kronecker_symbol(x.unit(), p) == 1;
}

namespace {

struct Pair {
    Integer a, b; // a + b*theta
};

Pair pair_mul(const QuadraticField& F, const Pair& x, const Pair& y, const Integer& mod) {
    Pair r;
    r.a = mod_reduce(x.a * y.a + F.t * x.b * y.b, mod);
    r.b = mod_reduce(x.a * y.b + x.b * y.a + F.s * x.b * y.b, mod);
    return r;
}

Pair pair_sub(const Pair& x, const Pair& y, const Integer& mod) {
    return Pair{mod_reduce(x.a - y.a, mod), mod_reduce(x.b - y.b, mod)};
}

// Inverse of a unit a + b*theta modulo p^k, via conjugate over norm.
Pair pair_inv(const QuadraticField& F, const Pair& x, const Integer& mod) {
    Integer norm = x.a * x.a + F.s * x.a * x.b - F.t * x.b * x.b;
    Integer ninv = inv_mod(norm, mod);
    return Pair{mod_reduce((x.a + F.s * x.b) * ninv, mod), mod_reduce(-x.b * ninv, mod)};
}

} // namespace

std::optional<QuadElement> sqrt(const QuadElement& x) {
    if (x.is_exact_zero()) return x;
    if (x.is_zero_like()) throw precision_error("sqrt: zero-to-precision input");
    if (x.val() % 2 != 0) return std::nullopt;
    const QuadraticField& F = x.field();
    const Integer& p = F.p;
    long prec = x.precision();
    Pair z{x.ca(), x.cb()}; // unit part, exact residues mod p^prec

    // Exact Hensel lifting on coordinate pairs keeps every claimed digit honest.
    Pair w{0, 0};
    if (p == 2) {
        if (prec < 3) throw precision_error("sqrt: need >= 3 digits for p = 2");
        bool found = false;
        for (Integer a = 0; a < 8 && !found; ++a)
            for (Integer b = 0; b < 8 && !found; ++b) {
                if (mod_reduce(a, 2) == 0 && mod_reduce(b, 2) == 0) continue;
                Pair cand{a, b};
                Pair sq = pair_mul(F, cand, cand, 8);
                if (mod_reduce(sq.a - z.a, 8) == 0 && mod_reduce(sq.b - z.b, 8) == 0) {
                    w = cand;
                    found = true;
                }
            }
        if (!found) return std::nullopt;
        // w^2 = z mod 2^k; correct by 2^(k-1) c with c = w^-1 (z - w^2)/2^k mod 2.
        for (long k = 3; k < prec; ++k) {
            Integer mod_next = ipow(p, k + 1);
            Pair sq = pair_mul(F, w, w, mod_next);
            Pair diff = pair_sub(z, sq, mod_next);
            Integer scale = ipow(p, k);
            Pair delta{diff.a / scale, diff.b / scale}; // exact: diff = 0 mod 2^k
            Pair winv = pair_inv(F, w, 2);
            Pair c = pair_mul(F, delta, winv, 2);
            w.a = mod_reduce(w.a + (scale / 2) * c.a, mod_next);
            w.b = mod_reduce(w.b + (scale / 2) * c.b, mod_next);
        }
    } else {
        if (p > 2000) throw capability_error("sqrt: residue search bound exceeded");
        bool found = false;
        for (Integer a = 0; a < p && !found; ++a)
            for (Integer b = 0; b < p && !found; ++b) {
                if (a == 0 && b == 0) continue;
                Pair cand{a, b};
                Pair sq = pair_mul(F, cand, cand, p);
                if (mod_reduce(sq.a - z.a, p) == 0 && mod_reduce(sq.b - z.b, p) == 0) {
                    w = cand;
                    found = true;
                }
            }
        if (!found) return std::nullopt;
        // Newton with doubling exact precision: w <- w - (w^2 - z) / (2w).
        long m = 1;
        while (m < prec) {
            long m2 = std::min(2 * m, prec);
            Integer mod2 = ipow(p, m2);
            Pair sq = pair_mul(F, w, w, mod2);
            Pair diff = pair_sub(sq, z, mod2);
            Pair two_w{mod_reduce(2 * w.a, mod2), mod_reduce(2 * w.b, mod2)};
            Pair corr = pair_mul(F, diff, pair_inv(F, two_w, mod2), mod2);
            w = pair_sub(w, corr, mod2);
            m = m2;
        }
    }

    long rprec = (p == 2) ? prec - 1 : prec;
    Integer pk = ipow(p, prec);
    Pair check = pair_mul(F, w, w, pk);
    long agree = prec;
    {
        Integer da = mod_reduce(check.a - z.a, pk), db = mod_reduce(check.b - z.b, pk);
        long va = prec, vb = prec;
        if (da != 0) {
            va = 0;
            while (da % p == 0) {
                da /= p;
                ++va;
            }
        }
        if (db != 0) {
            vb = 0;
            while (db % p == 0) {
                db /= p;
                ++vb;
            }
        }
        agree = std::min(va, vb);
    }
    if (agree < ((p == 2) ? prec : prec)) throw error("sqrt: lift fell short (internal bug)");

    QuadElement root = QuadElement::make(F, 0, w.a, w.b, rprec);
    QuadElement scale = QuadElement::make(F, x.val() / 2, 1, 0, rprec);
    return root * scale;
}

bool is_square(const QuadElement& x) {
    if (x.is_exact_zero()) return true;
    if (x.is_zero_like()) throw precision_error("is_square: zero-to-precision input");
    if (x.val() % 2 != 0) return false;
    const QuadraticField& F = x.field();
    if (F.p == 2) {
        if (x.precision() < 3) throw precision_error("is_square: need >= 3 digits for p = 2");
        QuadElement z = QuadElement::make(F, 0, x.ca(), x.cb(), 3);
        for (Integer a = 0; a < 8; ++a)
            for (Integer b = 0; b < 8; ++b) {
                if (mod_reduce(a, 2) == 0 && mod_reduce(b, 2) == 0) continue;
                QuadElement w = QuadElement::make(F, 0, a, b, 3);
                if (congruent(w * w, z, 3)) return true;
            }
        return false;
    }
    Integer e = (F.p * F.p - 1) / 2;
    QuadElement z = QuadElement::make(F, 0, x.ca(), x.cb(), 1);
    return congruent(z.pow(e), QuadElement::make(F, 0, 1, 0, 1), 1);
}

// ---- exponentials ----

Padic exp(const Padic& x) {
    if (x.is_exact_zero()) return Padic::make(x.prime(), 0, 1, 64);
    long minval = x.prime() == 2 ? 2 : 1;
    if (x.is_zero_like() ? x.abs_precision() < minval : x.val() < minval)
        throw domain_error("exp: argument outside the convergence domain");
    long A = x.abs_precision();
    Padic sum = Padic::make(x.prime(), 0, 1, A);
    if (x.is_zero_like()) return sum;
    Padic term = sum;
    for (long k = 1;; ++k) {
        term = term * x / Padic::from_integer(Integer(k), x.prime(), A);
        if (term.is_zero_like() || term.val() >= A) break;
        sum = sum + term;
        if (k > 4096) throw capability_error("exp: series did not terminate");
    }
    return sum;
}

QuadElement exp(const QuadElement& x) {
    const QuadraticField& F = x.field();
    if (x.is_exact_zero()) return QuadElement::make(F, 0, 1, 0, 64);
    long minval = F.p == 2 ? 2 : 1;
    if (x.is_zero_like() ? x.abs_precision() < minval : x.val() < minval)
        throw domain_error("exp: argument outside the convergence domain");
    long A = x.abs_precision();
    QuadElement sum = QuadElement::make(F, 0, 1, 0, A);
    if (x.is_zero_like()) return sum;
    QuadElement term = sum;
    for (long k = 1;; ++k) {
        term = term * x / QuadElement::from_padic(F, Padic::from_integer(Integer(k), F.p, A));
        if (term.is_zero_like() || term.val() >= A) break;
        sum = sum + term;
        if (k > 4096) throw capability_error("exp: series did not terminate");
    }
    return sum;
}

} // namespace kappa
