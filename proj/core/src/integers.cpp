// Copyright (c) 2026 The kappa authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "kappa/integers.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace kappa {

namespace {

// Witnesses making Miller-Rabin deterministic below 3.317e24.
const unsigned long kMRWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool miller_rabin_round(const Integer& n, const Integer& d, unsigned long r, const Integer& a) {
    Integer x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned long i = 1; i < r; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return true;
    }
    return false;
}

Integer pollard_brent(const Integer& n, unsigned long seed) {
    // Brent's cycle variant of Pollard rho; returns a nontrivial factor of
    // composite odd n, or n on a rare cycle failure (caller reseeds).
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(seed);
    Integer y = rng.get_z_range(n - 3) + 2;
    Integer c = rng.get_z_range(n - 2) + 1;
    Integer m = 128, g = 1, r = 1, q = 1, x, ys;
    while (g == 1) {
        x = y;
        for (Integer i = 0; i < r; ++i) y = (y * y + c) % n;
        Integer k = 0;
        while (k < r && g == 1) {
            ys = y;
            Integer lim = std::min(m, Integer(r - k));
            for (Integer i = 0; i < lim; ++i) {
                y = (y * y + c) % n;
                q = q * abs(x - y) % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = (ys * ys + c) % n;
            Integer diff = abs(x - ys);
            mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    return g;
}

void factor_into(Integer n, std::map<Integer, unsigned>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    Integer d = n;
    for (unsigned long seed = 1; d == n || d == 1; ++seed) {
        if (seed > 64) throw capability_error("factor: Pollard rho failed to split " + n.get_str());
        d = pollard_brent(n, seed);
    }
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    for (unsigned long w : kMRWitnesses) {
        if (n == w) return true;
        if (n % w == 0) return false;
    }
    Integer d = n - 1;
    unsigned long r = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d /= 2;
        ++r;
    }
    for (unsigned long w : kMRWitnesses)
        if (!miller_rabin_round(n, d, r, Integer(w))) return false;
    return true;
}

Integer Factorization::value() const {
    Integer v = sign;
    for (const auto& [p, e] : primes) v *= ipow(p, e);
    return v;
}

unsigned Factorization::exponent_of(const Integer& p) const {
    for (const auto& [q, e] : primes)
        if (q == p) return e;
    return 0;
}

std::string Factorization::to_string() const {
    std::ostringstream os;
    if (sign < 0) os << "-";
    if (primes.empty()) {
        os << "1";
        return os.str();
    }
    bool first = true;
    for (const auto& [p, e] : primes) {
        if (!first) os << " * ";
        first = false;
        os << p.get_str();
        if (e > 1) os << "^" << e;
    }
    return os.str();
}

Factorization factor(const Integer& n) {
    if (n == 0) throw domain_error("factor: zero input");
    Factorization f;
    f.sign = n < 0 ? -1 : 1;
    Integer m = abs(n);

    std::map<Integer, unsigned> acc;
    for (Integer d : {Integer(2), Integer(3), Integer(5)}) {
        while (m % d == 0) {
            acc[d] += 1;
            m /= d;
        }
    }
    // 6k+-1 wheel up to 1e6.
    for (Integer d = 7; d <= 1000000 && d * d <= m; d += 6) {
        Integer cands[2] = {d, Integer(d + 4)};
        for (const Integer& t : cands) {
            while (m % t == 0) {
                acc[t] += 1;
                m /= t;
            }
        }
    }
    if (m > 1) factor_into(m, acc);
    for (const auto& [p, e] : acc) f.primes.emplace_back(p, e);
    return f;
}

long valuation(const Integer& n, const Integer& p) {
    if (n == 0) throw domain_error("valuation: zero integer (use the Rational overload)");
    if (!is_prime(p)) throw domain_error("valuation: p is not prime");
    long v = 0;
    Integer m = n;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

Valuation valuation(const Rational& x, const Integer& p) {
    if (!is_prime(p)) throw domain_error("valuation: p is not prime");
    if (x == 0) return Valuation::infinity();
    long vn = 0, vd = 0;
    remove_factor(x.get_num(), p, vn);
    remove_factor(x.get_den(), p, vd);
    return Valuation(vn - vd);
}

Integer remove_factor(Integer n, const Integer& p, long& v) {
    v = 0;
    if (n == 0) return n;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return n;
}

Rational unit_part(const Rational& x, const Integer& p) {
    if (x == 0) throw domain_error("unit_part: zero input");
    long vn = 0, vd = 0;
    Integer num = remove_factor(x.get_num(), p, vn);
    Integer den = remove_factor(x.get_den(), p, vd);
    Rational r(num, den);
    r.canonicalize();
    return r;
}

int kronecker_symbol(const Integer& a, const Integer& n) {
    if (n == 0) throw domain_error("kronecker_symbol: n = 0");
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

Integer pow_mod(const Integer& base, const Integer& exp, const Integer& mod) {
    Integer r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

Integer inv_mod(const Integer& a, const Integer& mod) {
    Integer r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t()))
        throw domain_error("inv_mod: " + a.get_str() + " not invertible mod " + mod.get_str());
    return r;
}

Integer ipow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Integer mod_reduce(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    return r;
}

namespace {

// Tonelli-Shanks modulo an odd prime.
std::optional<Integer> sqrt_mod_odd_prime(const Integer& a, const Integer& p) {
    Integer u = mod_reduce(a, p);
    if (u == 0) return Integer(0);
    if (kronecker_symbol(u, p) != 1) return std::nullopt;
    if (p % 4 == 3) return pow_mod(u, (p + 1) / 4, p);

    Integer q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    Integer z = 2;
    while (kronecker_symbol(z, p) != -1) ++z;
    Integer m = s, c = pow_mod(z, q, p), t = pow_mod(u, q, p), r = pow_mod(u, (q + 1) / 2, p);
    while (t != 1) {
        Integer t2 = t;
        unsigned long i = 0;
        while (t2 != 1) {
            t2 = (t2 * t2) % p;
            ++i;
        }
        Integer b = c;
        for (Integer j = 0; j < m - Integer(i) - 1; ++j) b = (b * b) % p;
        m = Integer(i);
        c = (b * b) % p;
        t = (t * c) % p;
        r = (r * b) % p;
    }
    return r;
}

} // namespace

std::optional<Integer> sqrt_mod_prime_power(const Integer& a, const Integer& p, unsigned k) {
    if (!is_prime(p)) throw domain_error("sqrt_mod_prime_power: p not prime");
    if (k < 1) throw domain_error("sqrt_mod_prime_power: k < 1");
    Integer pk = ipow(p, k);
    Integer x = mod_reduce(a, pk);
    if (x == 0) return Integer(0);

    // Split off the p-part: a = p^j * u needs j even and u a square.
    long j = 0;
    Integer u = remove_factor(x, p, j);
    if (j % 2 != 0) return std::nullopt;
    unsigned ku = k - static_cast<unsigned>(j); // precision still needed for the unit part

    Integer root;
    if (p == 2) {
        if (ku == 1) {
            root = 1;
        } else if (ku == 2) {
            if (u % 4 != 1) return std::nullopt;
            root = 1;
        } else {
            if (u % 8 != 1) return std::nullopt;
            // Lift through 2-powers: given r^2 = u mod 2^m (m >= 3), either r
            // or r + 2^(m-1) is a root mod 2^(m+1).
            root = 1;
            Integer mod = 8;
            for (unsigned m = 3; m < ku; ++m) {
                Integer next = mod * 2;
                if ((root * root - u) % next != 0) root += mod / 2;
                mod = next;
            }
        }
    } else {
        auto r0 = sqrt_mod_odd_prime(u, p);
        if (!r0) return std::nullopt;
        root = *r0;
        // Hensel with doubling precision.
        unsigned m = 1;
        Integer mod = p;
        while (m < ku) {
            unsigned m2 = std::min(2 * m, ku);
            Integer mod2 = ipow(p, m2);
            Integer inv = inv_mod(2 * root, mod2);
            root = mod_reduce(root - (root * root - u) * inv, mod2);
            m = m2;
            mod = mod2;
        }
    }
    Integer result = mod_reduce(ipow(p, j / 2) * root, pk);
    if (mod_reduce(result * result - x, pk) != 0)
        throw error("sqrt_mod_prime_power: internal lift failure");
    return result;
}

std::vector<Integer> divisors(const Integer& n) {
    if (n == 0) throw domain_error("divisors: zero input");
    Factorization f = factor(abs(n));
    std::vector<Integer> ds{1};
    for (const auto& [p, e] : f.primes) {
        size_t base = ds.size();
        Integer pe = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pe *= p;
            for (size_t t = 0; t < base; ++t) ds.push_back(ds[t] * pe);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

std::vector<Rational> rational_roots(const std::vector<Rational>& coeffs) {
    // Trim leading zero coefficients.
    std::vector<Rational> c = coeffs;
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.empty()) throw domain_error("rational_roots: zero polynomial");

    std::vector<Rational> roots;
    if (c.size() == 1) return roots; // nonzero constant

    // Clear denominators to a primitive integer polynomial.
    Integer lcm = 1;
    for (const auto& q : c) {
        Integer d;
        mpz_lcm(d.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
        lcm = d;
    }
    std::vector<Integer> ic;
    ic.reserve(c.size());
    for (const auto& q : c) {
        Rational scaled = q * Rational(lcm);
        ic.push_back(scaled.get_num());
    }

    // Factor out x^v.
    size_t low = 0;
    while (ic[low] == 0) ++low;
    if (low > 0) roots.emplace_back(0);

    std::vector<Integer> poly(ic.begin() + low, ic.end());
    if (poly.size() == 1) return roots;

    auto eval_zero = [&](const Rational& r) {
        Rational acc = 0;
        for (size_t i = poly.size(); i-- > 0;) acc = acc * r + Rational(poly[i]);
        return acc == 0;
    };

    for (const Integer& num : divisors(poly.front())) {
        for (const Integer& den : divisors(poly.back())) {
            Rational cand(num, den);
            cand.canonicalize();
            if (cand.get_num() != num || cand.get_den() != den) continue; // not lowest terms
            if (eval_zero(cand)) roots.push_back(cand);
            Rational neg = -cand;
            if (eval_zero(neg)) roots.push_back(neg);
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

Rational rational_from_string(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw domain_error("bad rational literal: '" + s + "'");
    if (r.get_den() == 0) throw domain_error("zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& x) {
    return x.get_str();
}

} // namespace kappa
