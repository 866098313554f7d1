// Copyright (c) 2026 The kappa authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "kappa/qseries.hpp"

#include <mutex>

namespace kappa::qseries {

namespace {

std::mutex cache_mutex;

Integer sigma(unsigned long m, unsigned k) {
    Integer s = 0;
    for (unsigned long d = 1; d * d <= m; ++d) {
        if (m % d != 0) continue;
        s += ipow(Integer(d), k);
        unsigned long e = m / d;
        if (e != d) s += ipow(Integer(e), k);
    }
    return s;
}

// prod_{n=1}^{len} (1 - q^n)^24 mod q^len
std::vector<Integer> eta24(size_t len) {
    std::vector<Integer> acc(len, 0);
    acc[0] = 1;
    for (size_t n = 1; n < len; ++n) {
        std::vector<Integer> next(len, 0);
        for (size_t i = 0; i < len; ++i) {
            if (acc[i] == 0) continue;
            Integer binom = 1; // C(24, j) running
            for (unsigned j = 0; j <= 24; ++j) {
                size_t idx = i + n * j;
                if (idx >= len) break;
                Integer term = acc[i] * binom;
                next[idx] += (j % 2 == 0) ? term : Integer(-term);
                binom = binom * (24 - j) / (j + 1);
            }
        }
        acc = std::move(next);
    }
    return acc;
}

std::vector<Integer> series_mul(const std::vector<Integer>& a, const std::vector<Integer>& b,
                                size_t len) {
    std::vector<Integer> out(len, 0);
    for (size_t i = 0; i < std::min(a.size(), len); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

// Inverse of a power series with unit constant term, over Z.
std::vector<Integer> series_inv(const std::vector<Integer>& a, size_t len) {
    if (a[0] != 1 && a[0] != -1) throw contract_error("series_inv: constant term not a unit");
    std::vector<Integer> inv(len, 0);
    inv[0] = a[0];
    for (size_t k = 1; k < len; ++k) {
        Integer s = 0;
        for (size_t j = 1; j <= k && j < a.size(); ++j) s += a[j] * inv[k - j];
        inv[k] = -a[0] * s;
    }
    return inv;
}

} // namespace

std::vector<Integer> j_coefficients(size_t terms) {
    static std::vector<Integer> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (cache.size() < terms) {
        size_t len = terms + 8;
        // E4 = 1 + 240 sum sigma_3(n) q^n
        std::vector<Integer> e4(len, 0);
        e4[0] = 1;
        for (size_t n = 1; n < len; ++n) e4[n] = 240 * sigma(n, 3);
        std::vector<Integer> e43 = series_mul(series_mul(e4, e4, len), e4, len);
        std::vector<Integer> eta = eta24(len);
        // j = E4^3 / (q eta24): coefficient of q^(k-1) is (E4^3 * eta24^-1)[k].
        std::vector<Integer> r = series_mul(e43, series_inv(eta, len), len);
        cache.assign(r.begin(), r.end());
    }
    return {cache.begin(), cache.begin() + terms};
}

std::vector<Integer> delta_coefficients(size_t max_m) {
    static std::vector<Integer> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (cache.size() < max_m + 1) {
        std::vector<Integer> eta = eta24(max_m + 1);
        cache.assign(max_m + 1, 0);
        for (size_t m = 1; m <= max_m; ++m) cache[m] = eta[m - 1];
    }
    return {cache.begin(), cache.begin() + max_m + 1};
}

std::vector<Integer> a4_coefficients(size_t max_m) {
    std::vector<Integer> out(max_m + 1, 0);
    for (size_t m = 1; m <= max_m; ++m) out[m] = -5 * sigma(m, 3);
    return out;
}

std::vector<Integer> a6_coefficients(size_t max_m) {
    // -(5 sigma_3 + 7 sigma_5)/12 per coefficient; 12 divides every 5d^3+7d^5.
    std::vector<Integer> out(max_m + 1, 0);
    for (size_t m = 1; m <= max_m; ++m) {
        Integer v = -(5 * sigma(m, 3) + 7 * sigma(m, 5));
        if (v % 12 != 0) throw error("a6_coefficients: 12 does not divide coefficient");
        out[m] = v / 12;
    }
    return out;
}

std::vector<Integer> c4_coefficients(size_t max_m) {
    std::vector<Integer> out(max_m + 1, 0);
    out[0] = 1;
    for (size_t m = 1; m <= max_m; ++m) out[m] = 240 * sigma(m, 3);
    return out;
}

std::vector<Integer> c6_coefficients(size_t max_m) {
    std::vector<Integer> out(max_m + 1, 0);
    out[0] = -1;
    for (size_t m = 1; m <= max_m; ++m) out[m] = 504 * sigma(m, 5);
    return out;
}

Padic evaluate(const std::vector<Integer>& coeffs, size_t lo, const Padic& q) {
    if (q.is_zero_like() || q.val() < 1) throw contract_error("qseries::evaluate: need |q| < 1");
    long d = q.val();
    long target = q.abs_precision();
    Padic acc = Padic::zero(q.prime());
    Padic qm = Padic::make(q.prime(), 0, 1, q.precision());
    for (size_t m = 0; m < coeffs.size(); ++m) {
        if (m >= lo && coeffs[m] != 0)
            acc = acc + qm * Padic::from_integer(coeffs[m], q.prime(), q.precision());
        if (static_cast<long>(m + 1) * d > target) break;
        qm = qm * q;
    }
    return acc;
}

} // namespace kappa::qseries
