// Copyright (c) 2026 The kappa authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include "kappa/integers.hpp"
#include "kappa/padics.hpp"

#include <vector>

namespace kappa::qseries {

// Exact integer q-expansion coefficients, cached and thread safe.

// j(q) = 1/q + 744 + 196884 q + ...; returns coefficients of q^-1 .. q^(terms-1),
// i.e. out[k] is the coefficient of q^(k-1).
std::vector<Integer> j_coefficients(size_t terms);

// Discriminant q prod_{n>=1} (1-q^n)^24 = sum_{m>=1} tau(m) q^m; out[m] is the
// coefficient of q^m (out[0] = 0).
std::vector<Integer> delta_coefficients(size_t max_m);

// Tate curve y^2 + xy = x^3 + a4(q) x + a6(q):
//   a4 = -5 s_3(q), a6 = -(5 s_3(q) + 7 s_5(q))/12, with integer coefficients.
std::vector<Integer> a4_coefficients(size_t max_m); // out[m] = coeff of q^m
std::vector<Integer> a6_coefficients(size_t max_m);

// c4(q) = 1 + 240 s_3 and c6(q) = -1 + 504 s_5 of the Tate curve.
std::vector<Integer> c4_coefficients(size_t max_m);
std::vector<Integer> c6_coefficients(size_t max_m);

// Evaluate sum coeffs[m] q^m (m from lo) at a p-adic q with positive
// valuation, truncating once terms fall below the working precision.
Padic evaluate(const std::vector<Integer>& coeffs, size_t lo, const Padic& q);

} // namespace kappa::qseries
