// Copyright (c) 2026 The kappa authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include "kappa/padics.hpp"
#include "kappa/reduction.hpp"

#include <memory>
#include <utility>
#include <vector>

namespace kappa {

enum class BaseFieldTag { Qp, UnramifiedQuadratic };

// M = Q_p exactly when the reduction is split; contract error otherwise.
BaseFieldTag base_field(const LocalReductionData& data);

struct TateParameter {
    Integer p;
    Padic q; // ord(q) = -ord_p(j) = ord_p(Delta_min)
    BaseFieldTag field = BaseFieldTag::Qp;
};

// Series reversion of j(q) = 1/q + 744 + ... with Newton refinement.
// Requires ord_p(j) < 0 (multiplicative reduction).
TateParameter tate_parameter(const Rational& j, const Integer& p, long unit_prec);

// q-expansion evaluations used by the uniformisation and its oracles.
Padic tate_a4(const Padic& q);
Padic tate_a6(const Padic& q);
Padic tate_c4(const Padic& q);
Padic tate_c6(const Padic& q);
Padic tate_delta(const Padic& q); // q prod (1-q^n)^24
Padic j_from_q(const Padic& q);   // evaluates the j-series

// Class of a local point in H/<H^(p^n), q>: torsion component (p = 2 only)
// and exponent on the cyclic generator mod p^n.
struct QuotientClass {
    int torsion_bit = 0;
    Integer exponent = 0;
    long level = 0;
};

struct QuotientStructure {
    Integer p;
    long n = 1;
    bool two_torsion_factor = false; // p = 2: Z/2 x Z/2^n; else cyclic Z/p^n
    QuadElement torsion_generator;   // -1 when present
    QuadElement cyclic_generator;    // 1+p, 5, exp(p sqrt D) or eps^2
    std::string description;
};

struct LocalImageData {
    std::vector<QuotientClass> classes; // one per supplied point, same order
    long nu = 0;                        // co-depth of the distinguished generator image
    bool nu_stable = false;             // nu < n: stable under raising the level
    int r2n = 1;                        // cyclicity of the generated subgroup (p = 2)
    int delta2 = 0;                     // 2 iff n = 1 and r_{2,1} = 1 (p = 2)
    bool renumbering_tie = false;       // several generators attain the maximal order
};

// All Tate-curve computations for one (curve, prime): the parameter q, the
// isomorphism to E_q, the uniformisation and its inverse, and quotient
// projections. Precision is fixed at construction; callers retry with more
// digits on precision_error (see with_precision_retry).
class TateLocalContext {
  public:
    TateLocalContext(const LocalReductionData& data, long unit_prec);
    ~TateLocalContext();
    TateLocalContext(TateLocalContext&&) noexcept;
    TateLocalContext& operator=(TateLocalContext&&) noexcept;

    const Integer& prime() const;
    long ord_q() const;
    BaseFieldTag field_tag() const;
    const QuadraticField& quad_field() const;
    const Padic& parameter() const;
    long working_precision() const;

    QuadElement embed(const Rational& x) const;

    // Uniformisation series X(u, q), Y(u, q); u must not lie in q^Z.
    std::pair<QuadElement, QuadElement> forward(const QuadElement& u) const;

    // Parameter class of a point, normalised to 0 <= ord(u) < ord(q); the
    // u <-> q/u ambiguity is resolved against the y-coordinate.
    QuadElement inverse(const QuadElement& x, const QuadElement& y) const;

    // phi(P) for a rational point through the model isomorphism, then inverse().
    QuadElement point_to_unit(const Point& P) const;

    QuotientStructure structure(long n) const;

    // z in <H^(p^n), q> (membership by valuation solve + unit power test).
    bool in_power_subgroup(const QuadElement& z, long n) const;

    // Brute-force discrete log against structure(n); throws precision_error
    // if no class matches at the working precision.
    QuotientClass project(const QuadElement& u, long n) const;

    // Images of the supplied points, nu, r_{2,n}, delta_2. nu is computed
    // from the free generators only; torsion points (if any) still enter the
    // cyclicity test behind r_{2,n}.
    LocalImageData local_image(const std::vector<Point>& free_points, long n) const;
    LocalImageData local_image(const std::vector<Point>& free_points,
                               const std::vector<Point>& torsion_points, long n) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct FieldLabels {
    std::string k1_completion; // which quadratic extension of Q_2 is Q_2(sqrt q)
    bool zeta4_in_k1 = false;
    bool zeta4_in_l1 = false;
    bool decided_at_m_level = false; // nonsplit with cyclic image: see docs
};

// p = 2 only, n in {1, 2}; capability error otherwise.
FieldLabels local_field_labels(const TateLocalContext& ctx, const std::vector<Point>& points,
                               long n);

struct EllAdicMu {
    long mu = 0;               // min{n, ord_p(ord_ell(p_1))}, n on a unit image
    long nu_local = 0;         // min{n, ord_p(ord_ell(q))}
    long inertia_exponent = 0; // |I_n| = p^(nu - mu) when mu < nu, else 1
};

// Ramification of the local extension at a split multiplicative ell != p.
EllAdicMu ell_adic_mu(const TateLocalContext& ctx_at_ell, const Point& P1, const Integer& p,
                      long n);

// Retry policy: unit precision n + guard, doubling on precision_error, capped
// at 4 (n + guard).
template <class Fn>
auto with_precision_retry(long n, long guard, Fn&& fn) {
    long base = n + guard;
    long prec = base;
    while (true) {
        try {
            return fn(prec);
        } catch (const precision_error&) {
            if (prec >= 4 * base) throw;
            prec = std::min(2 * prec, 4 * base);
        }
    }
}

} // namespace kappa
