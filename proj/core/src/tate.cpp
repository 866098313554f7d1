// Copyright (c) 2026 The kappa authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "kappa/tate.hpp"

#include "kappa/qseries.hpp"

#include <algorithm>
#include <set>

namespace kappa {

BaseFieldTag base_field(const LocalReductionData& data) {
    if (!is_multiplicative(data.cls))
        throw contract_error("base_field: reduction not multiplicative");
    return data.cls == ReductionClass::split_multiplicative ? BaseFieldTag::Qp
                                                            : BaseFieldTag::UnramifiedQuadratic;
}

namespace {

size_t series_len(const Padic& q) {
    long d = q.val();
    return static_cast<size_t>(q.abs_precision() / d + 3);
}

} // namespace

Padic tate_a4(const Padic& q) { return qseries::evaluate(qseries::a4_coefficients(series_len(q)), 1, q); }
Padic tate_a6(const Padic& q) { return qseries::evaluate(qseries::a6_coefficients(series_len(q)), 1, q); }
Padic tate_c4(const Padic& q) { return qseries::evaluate(qseries::c4_coefficients(series_len(q)), 0, q); }
Padic tate_c6(const Padic& q) { return qseries::evaluate(qseries::c6_coefficients(series_len(q)), 0, q); }
Padic tate_delta(const Padic& q) {
    return qseries::evaluate(qseries::delta_coefficients(series_len(q)), 1, q);
}

Padic j_from_q(const Padic& q) {
    size_t len = series_len(q) + 1;
    std::vector<Integer> cs = qseries::j_coefficients(len); // cs[k] = coeff of q^(k-1)
    Padic poly = qseries::evaluate(std::vector<Integer>(cs.begin() + 1, cs.end()), 0, q);
    Padic inv_q = Padic::make(q.prime(), 0, 1, q.precision()) / q;
    return inv_q * Padic::from_integer(cs[0], q.prime(), q.precision()) + poly;
}

TateParameter tate_parameter(const Rational& j, const Integer& p, long unit_prec) {
    Valuation vj = valuation(j, p);
    if (!(vj < Valuation(0)))
        throw domain_error("tate_parameter: ord_p(j) >= 0 (not multiplicative)");
    long d = -vj.value();

    Padic jp = Padic::from_rational(j, p, unit_prec + 2);
    Padic q = Padic::make(p, 0, 1, unit_prec + 2) / jp; // 1/j: valuation d

    size_t len = static_cast<size_t>((unit_prec + 2) / d + 4);
    std::vector<Integer> cs = qseries::j_coefficients(len + 1);
    std::vector<Integer> poly(cs.begin() + 1, cs.end()); // q^0 part onward
    std::vector<Integer> dpoly(poly.size(), 0);          // derivative of the q^(>=1) part
    for (size_t k = 1; k < poly.size(); ++k) dpoly[k - 1] = k * poly[k];

    Padic one = Padic::make(p, 0, 1, unit_prec + 2);
    bool converged = false;
    for (int iter = 0; iter < 80; ++iter) {
        Padic err = j_from_q(q) - jp;
        if (err.is_zero_like()) {
            converged = true;
            break;
        }
        // J'(q) = -1/q^2 + sum k c_k q^(k-1)
        Padic deriv = -(one / (q * q)) + qseries::evaluate(dpoly, 0, q);
        Padic corr = err / deriv;
        q = q - corr;
        if (q.is_zero_like() || q.val() != d)
            throw precision_error("tate_parameter: Newton drifted off the target valuation");
    }
    if (!converged) throw precision_error("tate_parameter: Newton did not converge");
    if (q.val() != d) throw error("tate_parameter: ord(q) != -ord(j) (internal bug)");
    return TateParameter{p, q.with_precision(unit_prec), BaseFieldTag::Qp};
}

// ---- TateLocalContext ----

struct TateLocalContext::Impl {
    LocalReductionData data;
    Integer p;
    long d = 0;    // ord_p(q)
    long prec = 0; // unit digits
    BaseFieldTag tag = BaseFieldTag::Qp;
    QuadraticField F;
    Padic q;
    Padic a4q, a6q;
    QuadElement iso_u, iso_r, iso_s, iso_t;
    QuadElement omega3; // primitive cube root of unity (p = 2 nonsplit only)

    explicit Impl(const LocalReductionData& d_) : data(d_), p(d_.prime), F(d_.prime) {}

    QuadElement one() const { return QuadElement::make(F, 0, 1, 0, prec); }
    QuadElement embed_rational(const Rational& x) const {
        return QuadElement::from_rational(F, x, prec);
    }
    QuadElement embed_padic(const Padic& x) const { return QuadElement::from_padic(F, x); }

    QuadElement q_elem() const { return embed_padic(q); }

    QuadElement q_power(const Integer& k) const { return q_elem().pow(k); }

    // ---- uniformisation series ----

    // u normalised into 0 <= v(u) < d by q-shifts.
    QuadElement normalise(const QuadElement& u) const {
        long v = u.val();
        long k = v >= 0 ? v / d : -((-v + d - 1) / d);
        if (k == 0) return u;
        return u * q_power(-Integer(k));
    }

    bool is_identity_class(const QuadElement& u) const {
        if (u.val() % d != 0) return false;
        QuadElement z = normalise(u);
        QuadElement diff = z - one();
        return diff.is_zero_like();
    }

    std::pair<QuadElement, QuadElement> forward(const QuadElement& u_in) const {
        if (u_in.is_zero_like()) throw contract_error("tate forward: zero parameter");
        QuadElement u = normalise(u_in);
        if (is_identity_class(u)) throw domain_error("tate forward: parameter in q^Z");
        long target = q.abs_precision();

        QuadElement ONE = one();
        QuadElement omu = ONE - u;
        QuadElement X = u / (omu * omu);
        QuadElement Y = u * u / (omu * omu * omu);

        QuadElement qe = q_elem();
        QuadElement qm = ONE;
        for (long m = 1;; ++m) {
            qm = qm * qe;
            long vu = u.val();
            if (m * d - std::max(vu, 0L) > target && m * d - std::max(-vu, 0L) > target &&
                m >= 2)
                break;
            QuadElement t1 = qm * u;            // q^m u
            QuadElement t2 = qm / u;            // q^m / u
            QuadElement o1 = ONE - t1, o2 = ONE - t2, o3 = ONE - qm;
            X = X + t1 / (o1 * o1) + t2 / (o2 * o2) - (qm + qm) / (o3 * o3);
            Y = Y + t1 * t1 / (o1 * o1 * o1) - t2 / (o2 * o2 * o2) + qm / (o3 * o3);
            if (m > 4 * target + 8) throw error("tate forward: series runaway (internal bug)");
        }
        return {X, Y};
    }

    QuadElement forward_x_derivative(const QuadElement& u) const {
        long target = q.abs_precision();
        QuadElement ONE = one();
        QuadElement omu = ONE - u;
        QuadElement D = (ONE + u) / (omu * omu * omu);
        QuadElement qe = q_elem();
        QuadElement qm = ONE;
        for (long m = 1;; ++m) {
            qm = qm * qe;
            long vu = u.val();
            if (m * d - std::max(vu, 0L) > target && m * d - std::max(-vu, 0L) > target &&
                m >= 2)
                break;
            QuadElement t1 = qm * u;
            QuadElement t2 = qm / u;
            QuadElement o1 = ONE - t1, o2 = ONE - t2;
            D = D + qm * (ONE + t1) / (o1 * o1 * o1) -
                (qm / (u * u)) * (ONE + t2) / (o2 * o2 * o2);
            if (m > 4 * target + 8) throw error("tate forward: series runaway (internal bug)");
        }
        return D;
    }

    QuadElement inverse(const QuadElement& x, const QuadElement& y) const {
        return inverse_impl(x, y, true);
    }

    QuadElement inverse_impl(const QuadElement& x, const QuadElement& y,
                             bool allow_doubling) const {
        std::vector<QuadElement> newton_starts;
        std::vector<QuadElement> direct_candidates;

        // Generic leading-order start u = w/(1+w), w = y/x.
        if (!x.is_zero_like()) {
            QuadElement w = y / x;
            QuadElement opw = one() + w;
            if (!opw.is_zero_like()) newton_starts.push_back(w / opw);
            long vx = x.val();
            if (vx > 0 && 2 * vx < d) newton_starts.push_back(x);
            if (vx > 0 && d % 2 == 0 && 2 * vx >= d) {
                // Near the two-torsion shell: u^2 - x u + q = 0 to leading order.
                QuadElement disc = x * x - embed_rational(4) * q_elem();
                if (!disc.is_zero_like()) {
                    if (auto rt = sqrt(disc)) {
                        QuadElement half = one() / embed_rational(2);
                        newton_starts.push_back((x + *rt) * half);
                        newton_starts.push_back((x - *rt) * half);
                    }
                }
            }
        }
        // Two-torsion parameters: u = -1 and (d even) u = +-sqrt(q).
        direct_candidates.push_back(-one());
        if (d % 2 == 0) {
            if (auto rq = sqrt(q_elem())) {
                direct_candidates.push_back(*rq);
                direct_candidates.push_back(-*rq);
            }
        }

        auto finish = [&](const QuadElement& cand) -> std::optional<QuadElement> {
            QuadElement u = normalise(cand);
            if (is_identity_class(u)) return std::nullopt;
            auto [X, Y] = forward(u);
            long tol_x = std::min(X.abs_precision(), x.abs_precision()) - 1;
            if (!congruent(X, x, tol_x)) return std::nullopt;
            long tol_y = std::min(Y.abs_precision(), y.abs_precision()) - 1;
            if (congruent(Y, y, tol_y)) return u;
            QuadElement alt = normalise(q_elem() / u);
            auto [X2, Y2] = forward(alt);
            if (congruent(X2, x, tol_x) && congruent(Y2, y, tol_y)) return alt;
            return std::nullopt;
        };

        for (const QuadElement& u0 : newton_starts) {
            if (u0.is_zero_like()) continue;
            QuadElement u = u0;
            bool ok = false;
            for (int iter = 0; iter < 48; ++iter) {
                QuadElement e;
                try {
                    e = forward(u).first - x;
                } catch (const domain_error&) {
                    break; // ran into the identity class
                }
                if (e.is_zero_like()) {
                    ok = true;
                    break;
                }
                QuadElement deriv = forward_x_derivative(u);
                if (deriv.is_zero_like()) break;
                QuadElement du = e / deriv;
                if (du.is_zero_like()) {
                    ok = true;
                    break;
                }
                u = u - du;
                if (u.is_zero_like()) break;
            }
            if (!ok) continue;
            if (auto r = finish(u)) return *r;
        }
        for (const QuadElement& cand : direct_candidates) {
            if (auto r = finish(cand)) return *r;
        }

        // Last resort, load-bearing near the two-torsion shell v(u) = d/2:
        // double the point (its class lands on v = 0 where Newton is robust),
        // invert the double, and split the square root.
        if (allow_doubling) {
            try {
                QuadElement A4 = embed_padic(a4q);
                QuadElement A6 = embed_padic(a6q);
                QuadElement den = y + y + x;
                if (!den.is_zero_like()) {
                    QuadElement three = embed_rational(3), two = embed_rational(2);
                    QuadElement lam = (three * x * x + A4 - y) / den;
                    QuadElement nu = (-(x * x * x) + A4 * x + two * A6) / den;
                    QuadElement x2 = lam * lam + lam - x - x;
                    QuadElement y2 = -(lam + one()) * x2 - nu;
                    QuadElement u2 = inverse_impl(x2, y2, false);
                    for (int k = 0; k <= 1; ++k) {
                        QuadElement target = (k == 0) ? u2 : u2 * q_elem();
                        if (target.val() % 2 != 0) continue;
                        if (auto rt = sqrt(target)) {
                            if (auto r = finish(*rt)) return *r;
                            if (auto r = finish(-*rt)) return *r;
                        }
                    }
                }
            } catch (const error&) {
                // fall through to the retry signal
            }
        }
        throw precision_error("tate inverse: no branch matched at this precision");
    }

    QuadElement point_to_unit(const Point& P) const {
        if (P.at_infinity) throw contract_error("point_to_unit: identity point");
        // Into the minimal model's coordinates first.
        Point Q = data.to_minimal(P);
        if (!is_on_curve(data.minimal_model, Q))
            throw contract_error("point_to_unit: point not on the curve");
        QuadElement xe = embed_rational(Q.x);
        QuadElement ye = embed_rational(Q.y);
        QuadElement u2 = iso_u * iso_u;
        QuadElement xq = (xe - iso_r) / u2;
        QuadElement yq = (ye - iso_s * (xe - iso_r) - iso_t) / (u2 * iso_u);
        return inverse(xq, yq);
    }

    // ---- quotient structure and membership ----

    QuotientStructure structure(long n) const {
        if (d % p == 0)
            throw hypothesis_error("quotient structure: p divides ord_p(q)");
        QuotientStructure S;
        S.p = p;
        S.n = n;
        S.two_torsion_factor = (p == 2);
        if (tag == BaseFieldTag::Qp) {
            if (p == 2) {
                S.torsion_generator = embed_rational(-1);
                S.cyclic_generator = embed_rational(5);
                S.description = "Z/2 x Z/2^" + std::to_string(n);
            } else {
                S.cyclic_generator = embed_rational(Rational(p + 1));
                S.description = "Z/" + p.get_str() + "^" + std::to_string(n);
            }
        } else {
            if (p == 2) {
                S.torsion_generator = embed_rational(-1);
                // eps^2 = 2 - theta for eps = theta - 1 = (-1 + sqrt 5)/2.
                S.cyclic_generator = QuadElement::make(F, 0, 2, -1, prec);
                S.description = "Z/2 x Z/2^" + std::to_string(n);
            } else {
                QuadElement sqrtD = QuadElement::make(F, 0, F.sqrt_a, F.sqrt_b, prec);
                S.cyclic_generator = exp(embed_padic(Padic::from_integer(p, p, prec)) * sqrtD);
                S.description = "Z/" + p.get_str() + "^" + std::to_string(n);
            }
        }
        return S;
    }

    bool unit_is_pn_power_qp(const Padic& w, long n) const {
        // (Z_p^*)^(p^n): odd p: w^(p-1) = 1 mod p^(n+1); p = 2: w = 1 mod 2^(n+2).
        long need = (p == 2) ? n + 2 : n + 1;
        if (w.precision() < need)
            throw precision_error("power-subgroup test: insufficient digits");
        if (p == 2) return mod_reduce(w.unit(), ipow(2, need)) == 1;
        Integer pk = ipow(p, need);
        return pow_mod(w.unit(), p - 1, pk) == 1;
    }

    bool in_power_subgroup(const QuadElement& z_in, long n) const {
        Integer pn = ipow(p, static_cast<unsigned long>(n));
        if (tag == BaseFieldTag::Qp) {
            if (!z_in.is_rational())
                throw contract_error("power-subgroup test: element not in Q_p");
            Padic z = z_in.to_padic();
            // Solve alpha * d = val(z) mod p^n, then strip q^alpha and p-powers.
            Integer alpha = mod_reduce(Integer(z.val()) * inv_mod(d, pn), pn);
            Padic w = z / q.pow(alpha);
            // Remaining valuation is a multiple of p^n by construction.
            Padic w_unit = Padic::make(p, 0, w.unit(), w.precision());
            return unit_is_pn_power_qp(w_unit, n);
        }
        // Unramified quadratic: valuations of H-elements lie in dZ (or d/2 Z
        // for odd p with even d; squaring reduces to the unit case since the
        // quotient has odd order).
        QuadElement z = z_in;
        if (p != 2) z = z * z;
        long v = z.val();
        if (v % d != 0) return false;
        QuadElement w = z * q_power(-Integer(v / d));
        if (w.val() != 0) throw error("power-subgroup: stripping failed (internal bug)");
        long need = (p == 2) ? n + 2 : n + 1;
        if (w.precision() < need)
            throw precision_error("power-subgroup test: insufficient digits");
        if (p == 2) {
            // w in U_1^(2^n) iff some cube root of unity eta has w*eta = 1 mod 2^(n+2).
            for (int k = 0; k < 3; ++k) {
                QuadElement cand = (k == 0) ? w : (k == 1 ? w * omega3 : w * omega3 * omega3);
                if (congruent(cand, one(), need)) return true;
            }
            return false;
        }
        QuadElement t = w.pow(p * p - 1);
        return congruent(t, one(), need);
    }

    QuotientClass project(const QuadElement& u, long n) const {
        QuotientStructure S = structure(n);
        Integer pn = ipow(p, static_cast<unsigned long>(n));
        QuadElement ginv = one() / S.cyclic_generator;
        int tmax = S.two_torsion_factor ? 2 : 1;
        for (int t = 0; t < tmax; ++t) {
            QuadElement base = (t == 0) ? u : u * S.torsion_generator; // torsion gen is -1
            QuadElement z = base;
            for (Integer e = 0; e < pn; ++e) {
                if (in_power_subgroup(z, n)) return QuotientClass{t, e, n};
                z = z * ginv;
            }
        }
        throw precision_error("quotient projection: no class matched");
    }

    LocalImageData local_image(const std::vector<Point>& free_points,
                               const std::vector<Point>& torsion_points, long n) const {
        LocalImageData out;
        Integer pn = ipow(p, static_cast<unsigned long>(n));
        std::vector<QuotientClass> all;
        for (const Point& P : free_points) {
            QuotientClass c = project(point_to_unit(P), n);
            out.classes.push_back(c);
            all.push_back(c);
        }
        for (const Point& P : torsion_points) {
            QuotientClass c = project(point_to_unit(P), n);
            out.classes.push_back(c);
            all.push_back(c);
        }

        // nu: co-depth of the deepest free-generator image in the cyclic factor.
        long best = n;
        int argmin_count = 0;
        for (size_t j = 0; j < free_points.size(); ++j) {
            const Integer& e = out.classes[j].exponent;
            long c;
            if (mod_reduce(e, pn) == 0) {
                c = n;
            } else {
                c = 0;
                Integer m = mod_reduce(e, pn);
                while (m % p == 0) {
                    m /= p;
                    ++c;
                }
            }
            if (c < best) {
                best = c;
                argmin_count = 1;
            } else if (c == best && c < n) {
                ++argmin_count;
            }
        }
        out.nu = best;
        out.nu_stable = best < n;
        out.renumbering_tie = argmin_count > 1;

        if (p == 2) {
            // Subgroup of Z/2 x Z/2^n generated by all classes; cyclic iff
            // some element's order equals the subgroup size.
            std::set<std::pair<int, Integer>> S{{0, 0}};
            bool grew = true;
            while (grew) {
                grew = false;
                std::set<std::pair<int, Integer>> next = S;
                for (const auto& s : S)
                    for (const auto& c : all) {
                        std::pair<int, Integer> t{(s.first + c.torsion_bit) % 2,
                                                  mod_reduce(s.second + c.exponent, pn)};
                        if (next.insert(t).second) grew = true;
                    }
                S = next;
            }
            size_t max_order = 1;
            for (const auto& s : S) {
                // order of (t, e) in Z/2 x Z/2^n
                Integer e = s.second;
                size_t oe = 1;
                while (mod_reduce(e, pn) != 0) {
                    e *= 2;
                    oe *= 2;
                }
                size_t order = std::max(oe, static_cast<size_t>(s.first ? 2 : 1));
                max_order = std::max(max_order, order);
            }
            out.r2n = (max_order == S.size()) ? 1 : 2;
        } else {
            out.r2n = 1;
        }
        out.delta2 = (p == 2 && n == 1 && out.r2n == 1) ? 2 : 0;
        return out;
    }
};

TateLocalContext::TateLocalContext(const LocalReductionData& data, long unit_prec)
    : impl_(std::make_unique<Impl>(data)) {
    if (!is_multiplicative(data.cls))
        throw contract_error("TateLocalContext: reduction not multiplicative");
    Impl& I = *impl_;
    I.prec = unit_prec;
    I.tag = base_field(data);
    I.d = data.ord_delta;

    CurveInvariants inv = invariants(data.minimal_model);
    TateParameter tp = tate_parameter(inv.j, I.p, unit_prec);
    I.q = tp.q;
    if (I.q.val() != I.d) throw error("TateLocalContext: ord(q) != ord(Delta) (internal bug)");

    I.a4q = tate_a4(I.q);
    I.a6q = tate_a6(I.q);
    Padic c4q = tate_c4(I.q);
    Padic c6q = tate_c6(I.q);

    Padic c4e = Padic::from_rational(inv.c4, I.p, unit_prec);
    Padic c6e = Padic::from_rational(inv.c6, I.p, unit_prec);
    Padic u2 = c6e * c4q / (c6q * c4e);
    if (u2.val() != 0) throw error("TateLocalContext: scaling not a unit (internal bug)");

    // Independent split test: the two models are isomorphic over Q_p exactly
    // when u^2 is a square there.
    bool split = I.tag == BaseFieldTag::Qp;
    if (is_square(u2) != split)
        throw error("TateLocalContext: splitness disagrees with the Tate scaling class");

    if (split) {
        auto r = sqrt(u2);
        if (!r) throw error("TateLocalContext: missing square root (internal bug)");
        I.iso_u = I.embed_padic(*r);
    } else {
        auto r = sqrt(I.embed_padic(u2));
        if (!r) throw error("TateLocalContext: missing square root in M (internal bug)");
        I.iso_u = *r;
    }

    QuadElement a1 = I.embed_rational(data.minimal_model.a1);
    QuadElement a2 = I.embed_rational(data.minimal_model.a2);
    QuadElement a3 = I.embed_rational(data.minimal_model.a3);
    QuadElement a4 = I.embed_rational(data.minimal_model.a4);
    QuadElement a6 = I.embed_rational(data.minimal_model.a6);
    QuadElement two = I.embed_rational(2), three = I.embed_rational(3);

    I.iso_s = (I.iso_u - a1) / two;
    I.iso_r = (I.iso_s * a1 + I.iso_s * I.iso_s - a2) / three;
    I.iso_t = -(a3 + I.iso_r * a1) / two;

    // Validate the full coefficient map onto (1, 0, 0, a4(q), a6(q)).
    const QuadElement &u = I.iso_u, &r = I.iso_r, &s = I.iso_s, &t = I.iso_t;
    QuadElement u2e = u * u, u4 = u2e * u2e, u6 = u4 * u2e;
    QuadElement a4p = (a4 - s * a3 + two * r * a2 - (t + r * s) * a1 + three * r * r -
                       two * s * t) /
                      u4;
    QuadElement a6p =
        (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / u6;
    long tol4 = std::min(a4p.abs_precision(), I.a4q.abs_precision()) - 2;
    long tol6 = std::min(a6p.abs_precision(), I.a6q.abs_precision()) - 2;
    if (tol4 < 1 || tol6 < 1) throw precision_error("TateLocalContext: no digits left");
    if (!congruent(a4p, I.embed_padic(I.a4q), tol4) ||
        !congruent(a6p, I.embed_padic(I.a6q), tol6))
        throw error("TateLocalContext: model map does not hit the Tate curve (internal bug)");

    if (I.p == 2 && I.tag == BaseFieldTag::UnramifiedQuadratic) {
        // omega = (-1 + sqrt(-3))/2 with sqrt(-3) = c sqrt(5), c = sqrt(-3/5).
        Padic c = *sqrt(Padic::from_rational(Rational(-3, 5), I.p, unit_prec + 2));
        QuadElement sqrt5 = QuadElement::make(I.F, 0, I.F.sqrt_a, I.F.sqrt_b, unit_prec);
        QuadElement sqrtm3 = I.embed_padic(c) * sqrt5;
        I.omega3 = (sqrtm3 - I.one()) / I.embed_rational(2);
        QuadElement check = I.omega3 * I.omega3 + I.omega3 + I.one();
        if (!check.is_zero_like() && check.val() < I.prec - 2)
            throw error("TateLocalContext: omega3 construction failed (internal bug)");
    }
}

TateLocalContext::~TateLocalContext() = default;
TateLocalContext::TateLocalContext(TateLocalContext&&) noexcept = default;
TateLocalContext& TateLocalContext::operator=(TateLocalContext&&) noexcept = default;

const Integer& TateLocalContext::prime() const { return impl_->p; }
long TateLocalContext::ord_q() const { return impl_->d; }
BaseFieldTag TateLocalContext::field_tag() const { return impl_->tag; }
const QuadraticField& TateLocalContext::quad_field() const { return impl_->F; }
const Padic& TateLocalContext::parameter() const { return impl_->q; }
long TateLocalContext::working_precision() const { return impl_->prec; }

QuadElement TateLocalContext::embed(const Rational& x) const { return impl_->embed_rational(x); }

std::pair<QuadElement, QuadElement> TateLocalContext::forward(const QuadElement& u) const {
    return impl_->forward(u);
}

QuadElement TateLocalContext::inverse(const QuadElement& x, const QuadElement& y) const {
    return impl_->inverse(x, y);
}

QuadElement TateLocalContext::point_to_unit(const Point& P) const {
    return impl_->point_to_unit(P);
}

QuotientStructure TateLocalContext::structure(long n) const { return impl_->structure(n); }

bool TateLocalContext::in_power_subgroup(const QuadElement& z, long n) const {
    return impl_->in_power_subgroup(z, n);
}

QuotientClass TateLocalContext::project(const QuadElement& u, long n) const {
    return impl_->project(u, n);
}

LocalImageData TateLocalContext::local_image(const std::vector<Point>& free_points,
                                              long n) const {
    return impl_->local_image(free_points, {}, n);
}

LocalImageData TateLocalContext::local_image(const std::vector<Point>& free_points,
                                             const std::vector<Point>& torsion_points,
                                             long n) const {
    return impl_->local_image(free_points, torsion_points, n);
}

FieldLabels local_field_labels(const TateLocalContext& ctx, const std::vector<Point>& points,
                               long n) {
    if (ctx.prime() != 2) throw capability_error("local_field_labels: p = 2 only");
    if (n != 1 && n != 2) throw capability_error("local_field_labels: n in {1, 2} only");

    FieldLabels out;
    const Padic& q = ctx.parameter();
    if (q.val() % 2 == 0)
        throw hypothesis_error("local_field_labels: ord_2(q) should be odd here");
    Integer u8 = mod_reduce(q.unit(), 8);
    if (u8 == 1) out.k1_completion = "Q2(sqrt(2))";
    else if (u8 == 3) out.k1_completion = "Q2(sqrt(-10))";
    else if (u8 == 5) out.k1_completion = "Q2(sqrt(10))";
    else out.k1_completion = "Q2(sqrt(-2))";

    // zeta_4 never lies in a ramified quadratic K_1 = Q_2(sqrt q): -1 stays a
    // nonsquare unit.
    out.zeta4_in_k1 = false;

    LocalImageData level1 = ctx.local_image(points, 1);
    if (ctx.field_tag() == BaseFieldTag::Qp) {
        // L_1 = K_1({sqrt(p_j)}) with p_j = (-1)^t 5^e mod squares; zeta_4 in
        // L_1 iff some -prod over a subset is a square in K_1, i.e. in Q_2
        // for unit classes.
        size_t r = level1.classes.size();
        bool found = false;
        for (size_t mask = 0; mask < (size_t{1} << r) && !found; ++mask) {
            int tsum = 0;
            Integer esum = 0;
            for (size_t j = 0; j < r; ++j)
                if (mask & (size_t{1} << j)) {
                    tsum ^= level1.classes[j].torsion_bit;
                    esum += level1.classes[j].exponent;
                }
            Integer z = (tsum ? -1 : 1) * ipow(Integer(5), esum.get_ui());
            if (is_square(Padic::from_integer(-z, 2, 10))) found = true;
        }
        out.zeta4_in_l1 = found;
        out.decided_at_m_level = false;
    } else {
        // eps^2 is already a square in M, so only the torsion bits matter.
        bool any_t = false;
        for (const auto& c : level1.classes) any_t = any_t || (c.torsion_bit == 1);
        out.zeta4_in_l1 = any_t;
        out.decided_at_m_level = (level1.r2n == 1);
    }
    return out;
}

EllAdicMu ell_adic_mu(const TateLocalContext& ctx_at_ell, const Point& P1, const Integer& p,
                      long n) {
    if (ctx_at_ell.prime() == p) throw contract_error("ell_adic_mu: needs ell != p");
    if (ctx_at_ell.field_tag() != BaseFieldTag::Qp)
        throw contract_error("ell_adic_mu: split multiplicative reduction required");

    auto vp = [&](long x) {
        long v = 0;
        while (x != 0 && x % p == 0) {
            x /= static_cast<long>(p.get_si());
            ++v;
        }
        return v;
    };

    EllAdicMu out;
    long dq = ctx_at_ell.ord_q();
    out.nu_local = std::min<long>(n, vp(dq));

    QuadElement u = ctx_at_ell.point_to_unit(P1);
    long e = u.val(); // normalised to [0, d)
    out.mu = (e == 0) ? n : std::min<long>(n, vp(e));
    out.inertia_exponent = (out.mu < out.nu_local) ? out.nu_local - out.mu : 0;
    return out;
}

} // namespace kappa
