#pragma once

#include "rumin_spaces.hpp"

namespace rumincalc {

// How a left-invariant field differentiates a coefficient. Constant
// coefficients die; polynomial coefficients go through the derivation.
// Further coefficient rings overload this for themselves.
inline Rational field_apply(const Derivation&, const Rational&) { return Rational(0); }
inline Polynomial field_apply(const Derivation& X, const Polynomial& f) { return X.apply(f); }

// De Rham differential in the left-invariant coframe:
// d(f theta^J) = sum_i X_i(f) theta^i ^ theta^J + f d0(theta^J).
template <class C>
Form<C> de_rham_d(const CalcContext& ctx, const Form<C>& a) {
    const auto& g = ctx.group();
    Form<C> r(a.n());
    for (const auto& [mask, c] : a.components()) {
        for (int i = 0; i < g.n(); ++i) {
            if (mask & (1ull << i)) continue;
            C der = field_apply(ctx.fields()[i], c);
            if (coeff_is_zero(der)) continue;
            if (wedge_sign(1ull << i, mask) < 0) der = -der;
            r.add_term(mask | (1ull << i), der);
        }
        InvariantForm base = d0_basis(g, mask);
        for (const auto& [m2, q] : base.components()) {
            C t = c;
            t *= q;
            r.add_term(m2, t);
        }
    }
    return r;
}

// Applies a degree-preserving rational matrix (in the degree_masks basis)
// coefficient-wise to the degree-k part of a form.
template <class C>
Form<C> apply_mask_matrix(const CalcContext& ctx, const RMatrix& M, int k, const Form<C>& a) {
    const DegreeData& d = ctx.degree(k);
    Form<C> r(a.n());
    for (const auto& [mask, c] : a.components()) {
        if (mask_degree(mask) != k) {
            r.add_term(mask, c);
            continue;
        }
        int col = d.index.at(mask);
        for (int row = 0; row < M.rows(); ++row) {
            const Rational& q = M.at(row, col);
            if (q == 0) continue;
            C t = c;
            t *= q;
            r.add_term(d.masks[row], t);
        }
    }
    return r;
}

// Orthogonal projection onto the harmonic monomial span, coefficient-wise.
// Works degree by degree, so mixed-degree forms are fine.
template <class C>
Form<C> pi_e0_apply(const CalcContext& ctx, const Form<C>& a) {
    Form<C> r(a.n());
    for (const auto& [mask, c] : a.components()) {
        int k = mask_degree(mask);
        const DegreeData& d = ctx.degree(k);
        int col = d.index.at(mask);
        for (int row = 0; row < d.pi_e0.rows(); ++row) {
            const Rational& q = d.pi_e0.at(row, col);
            if (q == 0) continue;
            C t = c;
            t *= q;
            r.add_term(d.masks[row], t);
        }
    }
    return r;
}

// Coefficient-wise exact inverse of d0 (Moore-Penrose), lowering degree by 1.
template <class C>
Form<C> d0_pinv_apply(const CalcContext& ctx, const Form<C>& a) {
    Form<C> r(a.n());
    for (const auto& [mask, c] : a.components()) {
        int k = mask_degree(mask);
        if (k == 0) continue;
        const DegreeData& dlow = ctx.degree(k - 1);
        int col = ctx.degree(k).index.at(mask);
        for (int row = 0; row < dlow.d0_pinv.rows(); ++row) {
            const Rational& q = dlow.d0_pinv.at(row, col);
            if (q == 0) continue;
            C t = c;
            t *= q;
            r.add_term(dlow.masks[row], t);
        }
    }
    return r;
}

// Retract onto the intrinsic subcomplex: iterate
//   P = 1 - d0^{-1} d - d d0^{-1}
// until it stabilizes. Each pass pushes the discrepancy up in weight, so the
// iteration terminates within the weight range; the cap only guards bugs.
template <class C>
Form<C> pi_e_apply(const CalcContext& ctx, const Form<C>& a) {
    Form<C> cur = a;
    long long cap = ctx.group().Q() + 2;
    for (long long it = 0; it <= cap; ++it) {
        Form<C> next = cur;
        next -= d0_pinv_apply(ctx, de_rham_d(ctx, cur));
        next -= de_rham_d(ctx, d0_pinv_apply(ctx, cur));
        if (next == cur) return cur;
        cur = std::move(next);
    }
    throw NoConvergence("retract iteration did not stabilize");
}

// The intrinsic differential on harmonic-valued forms:
// dc = pi_E0 . d . pi_E. The argument must already be fixed by pi_E0.
template <class C>
Form<C> dc_apply(const CalcContext& ctx, const Form<C>& a) {
    if (!(pi_e0_apply(ctx, a) == a)) throw NotRumin();
    return pi_e0_apply(ctx, de_rham_d(ctx, pi_e_apply(ctx, a)));
}

// Pullback under the dilation delta_lambda: f(x) theta^J becomes
// lambda^{weight(J)} f(delta_lambda x) theta^J.
inline PolyForm dilate_pullback(const StratifiedLieAlgebra& g, const PolyForm& a, const Rational& lambda) {
    if (!(lambda > 0)) throw NonpositiveLambda();
    PolyForm r(a.n());
    for (const auto& [mask, f] : a.components()) {
        Polynomial p = f.dilate_pullback(lambda, g.layers());
        p *= rational_pow(lambda, mask_weight(g, mask));
        r.add_term(mask, p);
    }
    return r;
}

// Sum of monomial weight and coefficient homogeneity, when every term agrees
// (the quantity d preserves); nullopt otherwise.
inline std::optional<long long> total_homogeneity(const StratifiedLieAlgebra& g, const PolyForm& a) {
    std::optional<long long> th;
    for (const auto& [mask, f] : a.components()) {
        long long h = 0;
        if (!f.is_homogeneous(g.layers(), &h)) return std::nullopt;
        long long t = h + mask_weight(g, mask);
        if (!th)
            th = t;
        else if (*th != t)
            return std::nullopt;
    }
    return th;
}

}  // namespace rumincalc
