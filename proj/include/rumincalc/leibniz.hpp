#pragma once

#include "operators.hpp"

namespace rumincalc {

// --- Leibniz rule for the intrinsic differential ----------------------------
//
// On Heisenberg groups the wedge product of Rumin classes is computed on
// canonical representatives: the plain wedge is projected back into E0. The
// intrinsic differential obeys the graded Leibniz rule for this product
// whenever one factor has degree >= m+1 or the total degree stays below m;
// outside those regimes the rule can genuinely fail (the middle-degree
// operator is second order), so the report carries the exact residual and a
// flag saying whether equality was guaranteed to begin with.

struct LeibnizReport {
    int h = 0;              // degree of the first factor
    int k = 0;              // degree of the second factor
    bool guaranteed = false;  // (h, k) lies in a regime where the rule is a theorem
    bool holds = false;       // residual vanished exactly
    PolyForm lhs;             // dc of the canonical product
    PolyForm rhs;             // Leibniz expansion on canonical products
    PolyForm residual;        // lhs - rhs
};

inline LeibnizReport leibniz_check(const CalcContext& ctx, const PolyForm& alpha, const PolyForm& beta) {
    const StratifiedLieAlgebra& g = ctx.group();
    int m = 0;
    if (!g.is_heisenberg_type(&m)) throw NotHeisenberg();
    int h = 0;
    int k = 0;
    if (!alpha.pure_degree(&h) || !beta.pure_degree(&k))
        throw RuminError("Leibniz check requires pure-degree inputs");
    if (h + k > g.n())
        throw DegreeOverflow("wedge of degrees " + std::to_string(h) + " and " + std::to_string(k) +
                             " exceeds the top degree " + std::to_string(g.n()));
    if (!(pi_e0_apply(ctx, alpha) == alpha) || !(pi_e0_apply(ctx, beta) == beta)) throw NotRumin();

    LeibnizReport rep;
    rep.h = h;
    rep.k = k;
    rep.guaranteed = (h >= m + 1) || (k >= m + 1) || (h + k < m);
    rep.lhs = dc_apply(ctx, pi_e0_apply(ctx, wedge(alpha, beta)));
    PolyForm first = pi_e0_apply(ctx, wedge(dc_apply(ctx, alpha), beta));
    PolyForm second = pi_e0_apply(ctx, wedge(alpha, dc_apply(ctx, beta)));
    rep.rhs = (h % 2 == 0) ? first + second : first - second;
    rep.residual = rep.lhs - rep.rhs;
    rep.holds = rep.residual.is_zero();
    return rep;
}

}  // namespace rumincalc
