#pragma once

#include <set>

#include "operators.hpp"

namespace rumincalc {

// --- Weight jumps of the intrinsic differential -----------------------------
//
// dc is left-invariant, so it splits into finitely many pieces dc_j that raise
// the form weight by exactly j (and, preserving total homogeneity, lower the
// coefficient homogeneity by j). The jump set J(k, w) collects the j for which
// the piece leaving the weight-w part of E0^k is nonzero.
//
// A nonzero piece of jump j acts nontrivially on some monomial coefficient of
// homogeneity exactly j (its output then has constant coefficients), so a scan
// of monomials with homogeneity <= D is complete once D covers every candidate
// jump. Weight bookkeeping bounds the candidates leaving degree k by
// max W(k+1) - min W(k).

inline long long jset_required_bound(const CalcContext& ctx, int k) {
    if (k >= ctx.n()) return 2;
    auto wk = ctx.weights(k);
    auto wk1 = ctx.weights(k + 1);
    if (wk.empty() || wk1.empty()) return 2;
    return std::max<long long>(2, wk1.back() - wk.front());
}

// Weight jumps of dc out of the weight-w block of E0^k, by exhaustive scan
// over monomial coefficients of homogeneity <= D (D = -1 selects the smallest
// complete bound). Throws BoundTooSmall when the given D is not complete.
inline std::set<long long> jset(const CalcContext& ctx, int k, long long w, long long D = -1) {
    const auto& g = ctx.group();
    std::set<long long> js;
    if (k >= ctx.n()) return js;
    long long need = jset_required_bound(ctx, k);
    if (D < 0) D = need;
    if (D < need)
        throw BoundTooSmall("homogeneity bound " + std::to_string(D) + " cannot detect all weight jumps; need >= " +
                            std::to_string(need));
    for (const auto& eb : ctx.rumin_basis(k, w))
        for (long long h = 0; h <= D; ++h)
            for (const auto& exps : monomials_of_homogeneity(g.layers(), h)) {
                PolyForm alpha(g.n());
                Polynomial mono(g.n());
                mono.add_term(exps, Rational(1));
                for (const auto& [mask, c] : eb.components()) {
                    Polynomial p = mono;
                    p *= c;
                    alpha.add_term(mask, p);
                }
                PolyForm out = dc_apply(ctx, alpha);
                for (const auto& [mask, c] : out.components()) js.insert(mask_weight(g, mask) - w);
            }
    return js;
}

// Weight-graded view of one dc application: piece j collects the output
// components whose weight exceeds the (pure) input weight by exactly j. The
// pieces sum to dc(a), and each drops the coefficient homogeneity by its jump.
template <class C>
std::map<long long, Form<C>> dc_weight_pieces(const CalcContext& ctx, const Form<C>& a) {
    auto w = pure_weight(ctx.group(), a);
    if (!w) throw MixedWeight();
    Form<C> out = dc_apply(ctx, a);
    std::map<long long, Form<C>> pieces;
    for (const auto& [mask, c] : out.components()) {
        auto [it, fresh] = pieces.try_emplace(mask_weight(ctx.group(), mask) - *w, Form<C>(ctx.n()));
        it->second.add_term(mask, c);
    }
    return pieces;
}

// Same scan for the formal adjoint dc* = +-(star dc star), which lowers the
// degree by one and the weight by each j in its jump set: J*(k, w) is read off
// the jumps of dc out of the Hodge-dual block (degree n-k, weight Q-w).
inline std::set<long long> jset_dual(const CalcContext& ctx, int k, long long w, long long D = -1) {
    const auto& g = ctx.group();
    std::set<long long> js;
    if (k <= 0) return js;
    int kd = g.n() - k;
    long long need = jset_required_bound(ctx, kd);
    if (D < 0) D = need;
    if (D < need)
        throw BoundTooSmall("homogeneity bound " + std::to_string(D) + " cannot detect all weight jumps; need >= " +
                            std::to_string(need));
    const long long sw = g.Q() - w;
    for (const auto& eb : ctx.rumin_basis(k, w)) {
        InvariantForm seb = hodge_star(g, eb);
        for (long long h = 0; h <= D; ++h)
            for (const auto& exps : monomials_of_homogeneity(g.layers(), h)) {
                PolyForm alpha(g.n());
                Polynomial mono(g.n());
                mono.add_term(exps, Rational(1));
                for (const auto& [mask, c] : seb.components()) {
                    Polynomial p = mono;
                    p *= c;
                    alpha.add_term(mask, p);
                }
                PolyForm out = dc_apply(ctx, alpha);
                for (const auto& [mask, c] : out.components()) js.insert(mask_weight(g, mask) - sw);
            }
    }
    return js;
}

// Scan result for one source degree: the per-weight jump sets, their union,
// the largest jump, and the jump sets of the adjoint acting on degree k+1
// (dc_j maps the weight-w block into weight w+j, so its adjoint piece removes
// j from weight w+j).
struct JsetScan {
    int k = 0;
    std::map<long long, std::set<long long>> by_weight;   // w -> J(k, w)
    std::set<long long> degree_union;                     // J(k)
    long long max_jump = 0;                               // max J(k), 0 when empty
    std::map<long long, std::set<long long>> dual_next;   // w~ -> J*(k+1, w~)
};

inline JsetScan jset_scan(const CalcContext& ctx, int k, long long D = -1) {
    JsetScan s;
    s.k = k;
    for (long long w : ctx.weights(k)) {
        auto js = jset(ctx, k, w, D);
        s.by_weight[w] = js;
        for (long long j : js) {
            s.degree_union.insert(j);
            s.max_jump = std::max(s.max_jump, j);
            s.dual_next[w + j].insert(j);
        }
    }
    return s;
}

// All degrees at once, plus the global maximal jump M (which must stay below
// the homogeneous dimension for the averaging exponents to make sense).
struct JsetTable {
    std::vector<JsetScan> scans;  // indexed by source degree 0..n-1
    long long max_jump = 0;       // M
};

inline JsetTable jset_table(const CalcContext& ctx, long long D = -1) {
    JsetTable t;
    for (int k = 0; k < ctx.n(); ++k) {
        t.scans.push_back(jset_scan(ctx, k, D));
        t.max_jump = std::max(t.max_jump, t.scans.back().max_jump);
    }
    if (t.max_jump >= ctx.group().Q())
        throw RuminError("maximal weight jump reaches the homogeneous dimension");
    return t;
}

// --- Critical integrability exponents ---------------------------------------

// One (source weight, jump) requirement: a primitive component of weight w
// must lie in L^{Q/(Q-j)} for the averaging argument to close.
struct IntegrabilityEntry {
    long long w;
    long long j;
    Rational exponent;  // Q/(Q-j)
};

struct IntegrabilitySpec {
    int k = 0;  // degree whose primitives (degree k-1) are constrained
    std::vector<IntegrabilityEntry> requirements;
};

// Smallest weight jump of dc into degree k, over every weight block of
// degree k-1. Drives the critical exponent q(G, k).
inline long long min_jump_into(const CalcContext& ctx, int k, long long D = -1) {
    if (k < 1 || k > ctx.n()) throw RuminError("degree out of range for exponent table");
    std::set<long long> all;
    for (long long w : ctx.weights(k - 1)) {
        auto js = jset(ctx, k - 1, w, D);
        all.insert(js.begin(), js.end());
    }
    if (all.empty())
        throw RuminError("the intrinsic differential into degree " + std::to_string(k) + " vanishes");
    return *all.begin();
}

inline IntegrabilitySpec integrability_spec(const CalcContext& ctx, int k, long long D = -1) {
    if (k < 1 || k > ctx.n()) throw RuminError("degree out of range for exponent table");
    const long long Q = ctx.group().Q();
    IntegrabilitySpec spec;
    spec.k = k;
    for (long long w : ctx.weights(k - 1))
        for (long long j : jset(ctx, k - 1, w, D)) {
            if (j >= Q) throw RuminError("weight jump reaches the homogeneous dimension");
            spec.requirements.push_back({w, j, Rational(Q) / Rational(Q - j)});
        }
    return spec;
}

// Full exponent table: k -> (j(k), q(G,k) = Q/(Q-j(k)), integrability rows).
struct ExponentRow {
    int k = 0;
    long long j = 0;
    Rational q;
    IntegrabilitySpec spec;
};

inline std::vector<ExponentRow> q_exponent(const CalcContext& ctx, long long D = -1) {
    const long long Q = ctx.group().Q();
    std::vector<ExponentRow> rows;
    for (int k = 1; k <= ctx.n(); ++k) {
        ExponentRow row;
        row.k = k;
        row.j = min_jump_into(ctx, k, D);
        if (row.j >= Q) throw RuminError("weight jump reaches the homogeneous dimension");
        row.q = Rational(Q) / Rational(Q - row.j);
        row.spec = integrability_spec(ctx, k, D);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace rumincalc
