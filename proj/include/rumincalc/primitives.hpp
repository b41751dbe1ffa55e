#pragma once

#include <set>

#include "operators.hpp"

namespace rumincalc {

// --- Linear-growth primitives of invariant Rumin forms ----------------------
//
// Every left-invariant Rumin form is dc-closed (a jump j >= 1 would push its
// constant coefficients to negative homogeneity), so it is a candidate for a
// primitive. The linear-growth ansatz solves dc(alpha) = beta with alpha drawn
// from {x_i * e_b : homogeneity(x_i) = 1, e_b harmonic of degree h-1 and
// weight w-1}, one weight block per weight of beta. When the system has no
// solution — on Heisenberg exactly in degree h = m+1, where the weight jumps
// by two and any primitive must grow at least quadratically — the result
// carries the NoLinearGrowth state instead of a form.

enum class PrimitiveStatus { Found, NoLinearGrowth };

struct PrimitiveResult {
    PrimitiveStatus status = PrimitiveStatus::NoLinearGrowth;
    PolyForm alpha;  // dc(alpha) == beta exactly when status == Found

    bool found() const { return status == PrimitiveStatus::Found; }
};

inline PrimitiveResult linear_growth_primitive(const CalcContext& ctx, const InvariantForm& beta) {
    const StratifiedLieAlgebra& g = ctx.group();
    const int n = g.n();

    PolyForm pb(n);
    for (const auto& [mask, c] : beta.components()) pb.add_term(mask, Polynomial::constant(n, c));

    PrimitiveResult res;
    if (pb.is_zero()) {
        res.status = PrimitiveStatus::Found;
        res.alpha = PolyForm(n);
        return res;
    }

    int h = 0;
    if (!pb.pure_degree(&h)) throw RuminError("primitive requires a pure-degree form");
    if (h < 1) throw RuminError("a degree-0 form has no primitive");
    if (!(pi_e0_apply(ctx, pb) == pb)) throw NotRumin();
    if (!dc_apply(ctx, pb).is_zero()) throw NotClosed();

    // Source weights actually present in beta.
    std::set<long long> weights;
    for (const auto& [mask, c] : beta.components()) weights.insert(mask_weight(g, mask));

    // Ansatz columns in a fixed deterministic order: weight block, then
    // harmonic basis element, then monomial.
    std::vector<PolyForm> unknowns;
    std::vector<PolyForm> images;
    for (long long w : weights)
        for (const auto& eb : ctx.rumin_basis(h - 1, w - 1))
            for (const auto& exps : monomials_of_homogeneity(g.layers(), 1)) {
                Polynomial mono(n);
                mono.add_term(exps, Rational(1));
                PolyForm u(n);
                for (const auto& [mask, c] : eb.components()) {
                    Polynomial p = mono;
                    p *= c;
                    u.add_term(mask, p);
                }
                unknowns.push_back(u);
                images.push_back(dc_apply(ctx, u));
            }

    if (unknowns.empty()) return res;  // no linear-growth candidates exist

    // Row space: every (mask, monomial) pair seen in any image or in beta.
    std::map<std::pair<std::uint64_t, std::vector<int>>, int> row_index;
    auto row_of = [&](std::uint64_t mask, const std::vector<int>& exps) {
        auto [it, fresh] = row_index.try_emplace({mask, exps}, static_cast<int>(row_index.size()));
        return it->second;
    };
    for (const auto& img : images)
        for (const auto& [mask, c] : img.components())
            for (const auto& [exps, q] : c.terms()) row_of(mask, exps);
    for (const auto& [mask, c] : pb.components())
        for (const auto& [exps, q] : c.terms()) row_of(mask, exps);

    RMatrix A(static_cast<int>(row_index.size()), static_cast<int>(unknowns.size()));
    std::vector<Rational> rhs(row_index.size(), Rational(0));
    for (std::size_t u = 0; u < images.size(); ++u)
        for (const auto& [mask, c] : images[u].components())
            for (const auto& [exps, q] : c.terms()) A.at(row_of(mask, exps), static_cast<int>(u)) = q;
    for (const auto& [mask, c] : pb.components())
        for (const auto& [exps, q] : c.terms()) rhs[row_of(mask, exps)] = q;

    auto sol = A.solve(rhs);
    if (!sol) return res;

    PolyForm alpha(n);
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
        if ((*sol)[u] == Rational(0)) continue;
        PolyForm term = unknowns[u];
        term *= (*sol)[u];
        alpha += term;
    }
    res.status = PrimitiveStatus::Found;
    res.alpha = std::move(alpha);
    return res;
}

}  // namespace rumincalc
