#pragma once

// Independent route to the intrinsic differential on Heisenberg-type groups,
// used only to cross-check dc_apply. It never touches the projector/retract
// machinery: degrees below the middle use the quotient description (project
// d along the ideal), degrees above use the annihilator description (d maps
// it into itself), and the middle degree solves the classical second-order
// lift explicitly, self-checking that the lifted value is unique.

#include <functional>
#include <stdexcept>

#include "rumincalc/operators.hpp"

namespace rumincalc::testsupport {

// Spanning vectors of I^k = tau ^ Lambda^{k-1} + dtau ^ Lambda^{k-2}, grouped
// by (pure) weight and reduced to a basis per weight block.
inline std::map<long long, std::vector<std::vector<Rational>>> ideal_by_weight(const CalcContext& ctx, int k) {
    const auto& g = ctx.group();
    int n = g.n();
    InvariantForm tau = heisenberg_tau(g);
    InvariantForm dtau = d0(g, tau);
    std::map<long long, std::vector<std::vector<Rational>>> buckets;
    auto push = [&](const InvariantForm& f) {
        if (f.is_zero()) return;
        auto w = pure_weight(g, f);
        if (!w) throw std::runtime_error("ideal spanning vector has mixed weight");
        buckets[*w].push_back(ctx.to_coeffs(k, f));
    };
    if (k >= 1)
        for (auto m : degree_masks(n, k - 1)) push(wedge(tau, InvariantForm::term(n, m, Rational(1))));
    if (k >= 2)
        for (auto m : degree_masks(n, k - 2)) push(wedge(dtau, InvariantForm::term(n, m, Rational(1))));
    for (auto& [w, vecs] : buckets) {
        RMatrix m(static_cast<int>(vecs.size()), static_cast<int>(vecs[0].size()));
        for (std::size_t r = 0; r < vecs.size(); ++r)
            for (std::size_t c = 0; c < vecs[r].size(); ++c) m.at(static_cast<int>(r), static_cast<int>(c)) = vecs[r][c];
        m.rref();
        std::vector<std::vector<Rational>> basis;
        for (int r = 0; r < m.rows(); ++r) {
            std::vector<Rational> row(m.cols());
            bool nz = false;
            for (int c = 0; c < m.cols(); ++c) {
                row[c] = m.at(r, c);
                if (row[c] != 0) nz = true;
            }
            if (nz) basis.push_back(std::move(row));
        }
        vecs = std::move(basis);
    }
    return buckets;
}

// Projection onto E0^k along I^k, built by inverting the change of basis
// [E0 basis | ideal basis] (valid for k <= m where the sum is direct).
inline RMatrix projection_along_ideal(const CalcContext& ctx, int k) {
    auto dim = static_cast<int>(ctx.degree(k).masks.size());
    std::vector<std::vector<Rational>> cols;
    for (const auto& f : ctx.rumin_basis(k)) cols.push_back(ctx.to_coeffs(k, f));
    std::size_t e0_count = cols.size();
    for (const auto& [w, vecs] : ideal_by_weight(ctx, k))
        for (const auto& v : vecs) cols.push_back(v);
    if (static_cast<int>(cols.size()) != dim) throw std::runtime_error("ideal split is not direct");
    RMatrix B(dim, dim);
    for (int c = 0; c < dim; ++c)
        for (int r = 0; r < dim; ++r) B.at(r, c) = cols[c][r];
    RMatrix Binv = B.inverse();
    RMatrix M(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            Rational s(0);
            for (std::size_t t = 0; t < e0_count; ++t) s += B.at(r, static_cast<int>(t)) * Binv.at(static_cast<int>(t), c);
            M.at(r, c) = s;
        }
    return M;
}

inline PolyForm wedge_invariant(const PolyForm& a, const InvariantForm& b) {
    PolyForm bb(a.n());
    for (const auto& [m, c] : b.components()) bb.add_term(m, Polynomial::constant(a.n(), c));
    return wedge(a, bb);
}

inline PolyForm oracle_dc(const CalcContext& ctx, const PolyForm& alpha) {
    const auto& g = ctx.group();
    int m = 0;
    if (!g.is_heisenberg_type(&m)) throw std::runtime_error("oracle needs a Heisenberg-type group");
    if (alpha.is_zero()) return alpha;
    int h = 0;
    if (!alpha.pure_degree(&h)) throw std::runtime_error("oracle needs pure degree");
    InvariantForm tau = heisenberg_tau(g);
    InvariantForm dtau = d0(g, tau);
    PolyForm dal = de_rham_d(ctx, alpha);
    if (h < m) return apply_mask_matrix(ctx, projection_along_ideal(ctx, h + 1), h + 1, dal);
    if (h >= m + 1) {
        if (!wedge_invariant(dal, tau).is_zero() || !wedge_invariant(dal, dtau).is_zero())
            throw std::runtime_error("d did not map the annihilator into itself");
        return dal;
    }
    // h == m: find xi in I^m (x) polynomials with d(alpha + xi) ^ tau = 0 and
    // d(alpha + xi) ^ dtau = 0, matching alpha's total homogeneity.
    auto th = total_homogeneity(g, alpha);
    if (!th) throw std::runtime_error("oracle needs homogeneous input");
    struct Unknown {
        PolyForm form;   // monomial times ideal basis vector
        PolyForm dform;  // its differential
    };
    std::vector<Unknown> unknowns;
    for (const auto& [w, vecs] : ideal_by_weight(ctx, m))
        for (const auto& v : vecs) {
            InvariantForm base = ctx.to_form(m, v);
            long long hom = *th - w;
            if (hom < 0) continue;
            for (const auto& exps : monomials_of_homogeneity(g.layers(), hom)) {
                Polynomial mono(g.n());
                mono.add_term(exps, Rational(1));
                PolyForm uf(g.n());
                for (const auto& [mask, c] : base.components()) {
                    Polynomial p = mono;
                    p *= c;
                    uf.add_term(mask, p);
                }
                unknowns.push_back({uf, de_rham_d(ctx, uf)});
            }
        }
    // Rows: every (mask, monomial) coordinate of the two wedge constraints.
    std::map<std::pair<std::uint64_t, std::vector<int>>, int> row_index;
    auto row_of = [&](const std::pair<std::uint64_t, std::vector<int>>& key) {
        auto [it, fresh] = row_index.try_emplace(key, static_cast<int>(row_index.size()));
        (void)fresh;
        return it->second;
    };
    std::vector<std::map<int, Rational>> colvals(unknowns.size());
    auto accumulate = [&](const PolyForm& f, std::uint64_t tag, std::map<int, Rational>* dest) {
        for (const auto& [mask, poly] : f.components())
            for (const auto& [exps, c] : poly.terms()) {
                int r = row_of({mask | (tag << 32), exps});
                (*dest)[r] += c;
            }
    };
    // Two constraint families, kept apart by tagging the mask key.
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
        accumulate(wedge_invariant(unknowns[u].dform, tau), 1, &colvals[u]);
        accumulate(wedge_invariant(unknowns[u].dform, dtau), 2, &colvals[u]);
    }
    std::map<int, Rational> rhs_map;
    accumulate(wedge_invariant(dal, tau), 1, &rhs_map);
    accumulate(wedge_invariant(dal, dtau), 2, &rhs_map);
    int nrows = static_cast<int>(row_index.size());
    RMatrix A(nrows, static_cast<int>(unknowns.size()));
    std::vector<Rational> b(nrows, Rational(0));
    for (std::size_t u = 0; u < unknowns.size(); ++u)
        for (const auto& [r, c] : colvals[u]) A.at(r, static_cast<int>(u)) = c;
    for (const auto& [r, c] : rhs_map) b[r] = -c;
    auto sol = A.solve(b);
    if (!sol) throw std::runtime_error("no middle-degree lift exists");
    // The lifted value must not depend on the choice: every homogeneous
    // solution must have vanishing differential.
    for (const auto& k : A.kernel_basis()) {
        PolyForm dk(g.n());
        for (std::size_t u = 0; u < unknowns.size(); ++u) {
            PolyForm t = unknowns[u].dform;
            t *= k[u];
            dk += t;
        }
        if (!dk.is_zero()) throw std::runtime_error("middle-degree lift is not unique");
    }
    PolyForm result = dal;
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
        PolyForm t = unknowns[u].dform;
        t *= (*sol)[u];
        result += t;
    }
    return result;
}

}  // namespace rumincalc::testsupport
