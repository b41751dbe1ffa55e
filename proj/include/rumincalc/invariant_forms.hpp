#pragma once

#include "forms.hpp"
#include "matrix.hpp"

namespace rumincalc {

// Differential of a single coframe element: d theta^k = -sum_{i<j} c^k_{ij}
// theta^i ^ theta^j. On left-invariant forms this is the whole differential;
// it preserves weight because the structure constants are graded.
inline InvariantForm coframe_d0(const StratifiedLieAlgebra& g, int k) {
    InvariantForm r(g.n());
    for (const auto& [ij, comps] : g.brackets()) {
        auto it = comps.find(k);
        if (it == comps.end()) continue;
        auto [i, j] = ij;
        r.add_term((1ull << i) | (1ull << j), -it->second);
    }
    return r;
}

// d of a coframe monomial theta^J, by the graded Leibniz rule.
inline InvariantForm d0_basis(const StratifiedLieAlgebra& g, std::uint64_t mask) {
    InvariantForm r(g.n());
    auto bits = mask_bits(mask);
    for (std::size_t t = 0; t < bits.size(); ++t) {
        std::uint64_t rest = mask & ~(1ull << bits[t]);
        InvariantForm piece = wedge(coframe_d0(g, bits[t]), InvariantForm::term(g.n(), rest, Rational(1)));
        if (t % 2 == 1) piece *= Rational(-1);
        r += piece;
    }
    return r;
}

// Algebraic part of the differential: acts on the coframe monomials only,
// leaving coefficients untouched. For constant coefficients this is d itself.
template <class C>
Form<C> d0(const StratifiedLieAlgebra& g, const Form<C>& a) {
    Form<C> r(a.n());
    for (const auto& [mask, c] : a.components()) {
        InvariantForm base = d0_basis(g, mask);
        for (const auto& [m2, q] : base.components()) {
            C t = c;
            t *= q;
            r.add_term(m2, t);
        }
    }
    return r;
}

// Hodge star for the inner product making the coframe orthonormal, with
// orientation theta^1 ^ ... ^ theta^n. Satisfies theta^J ^ star theta^J = vol.
template <class C>
Form<C> hodge_star(const StratifiedLieAlgebra& g, const Form<C>& a) {
    std::uint64_t full = (g.n() == 64) ? ~0ull : ((1ull << g.n()) - 1);
    Form<C> r(a.n());
    for (const auto& [mask, c] : a.components()) {
        std::uint64_t comp = full ^ mask;
        C t = c;
        if (wedge_sign(mask, comp) < 0) t = -t;
        r.add_term(comp, t);
    }
    return r;
}

// Matrix of d restricted to invariant k-forms, in the degree_masks bases
// (columns: degree k, rows: degree k+1).
inline RMatrix d0_matrix(const StratifiedLieAlgebra& g, int k) {
    auto cols = degree_masks(g.n(), k);
    auto rows = degree_masks(g.n(), k + 1);
    std::map<std::uint64_t, int> row_index;
    for (std::size_t r = 0; r < rows.size(); ++r) row_index[rows[r]] = static_cast<int>(r);
    RMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t cidx = 0; cidx < cols.size(); ++cidx) {
        InvariantForm img = d0_basis(g, cols[cidx]);
        for (const auto& [mask, val] : img.components()) m.at(row_index.at(mask), static_cast<int>(cidx)) = val;
    }
    return m;
}

// Lie-algebra cohomology dimensions, by rank-nullity on the invariant complex:
// b_k = dim Lambda^k - rank d|_k - rank d|_{k-1}.
inline std::vector<long long> cohomology_dims(const StratifiedLieAlgebra& g) {
    int n = g.n();
    std::vector<int> ranks(n + 1, 0);
    for (int k = 0; k < n; ++k) ranks[k] = d0_matrix(g, k).rank();
    std::vector<long long> b(n + 1);
    for (int k = 0; k <= n; ++k) {
        long long dim = static_cast<long long>(degree_masks(n, k).size());
        b[k] = dim - ranks[k] - (k > 0 ? ranks[k - 1] : 0);
    }
    return b;
}

}  // namespace rumincalc
