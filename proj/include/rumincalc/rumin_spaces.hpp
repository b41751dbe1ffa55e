#pragma once

#include <memory>

#include "invariant_forms.hpp"

namespace rumincalc {

// Everything the calculus needs about one exterior degree, precomputed once:
// the ordered monomial basis, the invariant differential as a matrix, its
// exact pseudo-inverse, and the orthogonal projector onto the harmonic space
// E0^k = ker d0 \cap ker d0* (whose dimension is the Lie-algebra cohomology).
struct DegreeData {
    std::vector<std::uint64_t> masks;
    std::map<std::uint64_t, int> index;
    std::map<long long, std::vector<int>> weight_cols;  // weight -> basis positions
    RMatrix d0;                                         // degree k -> k+1
    RMatrix d0_pinv;                                    // exact Moore-Penrose inverse
    RMatrix pi_e0;                                      // orthogonal projector onto E0^k
    std::map<long long, std::vector<std::vector<Rational>>> e0_by_weight;
    long long e0_dim = 0;
};

class CalcContext {
  public:
    explicit CalcContext(StratifiedLieAlgebra g) : g_(std::move(g)) {
        int n = g_.n();
        deg_.resize(n + 1);
        for (int k = 0; k <= n; ++k) {
            DegreeData& d = deg_[k];
            d.masks = degree_masks(n, k);
            for (std::size_t i = 0; i < d.masks.size(); ++i) {
                d.index[d.masks[i]] = static_cast<int>(i);
                d.weight_cols[mask_weight(g_, d.masks[i])].push_back(static_cast<int>(i));
            }
            d.d0 = d0_matrix(g_, k);
            d.d0_pinv = d.d0.pinv();
        }
        for (int k = 0; k <= n; ++k) build_e0(k);
        fields_ = left_invariant_fields(g_);
    }

    const StratifiedLieAlgebra& group() const { return g_; }
    int n() const { return g_.n(); }
    const DegreeData& degree(int k) const { return deg_.at(k); }
    const std::vector<Derivation>& fields() const { return fields_; }

    InvariantForm to_form(int k, const std::vector<Rational>& coeffs) const {
        const DegreeData& d = deg_.at(k);
        InvariantForm f(g_.n());
        for (std::size_t i = 0; i < d.masks.size(); ++i) f.add_term(d.masks[i], coeffs[i]);
        return f;
    }

    std::vector<Rational> to_coeffs(int k, const InvariantForm& f) const {
        const DegreeData& d = deg_.at(k);
        std::vector<Rational> v(d.masks.size(), Rational(0));
        for (const auto& [m, c] : f.components()) v[d.index.at(m)] = c;
        return v;
    }

    // Distinct weights carried by E0^k, ascending.
    std::vector<long long> weights(int k) const {
        std::vector<long long> w;
        for (const auto& [weight, basis] : deg_.at(k).e0_by_weight) w.push_back(weight);
        return w;
    }

    std::map<int, std::vector<long long>> weight_table() const {
        std::map<int, std::vector<long long>> t;
        for (int k = 0; k <= g_.n(); ++k) t[k] = weights(k);
        return t;
    }

    // Orthogonal basis of the weight-w piece of E0^k, as forms.
    std::vector<InvariantForm> rumin_basis(int k, long long w) const {
        std::vector<InvariantForm> out;
        auto it = deg_.at(k).e0_by_weight.find(w);
        if (it == deg_.at(k).e0_by_weight.end()) return out;
        for (const auto& v : it->second) out.push_back(to_form(k, v));
        return out;
    }

    // Basis of all of E0^k, grouped by ascending weight.
    std::vector<InvariantForm> rumin_basis(int k) const {
        std::vector<InvariantForm> out;
        for (const auto& [w, basis] : deg_.at(k).e0_by_weight)
            for (const auto& v : basis) out.push_back(to_form(k, v));
        return out;
    }

    long long rumin_dim(int k) const { return deg_.at(k).e0_dim; }

  private:
    void build_e0(int k) {
        DegreeData& d = deg_[k];
        int dim = static_cast<int>(d.masks.size());
        // pi_E0 = I - A_{k-1} A_{k-1}^+ - A_k^+ A_k projects orthogonally onto
        // ker d0 \cap ker d0^T; the two subtracted projectors are orthogonal to
        // each other because d0 d0 = 0.
        RMatrix pi = RMatrix::identity(dim);
        if (k > 0 && deg_[k - 1].d0.rows() > 0) {
            const RMatrix& A = deg_[k - 1].d0;
            pi = pi - A * deg_[k - 1].d0_pinv;
        }
        if (d.d0.rows() > 0) pi = pi - d.d0_pinv * d.d0;
        d.pi_e0 = pi;
        // Weight-by-weight kernel of (d0, d0^T): d0 preserves weight, so the
        // blocks are independent.
        RMatrix up = d.d0;                            // Lambda^k -> Lambda^{k+1}
        RMatrix down = (k > 0) ? deg_[k - 1].d0.transpose() : RMatrix(0, dim);  // -> Lambda^{k-1}
        for (const auto& [w, cols] : d.weight_cols) {
            RMatrix block(up.rows() + down.rows(), static_cast<int>(cols.size()));
            for (std::size_t c = 0; c < cols.size(); ++c) {
                for (int r = 0; r < up.rows(); ++r) block.at(r, static_cast<int>(c)) = up.at(r, cols[c]);
                for (int r = 0; r < down.rows(); ++r)
                    block.at(up.rows() + r, static_cast<int>(c)) = down.at(r, cols[c]);
            }
            auto ker = block.kernel_basis();
            if (ker.empty()) continue;
            ker = orthogonalize(ker);
            std::vector<std::vector<Rational>> full;
            for (const auto& v : ker) {
                std::vector<Rational> x(dim, Rational(0));
                for (std::size_t c = 0; c < cols.size(); ++c) x[cols[c]] = v[c];
                full.push_back(std::move(x));
            }
            d.e0_dim += static_cast<long long>(full.size());
            d.e0_by_weight[w] = std::move(full);
        }
    }

    StratifiedLieAlgebra g_;
    std::vector<DegreeData> deg_;
    std::vector<Derivation> fields_;
};

// --- Heisenberg-type contact structure -------------------------------------

// The vertical coframe element of a Heisenberg-type group (the center is
// one-dimensional, so this is the last coframe element).
inline InvariantForm heisenberg_tau(const StratifiedLieAlgebra& g) {
    if (!g.is_heisenberg_type()) throw NotHeisenberg();
    return InvariantForm::term(g.n(), 1ull << (g.n() - 1), Rational(1));
}

// Basis (as coefficient vectors over degree_masks(n, h)) of the ideal
// I^h = tau ^ Lambda^{h-1} + dtau ^ Lambda^{h-2}.
inline std::vector<std::vector<Rational>> heisenberg_ideal_basis(const CalcContext& ctx, int h) {
    const auto& g = ctx.group();
    if (!g.is_heisenberg_type()) throw NotHeisenberg();
    int n = g.n();
    InvariantForm tau = heisenberg_tau(g);
    InvariantForm dtau = d0(g, tau);
    std::vector<std::vector<Rational>> spanning;
    if (h >= 1)
        for (auto m : degree_masks(n, h - 1))
            spanning.push_back(ctx.to_coeffs(h, wedge(tau, InvariantForm::term(n, m, Rational(1)))));
    if (h >= 2)
        for (auto m : degree_masks(n, h - 2))
            spanning.push_back(ctx.to_coeffs(h, wedge(dtau, InvariantForm::term(n, m, Rational(1)))));
    // Reduce the spanning set to an independent basis.
    if (spanning.empty()) return spanning;
    RMatrix m(static_cast<int>(spanning.size()), static_cast<int>(spanning[0].size()));
    for (std::size_t r = 0; r < spanning.size(); ++r)
        for (std::size_t c = 0; c < spanning[r].size(); ++c) m.at(static_cast<int>(r), static_cast<int>(c)) = spanning[r][c];
    m.rref();
    std::vector<std::vector<Rational>> basis;
    for (int r = 0; r < m.rows(); ++r) {
        std::vector<Rational> row(m.cols());
        bool nonzero = false;
        for (int c = 0; c < m.cols(); ++c) {
            row[c] = m.at(r, c);
            if (row[c] != 0) nonzero = true;
        }
        if (nonzero) basis.push_back(std::move(row));
    }
    return basis;
}

// Basis of J^h = {beta : beta ^ tau = 0 and beta ^ dtau = 0}.
inline std::vector<std::vector<Rational>> heisenberg_jspace_basis(const CalcContext& ctx, int h) {
    const auto& g = ctx.group();
    if (!g.is_heisenberg_type()) throw NotHeisenberg();
    int n = g.n();
    InvariantForm tau = heisenberg_tau(g);
    InvariantForm dtau = d0(g, tau);
    auto cols = degree_masks(n, h);
    auto rows1 = degree_masks(n, h + 1);
    auto rows2 = degree_masks(n, h + 2);
    std::map<std::uint64_t, int> idx1, idx2;
    for (std::size_t i = 0; i < rows1.size(); ++i) idx1[rows1[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < rows2.size(); ++i) idx2[rows2[i]] = static_cast<int>(i);
    RMatrix m(static_cast<int>(rows1.size() + rows2.size()), static_cast<int>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        InvariantForm b = InvariantForm::term(n, cols[c], Rational(1));
        InvariantForm bt = wedge(b, tau);
        for (const auto& [mm, v] : bt.components()) m.at(idx1.at(mm), static_cast<int>(c)) = v;
        InvariantForm bd = wedge(b, dtau);
        for (const auto& [mm, v] : bd.components())
            m.at(static_cast<int>(rows1.size()) + idx2.at(mm), static_cast<int>(c)) = v;
    }
    return m.kernel_basis();
}

// True if v lies in the span of the given vectors (all over the same basis).
inline bool span_contains(const std::vector<std::vector<Rational>>& span, const std::vector<Rational>& v) {
    if (span.empty()) {
        for (const auto& x : v)
            if (x != 0) return false;
        return true;
    }
    RMatrix m(static_cast<int>(span[0].size()), static_cast<int>(span.size()));
    for (std::size_t c = 0; c < span.size(); ++c)
        for (std::size_t r = 0; r < span[c].size(); ++r) m.at(static_cast<int>(r), static_cast<int>(c)) = span[c][r];
    return m.solve(v).has_value();
}

}  // namespace rumincalc
