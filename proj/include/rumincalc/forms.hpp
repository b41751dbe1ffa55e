#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "lie_algebra.hpp"

namespace rumincalc {

// Exterior forms are indexed by bitmasks over the dual coframe theta^1..theta^n
// (bit i set = factor theta^{i+1} present, factors in ascending index order).

inline int mask_degree(std::uint64_t m) { return std::popcount(m); }

inline std::vector<int> mask_bits(std::uint64_t m) {
    std::vector<int> bits;
    while (m) {
        bits.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return bits;
}

// Sign of theta^A wedge theta^B relative to the ascending product theta^{A|B};
// masks must be disjoint.
inline int wedge_sign(std::uint64_t a, std::uint64_t b) {
    int inv = 0;
    std::uint64_t bb = b;
    while (bb) {
        int j = std::countr_zero(bb);
        bb &= bb - 1;
        inv += std::popcount(a >> (j + 1));
    }
    return (inv % 2 == 0) ? 1 : -1;
}

// Weight of a coframe monomial: sum of the layers of its factors.
inline long long mask_weight(const StratifiedLieAlgebra& g, std::uint64_t m) {
    long long w = 0;
    for (int b : mask_bits(m)) w += g.layer_of(b);
    return w;
}

// All degree-k masks on n letters in increasing numeric order (Gosper's hack).
inline std::vector<std::uint64_t> degree_masks(int n, int k) {
    std::vector<std::uint64_t> out;
    if (k < 0 || k > n) return out;
    if (k == 0) {
        out.push_back(0);
        return out;
    }
    std::uint64_t v = (k == 64) ? ~0ull : ((1ull << k) - 1);
    std::uint64_t limit = (n == 64) ? ~0ull : ((1ull << n) - 1);
    while (true) {
        out.push_back(v);
        if (v == (limit & ~((k == n) ? 0ull : ((limit >> k))))) break;  // top combination reached
        std::uint64_t t = v | (v - 1);
        v = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
    }
    return out;
}

inline bool coeff_is_zero(const Rational& c) { return c == 0; }
inline bool coeff_is_zero(const Polynomial& p) { return p.is_zero(); }

// A differential form with coefficients in C (Rational for left-invariant
// forms, Polynomial for polynomial-coefficient forms, ...). Zero coefficients
// are never stored, so operator== is structural equality.
template <class C>
class Form {
  public:
    explicit Form(int n = 0) : n_(n) {}

    static Form term(int n, std::uint64_t mask, C c) {
        Form f(n);
        f.add_term(mask, std::move(c));
        return f;
    }

    int n() const { return n_; }
    const std::map<std::uint64_t, C>& components() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }

    void add_term(std::uint64_t mask, const C& c) {
        if (coeff_is_zero(c)) return;
        auto [it, inserted] = comps_.try_emplace(mask, c);
        if (!inserted) {
            it->second = it->second + c;
            if (coeff_is_zero(it->second)) comps_.erase(it);
        }
    }

    const C* find(std::uint64_t mask) const {
        auto it = comps_.find(mask);
        return it == comps_.end() ? nullptr : &it->second;
    }

    // All stored monomials share one exterior degree (true for the zero form).
    bool pure_degree(int* k = nullptr) const {
        int deg = -1;
        for (const auto& [m, c] : comps_) {
            int d = mask_degree(m);
            if (deg == -1)
                deg = d;
            else if (d != deg)
                return false;
        }
        if (k && deg >= 0) *k = deg;
        return true;
    }

    Form& operator+=(const Form& o) {
        for (const auto& [m, c] : o.comps_) add_term(m, c);
        return *this;
    }
    Form& operator-=(const Form& o) {
        for (const auto& [m, c] : o.comps_) add_term(m, -c);
        return *this;
    }
    Form operator+(const Form& o) const {
        Form r(*this);
        r += o;
        return r;
    }
    Form operator-(const Form& o) const {
        Form r(*this);
        r -= o;
        return r;
    }
    Form operator-() const {
        Form r(n_);
        for (const auto& [m, c] : comps_) r.comps_.emplace(m, -c);
        return r;
    }
    Form& operator*=(const Rational& s) {
        if (s == 0) {
            comps_.clear();
            return *this;
        }
        for (auto& [m, c] : comps_) c *= s;
        return *this;
    }

    bool operator==(const Form& o) const { return n_ == o.n_ && comps_ == o.comps_; }
    bool operator!=(const Form& o) const { return !(*this == o); }

  private:
    int n_;
    std::map<std::uint64_t, C> comps_;
};

template <class C>
Form<C> operator*(Form<C> f, const Rational& s) {
    f *= s;
    return f;
}

template <class C>
Form<C> wedge(const Form<C>& a, const Form<C>& b) {
    Form<C> r(a.n());
    for (const auto& [ma, ca] : a.components())
        for (const auto& [mb, cb] : b.components()) {
            if (ma & mb) continue;
            C prod = ca * cb;
            if (wedge_sign(ma, mb) < 0) prod = -prod;
            r.add_term(ma | mb, prod);
        }
    return r;
}

// Weight of a form all of whose monomials share one weight; nullopt if the
// weights are mixed or the form is zero.
template <class C>
std::optional<long long> pure_weight(const StratifiedLieAlgebra& g, const Form<C>& f) {
    std::optional<long long> w;
    for (const auto& [m, c] : f.components()) {
        long long mw = mask_weight(g, m);
        if (!w)
            w = mw;
        else if (*w != mw)
            return std::nullopt;
    }
    return w;
}

using InvariantForm = Form<Rational>;
using PolyForm = Form<Polynomial>;

}  // namespace rumincalc
