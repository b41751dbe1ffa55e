#pragma once

#include <map>
#include <string>
#include <vector>

#include "rational.hpp"

namespace rumincalc {

// Multivariate polynomial over the rationals in a fixed number of variables.
// Terms are kept in a sorted map keyed by exponent vectors, zero coefficients
// are never stored, so equality is structural.
class Polynomial {
  public:
    using Monomial = std::vector<int>;

    Polynomial() : nvars_(0) {}
    explicit Polynomial(int nvars) : nvars_(nvars) {}

    static Polynomial constant(int nvars, const Rational& c) {
        Polynomial p(nvars);
        if (c != 0) p.terms_[Monomial(nvars, 0)] = c;
        return p;
    }
    static Polynomial variable(int nvars, int i) {  // 0-based variable index
        Polynomial p(nvars);
        Monomial m(nvars, 0);
        m[i] = 1;
        p.terms_[m] = 1;
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_[m] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(const Polynomial& a) {
        Polynomial r(a.nvars_);
        for (const auto& [m, c] : a.terms_) r.terms_[m] = -c;
        return r;
    }

    Polynomial& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial r(a.nvars_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m(ma);
                for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
                r.add_term(m, ca * cb);
            }
        return r;
    }

    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial derivative(int i) const {
        Polynomial r(nvars_);
        for (const auto& [m, c] : terms_) {
            if (m[i] == 0) continue;
            Monomial d(m);
            d[i] -= 1;
            r.add_term(d, c * m[i]);
        }
        return r;
    }

    template <class S>
    S eval(const std::vector<S>& x) const {
        S acc{};
        for (const auto& [m, c] : terms_) {
            S t = scalar_from_rational<S>(c);
            for (std::size_t i = 0; i < m.size(); ++i)
                for (int e = 0; e < m[i]; ++e) t = t * x[i];
            acc = acc + t;
        }
        return acc;
    }

    // Anisotropic degree sum_i alpha_i * layer(i) of one monomial.
    static long long homogeneity(const Monomial& m, const std::vector<int>& layer_of) {
        long long h = 0;
        for (std::size_t i = 0; i < m.size(); ++i) h += static_cast<long long>(m[i]) * layer_of[i];
        return h;
    }

    bool is_homogeneous(const std::vector<int>& layer_of, long long* degree_out = nullptr) const {
        bool first = true;
        long long deg = 0;
        for (const auto& [m, c] : terms_) {
            long long h = homogeneity(m, layer_of);
            if (first) {
                deg = h;
                first = false;
            } else if (h != deg) {
                return false;
            }
        }
        if (degree_out) *degree_out = first ? 0 : deg;
        return true;
    }

    std::map<long long, Polynomial> split_by_homogeneity(const std::vector<int>& layer_of) const {
        std::map<long long, Polynomial> parts;
        for (const auto& [m, c] : terms_) {
            long long h = homogeneity(m, layer_of);
            auto it = parts.find(h);
            if (it == parts.end()) it = parts.emplace(h, Polynomial(nvars_)).first;
            it->second.add_term(m, c);
        }
        return parts;
    }

    // Pullback under the dilation x_i -> lambda^{layer(i)} x_i: every monomial
    // picks up lambda^{homogeneity}.
    Polynomial dilate_pullback(const Rational& lambda, const std::vector<int>& layer_of) const {
        if (lambda <= 0) throw NonpositiveLambda();
        Polynomial r(nvars_);
        for (const auto& [m, c] : terms_) r.terms_[m] = c * rational_pow(lambda, homogeneity(m, layer_of));
        return r;
    }

    // Canonical text, e.g. "x1^2*x2 - 1/2". Variables are printed 1-based.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            Rational a = c < 0 ? Rational(-c) : c;
            if (first) {
                if (c < 0) out += "-";
                first = false;
            } else {
                out += c < 0 ? " - " : " + ";
            }
            std::string mono;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += "x" + std::to_string(i + 1);
                if (m[i] > 1) mono += "^" + std::to_string(m[i]);
            }
            if (mono.empty()) {
                out += format_rational(a);
            } else {
                if (a != 1) out += format_rational(a) + "*";
                out += mono;
            }
        }
        return out;
    }

  private:
    template <class S>
    static S scalar_from_rational(const Rational& c) {
        if constexpr (std::is_same_v<S, Rational>) {
            return c;
        } else {
            return static_cast<S>(to_double(c));
        }
    }

    int nvars_;
    std::map<Monomial, Rational> terms_;
};

// Exponent vectors of the given layer-weighted homogeneity, in lexicographic
// order (one variable per layer entry).
inline std::vector<std::vector<int>> monomials_of_homogeneity(const std::vector<int>& layers, long long h) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(layers.size(), 0);
    auto rec = [&](auto&& self, std::size_t i, long long rem) -> void {
        if (i == layers.size()) {
            if (rem == 0) out.push_back(cur);
            return;
        }
        for (int e = 0; e * static_cast<long long>(layers[i]) <= rem; ++e) {
            cur[i] = e;
            self(self, i + 1, rem - e * static_cast<long long>(layers[i]));
        }
        cur[i] = 0;
    };
    rec(rec, 0, h);
    return out;
}

}  // namespace rumincalc
