#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "polynomial.hpp"

namespace rumincalc {

using GroupPoint = std::vector<Rational>;
using RealPoint = std::vector<double>;

// Stratified (Carnot) Lie algebra in a graded basis: indices are grouped by
// layer, [g_i, g_j] <= g_{i+j}, and the first layer generates. Structure
// constants are stored for i < j only; the antisymmetric extension is implied.
class StratifiedLieAlgebra {
  public:
    using BracketTable = std::map<std::pair<int, int>, std::map<int, Rational>>;

    // Validates grading, Jacobi, and generation before returning; throws
    // GradingViolation / JacobiViolation / GenerationViolation (1-based indices).
    static StratifiedLieAlgebra create(std::string name, std::vector<int> layer_dims, BracketTable brackets) {
        StratifiedLieAlgebra g;
        g.name_ = std::move(name);
        g.layer_dims_ = std::move(layer_dims);
        g.brackets_ = std::move(brackets);
        if (g.layer_dims_.empty()) throw RuminError("algebra needs at least one layer");
        for (int d : g.layer_dims_)
            if (d <= 0) throw RuminError("layer dimensions must be positive");
        g.n_ = 0;
        for (std::size_t s = 0; s < g.layer_dims_.size(); ++s) {
            for (int i = 0; i < g.layer_dims_[s]; ++i) g.layer_of_.push_back(static_cast<int>(s) + 1);
            g.n_ += g.layer_dims_[s];
        }
        if (g.n_ > 64) throw RuminError("at most 64 basis elements are supported");
        g.Q_ = 0;
        for (int i = 0; i < g.n_; ++i) g.Q_ += g.layer_of_[i];
        g.check_grading();
        g.check_jacobi();
        g.check_generation();
        return g;
    }

    const std::string& name() const { return name_; }
    int n() const { return n_; }
    int step() const { return static_cast<int>(layer_dims_.size()); }
    const std::vector<int>& layer_dims() const { return layer_dims_; }
    int layer_of(int i) const { return layer_of_[i]; }  // 0-based index -> 1-based layer
    const std::vector<int>& layers() const { return layer_of_; }
    long long Q() const { return Q_; }
    const BracketTable& brackets() const { return brackets_; }

    // c^k_{ij} with the antisymmetric extension; all indices 0-based.
    Rational c(int i, int j, int k) const {
        if (i == j) return Rational(0);
        bool flip = i > j;
        if (flip) std::swap(i, j);
        auto it = brackets_.find({i, j});
        if (it == brackets_.end()) return Rational(0);
        auto jt = it->second.find(k);
        if (jt == it->second.end()) return Rational(0);
        return flip ? Rational(-jt->second) : jt->second;
    }

    // [u, v] extended bilinearly over any commutative scalar ring S.
    template <class S>
    std::vector<S> bracket(const std::vector<S>& u, const std::vector<S>& v) const {
        std::vector<S> w(n_, u.empty() ? S{} : S(u[0] - u[0]));
        for (const auto& [ij, comps] : brackets_) {
            auto [i, j] = ij;
            S cross = u[i] * v[j] - u[j] * v[i];
            for (const auto& [k, ck] : comps) w[k] = w[k] + scale<S>(cross, ck);
        }
        return w;
    }

    bool is_abelian() const { return brackets_.empty(); }

    // Heisenberg-type: two layers, one-dimensional center, and a nondegenerate
    // bracket form on the first layer. m is half the horizontal dimension.
    bool is_heisenberg_type(int* m_out = nullptr) const {
        if (step() != 2 || layer_dims_[1] != 1 || layer_dims_[0] % 2 != 0) return false;
        int h = layer_dims_[0];
        RMatrix omega(h, h);
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < h; ++j) omega.at(i, j) = c(i, j, h);
        if (omega.rank() != h) return false;
        if (m_out) *m_out = h / 2;
        return true;
    }

  private:
    template <class S>
    static S scale(const S& v, const Rational& c) {
        if constexpr (std::is_same_v<S, double>) {
            return v * to_double(c);
        } else {
            S r = v;
            r *= c;
            return r;
        }
    }

    void check_grading() const {
        for (const auto& [ij, comps] : brackets_) {
            auto [i, j] = ij;
            if (i < 0 || j >= n_ || i >= j) throw RuminError("bracket indices out of order");
            for (const auto& [k, ck] : comps) {
                if (k < 0 || k >= n_) throw RuminError("bracket target out of range");
                if (ck == 0) continue;
                if (layer_of_[k] != layer_of_[i] + layer_of_[j]) throw GradingViolation(i + 1, j + 1, k + 1);
            }
        }
    }

    void check_jacobi() const {
        std::vector<GroupPoint> e(n_, GroupPoint(n_, Rational(0)));
        for (int i = 0; i < n_; ++i) e[i][i] = 1;
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                for (int k = j + 1; k < n_; ++k) {
                    GroupPoint s = bracket(e[i], bracket(e[j], e[k]));
                    GroupPoint t = bracket(e[j], bracket(e[k], e[i]));
                    GroupPoint u = bracket(e[k], bracket(e[i], e[j]));
                    for (int l = 0; l < n_; ++l)
                        if (s[l] + t[l] + u[l] != 0) throw JacobiViolation(i + 1, j + 1, k + 1);
                }
    }

    void check_generation() const {
        // [g_1, g_t] must span g_{t+1} for every t < step.
        int layer1 = layer_dims_[0];
        for (int t = 1; t < step(); ++t) {
            int dim_prev = layer_dims_[t - 1];
            int dim_next = layer_dims_[t];
            int next_first = 0;
            for (int s = 0; s < t; ++s) next_first += layer_dims_[s];
            int prev_first = next_first - dim_prev;
            // Columns: pairs (a in layer 1, b in layer t); rows: layer t+1 coords.
            RMatrix m(dim_next, layer1 * dim_prev);
            int col = 0;
            for (int a = 0; a < layer1; ++a)
                for (int b = 0; b < dim_prev; ++b) {
                    for (int k = 0; k < dim_next; ++k) m.at(k, col) = c(a, prev_first + b, next_first + k);
                    ++col;
                }
            if (m.rank() != dim_next) throw GenerationViolation(t + 1);
        }
    }

    std::string name_;
    std::vector<int> layer_dims_;
    BracketTable brackets_;
    std::vector<int> layer_of_;
    int n_ = 0;
    long long Q_ = 0;
};

inline StratifiedLieAlgebra abelian_group(int n) {
    if (n < 1) throw RuminError("abelian rank must be >= 1");
    return StratifiedLieAlgebra::create("abelian(" + std::to_string(n) + ")", {n}, {});
}

// heisenberg(m): basis X_1..X_m, Y_1..Y_m, T with [X_i, Y_i] = T.
inline StratifiedLieAlgebra heisenberg_group(int m) {
    if (m < 1) throw RuminError("heisenberg parameter must be >= 1");
    StratifiedLieAlgebra::BracketTable b;
    for (int i = 0; i < m; ++i) b[{i, m + i}][2 * m] = 1;
    return StratifiedLieAlgebra::create("heisenberg(" + std::to_string(m) + ")", {2 * m, 1}, b);
}

// engel: layers (2,1,1) with [X1,X2] = X3, [X1,X3] = X4.
inline StratifiedLieAlgebra engel_group() {
    StratifiedLieAlgebra::BracketTable b;
    b[{0, 1}][2] = 1;
    b[{0, 2}][3] = 1;
    return StratifiedLieAlgebra::create("engel", {2, 1, 1}, b);
}

// Builtin reference of the form "abelian:n", "heisenberg:m", or "engel".
// Returns nothing if the family name is unknown (callers fall back to files).
inline std::optional<StratifiedLieAlgebra> builtin_group(const std::string& ref) {
    std::string family = ref;
    int param = -1;
    if (auto colon = ref.find(':'); colon != std::string::npos) {
        family = ref.substr(0, colon);
        try {
            param = std::stoi(ref.substr(colon + 1));
        } catch (...) {
            throw RuminError("malformed builtin parameter in '" + ref + "'");
        }
    }
    if (family == "abelian") {
        if (param < 0) throw RuminError("abelian needs a dimension, e.g. abelian:3");
        return abelian_group(param);
    }
    if (family == "heisenberg") {
        if (param < 0) throw RuminError("heisenberg needs a parameter, e.g. heisenberg:1");
        return heisenberg_group(param);
    }
    if (family == "engel") return engel_group();
    return std::nullopt;
}

// Structure-constant document:
//   name: <string>
//   layers: [d1, d2, ...]
//   bracket i j -> k : p/q     (one line per nonzero constant, i < j, 1-based)
// '#' starts a comment; blank lines are skipped.
inline StratifiedLieAlgebra parse_group(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::string name;
    std::vector<int> layer_dims;
    StratifiedLieAlgebra::BracketTable brackets;
    bool saw_name = false, saw_layers = false;
    auto trim = [](std::string s) {
        auto issp = [](unsigned char c) { return std::isspace(c); };
        while (!s.empty() && issp(s.front())) s.erase(s.begin());
        while (!s.empty() && issp(s.back())) s.pop_back();
        return s;
    };
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (!saw_name) {
            if (line.rfind("name:", 0) != 0) throw ParseError(lineno, "expected 'name: <string>' first");
            name = trim(line.substr(5));
            if (name.empty()) throw ParseError(lineno, "empty group name");
            saw_name = true;
            continue;
        }
        if (!saw_layers) {
            if (line.rfind("layers:", 0) != 0) throw ParseError(lineno, "expected 'layers: [d1, ...]'");
            std::string body = trim(line.substr(7));
            if (body.size() < 2 || body.front() != '[' || body.back() != ']')
                throw ParseError(lineno, "layers must be a bracketed list");
            std::string inner = body.substr(1, body.size() - 2);
            std::istringstream ls(inner);
            std::string item;
            while (std::getline(ls, item, ',')) {
                item = trim(item);
                if (item.empty() || !std::all_of(item.begin(), item.end(), [](unsigned char c) { return std::isdigit(c); }))
                    throw ParseError(lineno, "layer dimensions must be positive integers");
                layer_dims.push_back(std::stoi(item));
                if (layer_dims.back() <= 0) throw ParseError(lineno, "layer dimensions must be positive integers");
            }
            if (layer_dims.empty()) throw ParseError(lineno, "layers list is empty");
            saw_layers = true;
            continue;
        }
        std::istringstream ws(line);
        std::string kw, arrow, colon, rat;
        int i = 0, j = 0, k = 0;
        if (!(ws >> kw) || kw != "bracket") throw ParseError(lineno, "expected a 'bracket' line");
        if (!(ws >> i >> j >> arrow >> k >> colon >> rat) || arrow != "->" || colon != ":")
            throw ParseError(lineno, "expected 'bracket i j -> k : p/q'");
        std::string tail;
        if (ws >> tail) throw ParseError(lineno, "trailing tokens after bracket value");
        int n = 0;
        for (int d : layer_dims) n += d;
        if (i < 1 || j < 1 || k < 1 || i > n || j > n || k > n) throw ParseError(lineno, "bracket index out of range");
        if (i >= j) throw ParseError(lineno, "bracket indices must satisfy i < j");
        Rational value;
        try {
            value = parse_rational(rat);
        } catch (const FormParseError&) {
            throw ParseError(lineno, "malformed rational '" + rat + "'");
        }
        if (value == 0) throw ParseError(lineno, "bracket value must be nonzero");
        auto& slot = brackets[{i - 1, j - 1}];
        if (slot.count(k - 1)) throw ParseError(lineno, "duplicate bracket entry");
        slot[k - 1] = value;
    }
    if (!saw_name) throw ParseError(lineno, "missing 'name:' line");
    if (!saw_layers) throw ParseError(lineno, "missing 'layers:' line");
    return StratifiedLieAlgebra::create(name, layer_dims, brackets);
}

// delta_lambda: coordinate i scales by lambda^{layer(i)}.
template <class S>
std::vector<S> dilate(const StratifiedLieAlgebra& g, const S& lambda, const std::vector<S>& x) {
    if (!(lambda > S(0))) throw NonpositiveLambda();
    std::vector<S> y(x);
    for (int i = 0; i < g.n(); ++i) {
        S f = lambda;
        for (int e = 1; e < g.layer_of(i); ++e) f = f * lambda;
        y[i] = y[i] * f;
    }
    return y;
}

namespace detail {

inline Rational factorial(int n) {
    Rational f(1);
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Bernoulli numbers with the B_1 = +1/2 convention (generating function
// z/(1 - e^{-z})), computed from the standard recurrence.
inline Rational bernoulli_plus(int n) {
    std::vector<Rational> b;  // B^- convention
    b.push_back(Rational(1));
    for (int m = 1; m <= n; ++m) {
        Rational acc(0), binom(1);
        for (int j = 0; j < m; ++j) {
            // binom = C(m+1, j)
            acc += binom * b[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        b.push_back(-acc / Rational(m + 1));
    }
    return n == 1 ? Rational(-b[1]) : b[n];
}

template <class S>
void axpy(std::vector<S>& acc, const Rational& c, const std::vector<S>& v) {
    for (std::size_t i = 0; i < acc.size(); ++i) {
        if constexpr (std::is_same_v<S, double>) {
            acc[i] += to_double(c) * v[i];
        } else {
            S t = v[i];
            t *= c;
            acc[i] = acc[i] + t;
        }
    }
}

// Right-nested bracket of a word over {x, y}: [w_0, [w_1, [... w_last]]].
template <class S>
std::vector<S> nested_bracket(const StratifiedLieAlgebra& g, const std::vector<const std::vector<S>*>& word) {
    std::vector<S> acc = *word.back();
    for (int t = static_cast<int>(word.size()) - 2; t >= 0; --t) acc = g.bracket(*word[t], acc);
    return acc;
}

template <class S>
struct DynkinState {
    const StratifiedLieAlgebra& g;
    const std::vector<S>& x;
    const std::vector<S>& y;
    std::vector<const std::vector<S>*> word;
    Rational fact_denom = 1;  // product of r_i! s_i!
    std::vector<S> acc;
};

// Extends the current pair sequence by one pair (r, s) != (0, 0) and adds the
// completed terms. n_pairs counts pairs so far; total is the word length.
template <class S>
void dynkin_extend(DynkinState<S>& st, int n_pairs, int total) {
    int room = st.g.step() - total;
    for (int r = 0; r <= room; ++r) {
        for (int s = (r == 0 ? 1 : 0); r + s <= room; ++s) {
            for (int a = 0; a < r; ++a) st.word.push_back(&st.x);
            for (int b = 0; b < s; ++b) st.word.push_back(&st.y);
            Rational saved = st.fact_denom;
            st.fact_denom *= factorial(r) * factorial(s);
            int T = total + r + s;
            Rational coeff = Rational((n_pairs % 2 == 0) ? 1 : -1) /
                             (Rational(n_pairs + 1) * Rational(T) * st.fact_denom);
            axpy(st.acc, coeff, nested_bracket(st.g, st.word));
            if (T < st.g.step()) dynkin_extend(st, n_pairs + 1, T);
            st.fact_denom = saved;
            for (int t = 0; t < r + s; ++t) st.word.pop_back();
        }
    }
}

}  // namespace detail

// Group product in exponential coordinates of the first kind: the Dynkin form
// of the Baker-Campbell-Hausdorff series, truncated at the nilpotency step,
// where it is exact.
template <class S>
std::vector<S> bch_multiply(const StratifiedLieAlgebra& g, const std::vector<S>& x, const std::vector<S>& y) {
    detail::DynkinState<S> st{g, x, y, {}, Rational(1), std::vector<S>(g.n(), x.empty() ? S{} : S(x[0] - x[0]))};
    detail::dynkin_extend(st, 0, 0);
    return st.acc;
}

// Polynomial-coefficient vector field sum_k coeff[k] d/dx_k.
struct Derivation {
    std::vector<Polynomial> coeff;

    Polynomial apply(const Polynomial& f) const {
        Polynomial r(f.nvars());
        for (std::size_t k = 0; k < coeff.size(); ++k) {
            if (coeff[k].is_zero()) continue;
            Polynomial d = f.derivative(static_cast<int>(k));
            if (!d.is_zero()) r += coeff[k] * d;
        }
        return r;
    }

    Derivation commutator(const Derivation& o) const {
        Derivation r;
        r.coeff.resize(coeff.size());
        for (std::size_t k = 0; k < coeff.size(); ++k) r.coeff[k] = apply(o.coeff[k]) - o.apply(coeff[k]);
        return r;
    }
};

// Left-invariant fields X_i in exponential coordinates: X_i at p is the
// derivative of t -> p * exp(t e_i) at t = 0, which the differential of exp
// turns into X_i(p) = sum_m (B_m^+ / m!) ad_p^m(e_i). The series stops at the
// step, so coefficients are polynomials.
inline std::vector<Derivation> left_invariant_fields(const StratifiedLieAlgebra& g) {
    int n = g.n();
    std::vector<Polynomial> p(n);
    for (int i = 0; i < n; ++i) p[i] = Polynomial::variable(n, i);
    std::vector<Derivation> fields(n);
    for (int i = 0; i < n; ++i) {
        std::vector<Polynomial> v(n, Polynomial(n));
        v[i] = Polynomial::constant(n, 1);
        std::vector<Polynomial> acc(n, Polynomial(n));
        for (int m = 0; m < g.step(); ++m) {
            Rational c = detail::bernoulli_plus(m) / detail::factorial(m);
            if (c != 0)
                for (int k = 0; k < n; ++k) {
                    Polynomial t = v[k];
                    t *= c;
                    acc[k] += t;
                }
            v = g.bracket(p, v);
        }
        fields[i].coeff = std::move(acc);
    }
    return fields;
}

}  // namespace rumincalc
