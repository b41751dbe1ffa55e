#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <tuple>
#include <utility>
#include <vector>

#include "operators.hpp"
#include "rumin_spaces.hpp"

namespace rumincalc {

// ---------------------------------------------------------------------------
// Homogeneous gauge. With N = lcm(1..step) the polynomial
//   P(x) = sum_s ( |x^{(s)}|^2 )^{N/s}
// is dilation-homogeneous of degree 2N, so r(x) = P(x)^{1/(2N)} satisfies
// r(delta_lambda x) = lambda r(x). On an abelian group N = 1 and r is the
// Euclidean norm.
// ---------------------------------------------------------------------------

inline long long gauge_exponent(const StratifiedLieAlgebra& g) {
    long long N = 1;
    for (int s = 1; s <= g.step(); ++s) N = std::lcm(N, static_cast<long long>(s));
    return N;
}

inline Polynomial gauge_polynomial(const StratifiedLieAlgebra& g) {
    int n = g.n();
    long long N = gauge_exponent(g);
    Polynomial P(n);
    for (int s = 1; s <= g.step(); ++s) {
        Polynomial sq(n);
        for (int i = 0; i < n; ++i) {
            if (g.layer_of(i) != s) continue;
            Polynomial v = Polynomial::variable(n, i);
            sq += v * v;
        }
        Polynomial pw = Polynomial::constant(n, 1);
        for (long long e = 0; e < N / s; ++e) pw = pw * sq;
        P += pw;
    }
    return P;
}

// Integer power by squaring; e may be negative.
inline double ipow(double b, long long e) {
    if (e < 0) return 1.0 / ipow(b, -e);
    double r = 1.0;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// Fast numeric evaluation of P and r straight from the layer norms, without
// expanding the polynomial.
struct GaugeEvaluator {
    std::vector<std::vector<int>> layer_coords;  // [s-1] -> coordinate indices of layer s
    std::vector<long long> layer_pow;            // [s-1] -> N / s
    long long N = 1;

    explicit GaugeEvaluator(const StratifiedLieAlgebra& g)
        : layer_coords(g.step()), layer_pow(g.step()), N(gauge_exponent(g)) {
        for (int i = 0; i < g.n(); ++i) layer_coords[g.layer_of(i) - 1].push_back(i);
        for (int s = 1; s <= g.step(); ++s) layer_pow[s - 1] = N / s;
    }

    double P(const std::vector<double>& x) const {
        double acc = 0.0;
        for (std::size_t s = 0; s < layer_coords.size(); ++s) {
            double q = 0.0;
            for (int i : layer_coords[s]) q += x[i] * x[i];
            acc += ipow(q, layer_pow[s]);
        }
        return acc;
    }

    double r(const std::vector<double>& x) const { return std::pow(P(x), 1.0 / (2.0 * static_cast<double>(N))); }
};

inline double gauge_eval(const StratifiedLieAlgebra& g, const std::vector<double>& x) {
    return GaugeEvaluator(g).r(x);
}

// Log-of-gauge cutoff: 1 inside B(R), 0 outside B(lambda R), and
// log(lambda R / r)/log(lambda) across the shell, so the transition spends
// equal decrement per multiplicative step in r.
inline double cutoff_eval(const StratifiedLieAlgebra& g, double R, double lambda, const std::vector<double>& x) {
    if (!(R > 0.0)) throw UsageError("cutoff radius must be positive");
    if (!(lambda > 1.0)) throw UsageError("cutoff ratio must exceed 1");
    double r = gauge_eval(g, x);
    if (r <= R) return 1.0;
    if (r >= lambda * R) return 0.0;
    return std::log(lambda * R / r) / std::log(lambda);
}

// ---------------------------------------------------------------------------
// Coefficient algebra for the numeric harness. A coefficient is a finite sum
// of terms
//   poly(x) * S^q * (1-S)_+^u * (1+S)^v * exp(-w S),    S = P(x),
// which is closed under left-invariant vector fields: differentiating the
// S-dependent factors multiplies by the polynomial X(S) and shifts one
// exponent. That keeps cutoff derivatives and profile-weighted forms exact
// down to the final double evaluation.
// ---------------------------------------------------------------------------

struct GaugeTerm {
    Rational s_pow;              // S^{s_pow}
    int cut_pow = 0;             // (1-S)_+^{cut_pow}, cut_pow >= 0
    bool cut_support = false;    // restrict to {S < 1} even when cut_pow == 0
    Rational decay_pow;          // (1+S)^{decay_pow}
    Rational gauss_rate;         // exp(-gauss_rate * S)
    Polynomial poly;

    using Key = std::tuple<Rational, int, bool, Rational, Rational>;
    Key key() const { return {s_pow, cut_pow, cut_support, decay_pow, gauss_rate}; }

    bool operator==(const GaugeTerm& o) const { return key() == o.key() && poly == o.poly; }
};

class GaugeCoefficient {
  public:
    GaugeCoefficient() = default;

    GaugeCoefficient(std::shared_ptr<const Polynomial> S, std::vector<GaugeTerm> terms)
        : S_(std::move(S)), terms_(std::move(terms)) {
        normalize();
    }

    static GaugeCoefficient from_poly(std::shared_ptr<const Polynomial> S, Polynomial p) {
        GaugeTerm t;
        t.poly = std::move(p);
        return GaugeCoefficient(std::move(S), {std::move(t)});
    }

    const std::shared_ptr<const Polynomial>& gauge() const { return S_; }
    const std::vector<GaugeTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    GaugeCoefficient& operator+=(const GaugeCoefficient& o) {
        adopt_gauge(o);
        for (const GaugeTerm& t : o.terms_) terms_.push_back(t);
        normalize();
        return *this;
    }
    GaugeCoefficient operator+(const GaugeCoefficient& o) const {
        GaugeCoefficient r(*this);
        r += o;
        return r;
    }
    GaugeCoefficient operator-() const {
        GaugeCoefficient r(*this);
        for (GaugeTerm& t : r.terms_) t.poly = -t.poly;
        return r;
    }
    GaugeCoefficient& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (GaugeTerm& t : terms_) t.poly *= s;
        return *this;
    }
    friend GaugeCoefficient operator*(const GaugeCoefficient& a, const GaugeCoefficient& b) {
        if (a.terms_.empty() || b.terms_.empty()) return {};
        GaugeCoefficient r;
        r.S_ = a.S_ ? a.S_ : b.S_;
        a.check_same_gauge(b);
        for (const GaugeTerm& ta : a.terms_)
            for (const GaugeTerm& tb : b.terms_) {
                GaugeTerm t;
                t.s_pow = ta.s_pow + tb.s_pow;
                t.cut_pow = ta.cut_pow + tb.cut_pow;
                t.cut_support = ta.cut_support || tb.cut_support;
                t.decay_pow = ta.decay_pow + tb.decay_pow;
                t.gauss_rate = ta.gauss_rate + tb.gauss_rate;
                t.poly = ta.poly * tb.poly;
                r.terms_.push_back(std::move(t));
            }
        r.normalize();
        return r;
    }

    bool operator==(const GaugeCoefficient& o) const { return terms_ == o.terms_; }
    bool operator!=(const GaugeCoefficient& o) const { return !(*this == o); }

    // Numeric value at the point x, given S = P(x).
    double eval(const std::vector<double>& x, double S) const {
        double acc = 0.0;
        for (const GaugeTerm& t : terms_) {
            if ((t.cut_pow > 0 || t.cut_support) && S >= 1.0) continue;
            double v = t.poly.eval<double>(x);
            if (v == 0.0) continue;
            if (t.s_pow != 0) v *= std::pow(S, to_double(t.s_pow));
            if (t.cut_pow > 0) v *= ipow(1.0 - S, t.cut_pow);
            if (t.decay_pow != 0) v *= std::pow(1.0 + S, to_double(t.decay_pow));
            if (t.gauss_rate != 0) v *= std::exp(-to_double(t.gauss_rate) * S);
            acc += v;
        }
        return acc;
    }

  private:
    friend GaugeCoefficient field_apply(const Derivation& X, const GaugeCoefficient& c);

    void adopt_gauge(const GaugeCoefficient& o) {
        check_same_gauge(o);
        if (!S_) S_ = o.S_;
    }

    void check_same_gauge(const GaugeCoefficient& o) const {
        if (S_ && o.S_ && S_ != o.S_ && !(*S_ == *o.S_))
            throw RuminError("cannot combine coefficients over different gauges");
    }

    void normalize() {
        std::map<GaugeTerm::Key, Polynomial> acc;
        for (GaugeTerm& t : terms_) {
            if (t.poly.is_zero()) continue;
            auto [it, inserted] = acc.try_emplace(t.key(), t.poly);
            if (!inserted) it->second += t.poly;
        }
        terms_.clear();
        for (auto& [key, poly] : acc) {
            if (poly.is_zero()) continue;
            GaugeTerm t;
            std::tie(t.s_pow, t.cut_pow, t.cut_support, t.decay_pow, t.gauss_rate) = key;
            t.poly = std::move(poly);
            terms_.push_back(std::move(t));
        }
    }

    std::shared_ptr<const Polynomial> S_;
    std::vector<GaugeTerm> terms_;
};

inline bool coeff_is_zero(const GaugeCoefficient& c) { return c.is_zero(); }

// Product rule through every S-dependent factor. The derivative of
// (1-S)_+^u for u >= 1 is -u (1-S)_+^{u-1} X(S) in the almost-everywhere
// sense; at u = 1 the surviving indicator {S < 1} is kept explicitly.
inline GaugeCoefficient field_apply(const Derivation& X, const GaugeCoefficient& c) {
    if (c.terms_.empty()) return {};
    const Polynomial& S = *c.S_;
    Polynomial XS = X.apply(S);
    std::vector<GaugeTerm> out;
    for (const GaugeTerm& t : c.terms_) {
        Polynomial dp = X.apply(t.poly);
        if (!dp.is_zero()) {
            GaugeTerm r = t;
            r.poly = std::move(dp);
            out.push_back(std::move(r));
        }
        if (XS.is_zero()) continue;
        Polynomial chain = t.poly * XS;
        if (chain.is_zero()) continue;
        if (t.s_pow != 0) {
            GaugeTerm r = t;
            r.s_pow = t.s_pow - 1;
            r.poly = chain;
            r.poly *= t.s_pow;
            out.push_back(std::move(r));
        }
        if (t.cut_pow > 0) {
            GaugeTerm r = t;
            r.cut_pow = t.cut_pow - 1;
            r.cut_support = (r.cut_pow == 0) ? true : t.cut_support;
            r.poly = chain;
            r.poly *= Rational(-t.cut_pow);
            out.push_back(std::move(r));
        }
        if (t.decay_pow != 0) {
            GaugeTerm r = t;
            r.decay_pow = t.decay_pow - 1;
            r.poly = chain;
            r.poly *= t.decay_pow;
            out.push_back(std::move(r));
        }
        if (t.gauss_rate != 0) {
            GaugeTerm r = t;
            r.poly = chain;
            r.poly *= -t.gauss_rate;
            out.push_back(std::move(r));
        }
    }
    return GaugeCoefficient(c.S_, std::move(out));
}

using GaugeForm = Form<GaugeCoefficient>;

inline std::shared_ptr<const Polynomial> make_gauge(const StratifiedLieAlgebra& g) {
    return std::make_shared<Polynomial>(gauge_polynomial(g));
}

// ---------------------------------------------------------------------------
// Standard profiles.
// ---------------------------------------------------------------------------

// Compactly supported bump (1 - S)_+^power; support is the unit gauge ball,
// and power = 4 keeps enough smoothness for the second-order operators.
inline GaugeCoefficient bump_coefficient(const std::shared_ptr<const Polynomial>& S, int power = 4) {
    if (power < 1) throw UsageError("bump power must be at least 1");
    GaugeTerm t;
    t.cut_pow = power;
    t.poly = Polynomial::constant(S->nvars(), 1);
    return GaugeCoefficient(S, {std::move(t)});
}

// (1 + S)^{-(2(Q+h)-1)/(4N)}: multiplied by a coefficient of homogeneity h
// this decays like r^{-(Q - 1/2)}, which just fails to be integrable while
// its first intrinsic derivative is integrable.
inline GaugeCoefficient slow_decay_coefficient(const StratifiedLieAlgebra& g,
                                               const std::shared_ptr<const Polynomial>& S,
                                               long long poly_homogeneity = 0) {
    long long N = gauge_exponent(g);
    GaugeTerm t;
    t.decay_pow = Rational(-(2 * (g.Q() + poly_homogeneity) - 1)) / Rational(4 * N);
    t.poly = Polynomial::constant(S->nvars(), 1);
    return GaugeCoefficient(S, {std::move(t)});
}

// exp(-rate S).
inline GaugeCoefficient gaussian_coefficient(const std::shared_ptr<const Polynomial>& S, const Rational& rate = 1) {
    if (!(rate > 0)) throw UsageError("gaussian rate must be positive");
    GaugeTerm t;
    t.gauss_rate = rate;
    t.poly = Polynomial::constant(S->nvars(), 1);
    return GaugeCoefficient(S, {std::move(t)});
}

// Multiplies every coefficient of a polynomial form by the profile.
inline GaugeForm attach_profile(const GaugeCoefficient& profile, const PolyForm& f) {
    GaugeForm r(f.n());
    for (const auto& [mask, p] : f.components())
        r.add_term(mask, profile * GaugeCoefficient::from_poly(profile.gauge(), p));
    return r;
}

inline GaugeForm promote_form(const std::shared_ptr<const Polynomial>& S, const PolyForm& f) {
    GaugeForm r(f.n());
    for (const auto& [mask, p] : f.components()) r.add_term(mask, GaugeCoefficient::from_poly(S, p));
    return r;
}

inline GaugeForm promote_form(const std::shared_ptr<const Polynomial>& S, const InvariantForm& f) {
    GaugeForm r(f.n());
    for (const auto& [mask, c] : f.components())
        r.add_term(mask, GaugeCoefficient::from_poly(S, Polynomial::constant(f.n(), c)));
    return r;
}

// ---------------------------------------------------------------------------
// Compiled (double-coefficient) evaluators for Monte Carlo inner loops.
// ---------------------------------------------------------------------------

struct CompiledPoly {
    struct Term {
        double c;
        std::vector<std::pair<int, int>> pows;  // (variable, exponent)
    };
    std::vector<Term> terms;

    static CompiledPoly compile(const Polynomial& p) {
        CompiledPoly out;
        for (const auto& [mono, coef] : p.terms()) {
            Term t;
            t.c = to_double(coef);
            for (std::size_t i = 0; i < mono.size(); ++i)
                if (mono[i] > 0) t.pows.emplace_back(static_cast<int>(i), mono[i]);
            out.terms.push_back(std::move(t));
        }
        return out;
    }

    double eval(const std::vector<double>& x) const {
        double acc = 0.0;
        for (const Term& t : terms) {
            double v = t.c;
            for (const auto& [i, e] : t.pows) v *= ipow(x[i], e);
            acc += v;
        }
        return acc;
    }
};

struct CompiledGaugeCoefficient {
    struct Term {
        CompiledPoly poly;
        bool s_int = true;
        long long s_ipow = 0;
        double s_pow = 0.0;
        int cut_pow = 0;
        bool cut_support = false;
        double decay_pow = 0.0;
        double gauss_rate = 0.0;
    };
    std::vector<Term> terms;

    static CompiledGaugeCoefficient compile(const GaugeCoefficient& c) {
        CompiledGaugeCoefficient out;
        for (const GaugeTerm& t : c.terms()) {
            Term r;
            r.poly = CompiledPoly::compile(t.poly);
            r.s_pow = to_double(t.s_pow);
            r.s_int = (denominator_of(t.s_pow) == 1);
            if (r.s_int) r.s_ipow = numerator_of(t.s_pow).convert_to<long long>();
            r.cut_pow = t.cut_pow;
            r.cut_support = t.cut_support;
            r.decay_pow = to_double(t.decay_pow);
            r.gauss_rate = to_double(t.gauss_rate);
            out.terms.push_back(std::move(r));
        }
        return out;
    }

    double eval(const std::vector<double>& x, double S) const {
        double acc = 0.0;
        for (const Term& t : terms) {
            if ((t.cut_pow > 0 || t.cut_support) && S >= 1.0) continue;
            double v = t.poly.eval(x);
            if (v == 0.0) continue;
            if (t.s_int) {
                if (t.s_ipow != 0) v *= ipow(S, t.s_ipow);
            } else {
                v *= std::pow(S, t.s_pow);
            }
            if (t.cut_pow > 0) v *= ipow(1.0 - S, t.cut_pow);
            if (t.decay_pow != 0.0) v *= std::pow(1.0 + S, t.decay_pow);
            if (t.gauss_rate != 0.0) v *= std::exp(-t.gauss_rate * S);
            acc += v;
        }
        return acc;
    }
};

// ---------------------------------------------------------------------------
// Exact horizontal derivatives of the cutoff. On the shell R < r < lambda R
// the cutoff is affine in log S, so m successive first-layer fields give a
// sum of poly * S^{-j} terms carrying a single overall 1/log(lambda); the
// symbolic part depends on neither R nor lambda.
// ---------------------------------------------------------------------------

struct CutoffDerivatives {
    int order = 0;
    std::vector<int> horizontal;              // first-layer coordinate indices
    std::vector<GaugeCoefficient> component;  // horizontal.size()^order entries, shell part
                                              // times log(lambda); index digits run from the
                                              // outermost derivative to the innermost
};

inline CutoffDerivatives cutoff_derivatives(const CalcContext& ctx, int m) {
    if (m < 1) throw UsageError("derivative order must be at least 1");
    const auto& g = ctx.group();
    CutoffDerivatives out;
    out.order = m;
    for (int i = 0; i < g.n(); ++i)
        if (g.layer_of(i) == 1) out.horizontal.push_back(i);

    auto S = make_gauge(g);
    long long N = gauge_exponent(g);

    // W xi = -(1/(2N log lambda)) * W(S)/S on the shell.
    std::vector<GaugeCoefficient> level;
    for (int i : out.horizontal) {
        Polynomial XS = ctx.fields()[i].apply(*S);
        XS *= Rational(-1) / Rational(2 * N);
        GaugeTerm t;
        t.s_pow = -1;
        t.poly = std::move(XS);
        level.emplace_back(S, std::vector<GaugeTerm>{std::move(t)});
    }
    for (int o = 2; o <= m; ++o) {
        std::vector<GaugeCoefficient> next;
        next.reserve(out.horizontal.size() * level.size());
        for (int i : out.horizontal)
            for (const GaugeCoefficient& c : level) next.push_back(field_apply(ctx.fields()[i], c));
        level = std::move(next);
    }
    out.component = std::move(level);
    return out;
}

// Pointwise Frobenius norm |grad^m xi|(x) of the full horizontal derivative
// tensor for the cutoff with parameters (R, lambda): zero off the shell,
// sqrt(sum of squared components)/log(lambda) on it.
class CutoffDerivativeNorm {
  public:
    CutoffDerivativeNorm(const StratifiedLieAlgebra& g, const CutoffDerivatives& d, double R, double lambda)
        : gauge_(g), R_(R), lambda_(lambda), inv_log_(1.0 / std::log(lambda)) {
        if (!(R > 0.0)) throw UsageError("cutoff radius must be positive");
        if (!(lambda > 1.0)) throw UsageError("cutoff ratio must exceed 1");
        for (const GaugeCoefficient& c : d.component) comps_.push_back(CompiledGaugeCoefficient::compile(c));
        s_lo_ = std::pow(R, 2.0 * static_cast<double>(gauge_.N));
        s_hi_ = std::pow(lambda * R, 2.0 * static_cast<double>(gauge_.N));
    }

    double operator()(const std::vector<double>& x) const {
        double S = gauge_.P(x);
        if (S <= s_lo_ || S >= s_hi_) return 0.0;
        double acc = 0.0;
        for (const auto& c : comps_) {
            double v = c.eval(x, S);
            acc += v * v;
        }
        return std::sqrt(acc) * inv_log_;
    }

    double R() const { return R_; }
    double lambda() const { return lambda_; }

  private:
    GaugeEvaluator gauge_;
    std::vector<CompiledGaugeCoefficient> comps_;
    double R_, lambda_, inv_log_, s_lo_, s_hi_;
};

}  // namespace rumincalc
