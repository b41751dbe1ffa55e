#pragma once

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "jsets.hpp"
#include "montecarlo.hpp"

namespace rumincalc {

// ---------------------------------------------------------------------------
// Report plumbing shared by all experiments. A report is a pure function of
// (configuration, seed): no clocks, no global state.
// ---------------------------------------------------------------------------

struct ExperimentPoint {
    double parameter = 0.0;  // the swept quantity (ratio lambda or radius R)
    double estimate = 0.0;
    double stderr_ = 0.0;
    std::map<std::string, double> extra;
};

struct LineFit {
    bool valid = false;
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};

struct ExperimentReport {
    int schema_version = 1;
    std::string operation;
    std::string group_ref;  // printable group reference, filled by the caller
    std::map<std::string, std::string> config;
    std::vector<ExperimentPoint> points;
    LineFit fit;
    std::map<std::string, double> derived;
    std::uint64_t seed = 0;
    std::uint64_t samples_per_point = 0;
};

// Least squares line through (x_i, y_i). The slope uncertainty is the larger
// of the value propagated from the per-point sigmas and the residual-based
// estimate, so an optimistic error model cannot shrink the reported width.
inline LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys,
                        const std::vector<double>& sigmas) {
    LineFit f;
    const std::size_t n = xs.size();
    if (n < 2 || ys.size() != n) return f;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) return f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double var_prop = 0.0;
    if (sigmas.size() == n)
        for (std::size_t i = 0; i < n; ++i) {
            const double c = (xs[i] - mx) / sxx;
            var_prop += c * c * sigmas[i] * sigmas[i];
        }
    double var_resid = 0.0;
    if (n > 2) {
        double rss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = ys[i] - f.intercept - f.slope * xs[i];
            rss += r * r;
        }
        var_resid = rss / static_cast<double>(n - 2) / sxx;
    }
    f.slope_stderr = std::sqrt(std::max(var_prop, var_resid));
    f.valid = true;
    return f;
}

namespace detail {

inline std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

inline std::string format_double_list(const std::vector<double>& vs) {
    std::string s;
    for (double v : vs) {
        if (!s.empty()) s += ",";
        s += format_double(v);
    }
    return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Cutoff norm experiment: how fast does ||grad^m xi||_{Q/m} decay as the
// transition band widens? The m-th derivative tensor scales like r^{-m} up
// to the overall 1/log(lambda), so the norm follows (log lambda)^{-1 + m/Q}
// and the log-log-log slope is -1 + m/Q.
// ---------------------------------------------------------------------------

inline ExperimentReport cutoff_norm_experiment(const CalcContext& ctx, int m,
                                               const std::vector<double>& lambdas, double R,
                                               std::uint64_t N, std::uint64_t seed) {
    const auto& g = ctx.group();
    if (m < 1) throw UsageError("derivative order must be at least 1");
    if (m >= g.Q())
        throw OrderTooHigh("derivative order " + std::to_string(m) +
                           " must stay below the homogeneous dimension " + std::to_string(g.Q()));
    if (!(R > 0.0)) throw UsageError("cutoff radius must be positive");
    if (lambdas.size() < 2) throw UsageError("need at least two ratios for a slope fit");
    for (double l : lambdas)
        if (!(l > 1.0)) throw UsageError("every cutoff ratio must exceed 1");

    const CutoffDerivatives tensor = cutoff_derivatives(ctx, m);
    const double p = static_cast<double>(g.Q()) / static_cast<double>(m);

    ExperimentReport rep;
    rep.operation = "cutoff-norm";
    rep.seed = seed;
    rep.samples_per_point = N;
    rep.config["m"] = std::to_string(m);
    rep.config["R"] = detail::format_double(R);
    rep.config["lambdas"] = detail::format_double_list(lambdas);
    rep.config["samples"] = std::to_string(N);

    std::vector<double> xs, ys, sig;
    for (std::size_t idx = 0; idx < lambdas.size(); ++idx) {
        const double lambda = lambdas[idx];
        CutoffDerivativeNorm norm(g, tensor, R, lambda);
        auto integrand = [&](const std::vector<double>& x) {
            const double v = norm(x);
            return v == 0.0 ? 0.0 : std::pow(v, p);
        };
        ShellEstimate est = shell_integral(g, integrand, R, lambda * R, N, derive_seed(seed, 1, idx));

        ExperimentPoint pt;
        pt.parameter = lambda;
        pt.extra["integral"] = est.value;
        pt.extra["integral_stderr"] = est.stderr_;
        if (est.value > 0.0) {
            pt.estimate = std::pow(est.value, 1.0 / p);
            pt.stderr_ = (1.0 / p) * std::pow(est.value, 1.0 / p - 1.0) * est.stderr_;
            xs.push_back(std::log(std::log(lambda)));
            ys.push_back(std::log(pt.estimate));
            sig.push_back(pt.stderr_ / pt.estimate);
        }
        rep.points.push_back(std::move(pt));
    }

    rep.fit = fit_line(xs, ys, sig);
    const double expected = -1.0 + static_cast<double>(m) / static_cast<double>(g.Q());
    rep.derived["expected_slope"] = expected;
    if (rep.fit.valid) rep.derived["slope_minus_expected"] = rep.fit.slope - expected;
    return rep;
}

// ---------------------------------------------------------------------------
// Scaling exponent experiment: fit e in ||delta_R^* omega||_{L^1} ~ R^e for
// a pure-weight form with compactly supported coefficients. Substituting
// x -> delta_{1/R} x gives the exact law e = w - Q, where w is the frame
// weight; the report also carries the competing w - (Q - 1) so the two
// candidate normalizations can be told apart. Only exponent differences
// between two forms are geometry: those cancel the normalization entirely.
// ---------------------------------------------------------------------------

inline ExperimentReport scaling_exponent_experiment(const CalcContext& ctx, const GaugeForm& omega,
                                                    const std::vector<double>& radii, std::uint64_t N,
                                                    std::uint64_t seed) {
    const auto& g = ctx.group();
    if (omega.is_zero()) throw UsageError("scaling experiment requires a nonzero form");
    auto w_opt = pure_weight(g, omega);
    if (!w_opt) throw MixedWeight();
    const long long w = *w_opt;
    for (const auto& [mask, c] : omega.components())
        for (const GaugeTerm& t : c.terms())
            if (t.cut_pow == 0 && !t.cut_support)
                throw UsageError("scaling experiment requires compactly supported coefficients");
    if (radii.size() < 2) throw UsageError("need at least two radii for a slope fit");
    for (double r : radii)
        if (!(r > 0.0)) throw UsageError("every radius must be positive");

    std::vector<CompiledGaugeCoefficient> comps;
    for (const auto& [mask, c] : omega.components()) comps.push_back(CompiledGaugeCoefficient::compile(c));
    const GaugeEvaluator gauge(g);
    const int n = g.n();

    ExperimentReport rep;
    rep.operation = "scaling-exponent";
    rep.seed = seed;
    rep.samples_per_point = N;
    rep.config["radii"] = detail::format_double_list(radii);
    rep.config["samples"] = std::to_string(N);
    rep.config["weight"] = std::to_string(w);

    std::vector<double> xs, ys, sig;
    for (std::size_t idx = 0; idx < radii.size(); ++idx) {
        const double R = radii[idx];
        const double rw = std::pow(R, static_cast<double>(w));
        // The pullback compresses the unit-ball support onto B(1/R); the inner
        // radius trims a fixed 1e-3 fraction of it, which rescales every
        // estimate by one common constant and leaves the fitted slope exact.
        const double r_hi = 1.0 / R;
        const double r_lo = 1e-3 * r_hi;
        auto integrand = [&, y = std::vector<double>(n)](const std::vector<double>& x) mutable {
            for (int c = 0; c < n; ++c) y[c] = ipow(R, g.layer_of(c)) * x[c];
            const double S = gauge.P(y);
            double acc = 0.0;
            for (const auto& c : comps) {
                const double v = c.eval(y, S);
                acc += v * v;
            }
            return rw * std::sqrt(acc);
        };
        ShellEstimate est = shell_integral(g, integrand, r_lo, r_hi, N, derive_seed(seed, 2, idx));

        ExperimentPoint pt;
        pt.parameter = R;
        pt.estimate = est.value;
        pt.stderr_ = est.stderr_;
        if (est.value > 0.0) {
            xs.push_back(std::log(R));
            ys.push_back(std::log(est.value));
            sig.push_back(est.stderr_ / est.value);
        }
        rep.points.push_back(std::move(pt));
    }

    rep.fit = fit_line(xs, ys, sig);
    const double q_dim = static_cast<double>(g.Q());
    rep.derived["weight"] = static_cast<double>(w);
    rep.derived["expected_change_of_variables"] = static_cast<double>(w) - q_dim;
    rep.derived["expected_codimension_one"] = static_cast<double>(w) - (q_dim - 1.0);
    if (rep.fit.valid) {
        rep.derived["slope_minus_change_of_variables"] = rep.fit.slope - rep.derived["expected_change_of_variables"];
        rep.derived["slope_minus_codimension_one"] = rep.fit.slope - rep.derived["expected_codimension_one"];
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Averaging pairing experiment: estimate integral of xi_{R,lambda} omega ^ beta
// over growing R, where beta is a left-invariant intrinsic form and omega is
// either supplied directly or produced as the intrinsic differential of a
// potential phi. When phi is supplied, the report also evaluates the
// Hoelder product ||phi_w||_{Q/(Q-j)} ||grad^j xi||_{Q/j} ||beta||_inf over
// the transition shell for every weight jump j the differential performs, so
// the estimate can be compared against the bound that drives it to zero.
// ---------------------------------------------------------------------------

namespace detail {

inline double invariant_sup_norm(const InvariantForm& beta) {
    double acc = 0.0;
    for (const auto& [mask, c] : beta.components()) {
        const double v = to_double(c);
        acc += v * v;
    }
    return std::sqrt(acc);
}

inline ExperimentReport pairing_core(const CalcContext& ctx, const GaugeForm& omega,
                                     const InvariantForm& beta, const std::vector<double>& radii,
                                     double lambda, std::uint64_t N, std::uint64_t seed,
                                     const GaugeForm* phi) {
    const auto& g = ctx.group();
    const int n = g.n();
    int k_omega = 0, k_beta = 0;
    if (!omega.pure_degree(&k_omega)) throw RuminError("pairing requires a pure-degree form");
    if (!beta.pure_degree(&k_beta)) throw RuminError("pairing requires a pure-degree invariant form");
    if (beta.is_zero()) throw UsageError("invariant factor must be nonzero");
    if (!omega.is_zero() && k_omega + k_beta != n)
        throw DegreeMismatch("degrees " + std::to_string(k_omega) + " + " + std::to_string(k_beta) +
                             " do not fill the top degree " + std::to_string(n));
    if (!(pi_e0_apply(ctx, beta) == beta)) throw NotRumin();
    if (!(lambda > 1.0)) throw UsageError("cutoff ratio must exceed 1");
    if (radii.empty()) throw UsageError("need at least one radius");
    for (double r : radii)
        if (!(r > 0.0)) throw UsageError("every radius must be positive");

    ExperimentReport rep;
    rep.operation = "pairing";
    rep.seed = seed;
    rep.samples_per_point = N;
    rep.config["lambda"] = format_double(lambda);
    rep.config["radii"] = format_double_list(radii);
    rep.config["samples"] = std::to_string(N);

    // Top-degree density of omega ^ beta.
    CompiledGaugeCoefficient density;
    bool have_density = false;
    if (!omega.is_zero()) {
        const auto& S = omega.components().begin()->second.gauge();
        GaugeForm top = wedge(omega, promote_form(S, beta));
        if (!top.is_zero()) {
            density = CompiledGaugeCoefficient::compile(top.components().begin()->second);
            have_density = true;
        }
    }

    const double beta_sup = invariant_sup_norm(beta);
    rep.derived["beta_sup"] = beta_sup;

    // Weight pieces of phi and the weight jumps its differential performs,
    // for the Hoelder columns.
    struct BoundTerm {
        long long w = 0;
        long long j = 0;
        double p_phi = 0.0;  // Q / (Q - j)
        std::vector<CompiledGaugeCoefficient> comps;
    };
    std::vector<BoundTerm> bound_terms;
    std::map<long long, CutoffDerivatives> grad_tensors;
    if (phi && !phi->is_zero()) {
        int k_phi = 0;
        phi->pure_degree(&k_phi);
        std::map<long long, std::vector<CompiledGaugeCoefficient>> by_weight;
        for (const auto& [mask, c] : phi->components())
            by_weight[mask_weight(g, mask)].push_back(CompiledGaugeCoefficient::compile(c));
        for (auto& [w, comps] : by_weight) {
            for (long long j : jset(ctx, k_phi, w)) {
                if (j >= g.Q()) continue;  // out of the Hoelder range; cannot happen when jumps < Q
                BoundTerm bt;
                bt.w = w;
                bt.j = j;
                bt.p_phi = static_cast<double>(g.Q()) / static_cast<double>(g.Q() - j);
                bt.comps = comps;
                bound_terms.push_back(std::move(bt));
                if (!grad_tensors.count(j)) grad_tensors.emplace(j, cutoff_derivatives(ctx, static_cast<int>(j)));
            }
        }
    }

    const GaugeEvaluator gauge(g);
    const double n_gauge = 2.0 * static_cast<double>(gauge.N);
    double r_min = radii[0];
    for (double r : radii) r_min = std::min(r_min, r);
    const double r_lo = 1e-3 * std::min(1.0, r_min);

    for (std::size_t idx = 0; idx < radii.size(); ++idx) {
        const double R = radii[idx];
        const double log_lambda = std::log(lambda);
        const double s_lo = std::pow(R, n_gauge);
        const double s_hi = std::pow(lambda * R, n_gauge);

        ExperimentPoint pt;
        pt.parameter = R;
        if (have_density) {
            auto integrand = [&](const std::vector<double>& x) {
                const double S = gauge.P(x);
                double xi = 1.0;
                if (S >= s_hi) return 0.0;
                if (S > s_lo) xi = std::log(lambda * R / std::pow(S, 1.0 / n_gauge)) / log_lambda;
                return xi * density.eval(x, S);
            };
            ShellEstimate est = shell_integral(g, integrand, r_lo, lambda * R, N, derive_seed(seed, 3, idx));
            pt.estimate = est.value;
            pt.stderr_ = est.stderr_;
        }

        // Hoelder columns over the transition shell [R, lambda R].
        if (!bound_terms.empty()) {
            double bound = 0.0, bound_var = 0.0;
            std::uint64_t sub = 0;
            for (const BoundTerm& bt : bound_terms) {
                auto phi_integrand = [&](const std::vector<double>& x) {
                    const double S = gauge.P(x);
                    double acc = 0.0;
                    for (const auto& c : bt.comps) {
                        const double v = c.eval(x, S);
                        acc += v * v;
                    }
                    return std::pow(std::sqrt(acc), bt.p_phi);
                };
                ShellEstimate phi_est =
                    shell_integral(g, phi_integrand, R, lambda * R, N, derive_seed(seed, 4 + 2 * sub, idx));
                CutoffDerivativeNorm grad_norm(g, grad_tensors.at(bt.j), R, lambda);
                const double p_grad = static_cast<double>(g.Q()) / static_cast<double>(bt.j);
                auto grad_integrand = [&](const std::vector<double>& x) {
                    const double v = grad_norm(x);
                    return v == 0.0 ? 0.0 : std::pow(v, p_grad);
                };
                ShellEstimate grad_est =
                    shell_integral(g, grad_integrand, R, lambda * R, N, derive_seed(seed, 5 + 2 * sub, idx));
                ++sub;
                if (phi_est.value <= 0.0 || grad_est.value <= 0.0) continue;
                const double phi_norm = std::pow(phi_est.value, 1.0 / bt.p_phi);
                const double grad_norm_val = std::pow(grad_est.value, 1.0 / p_grad);
                const double term = phi_norm * grad_norm_val * beta_sup;
                const double rel_phi = phi_est.stderr_ / phi_est.value / bt.p_phi;
                const double rel_grad = grad_est.stderr_ / grad_est.value / p_grad;
                bound += term;
                bound_var += term * term * (rel_phi * rel_phi + rel_grad * rel_grad);
                pt.extra["phi_norm_w" + std::to_string(bt.w) + "_j" + std::to_string(bt.j)] = phi_norm;
                pt.extra["grad_norm_j" + std::to_string(bt.j)] = grad_norm_val;
            }
            pt.extra["holder_bound"] = bound;
            pt.extra["holder_bound_stderr"] = std::sqrt(bound_var);
        }
        rep.points.push_back(std::move(pt));
    }
    return rep;
}

}  // namespace detail

// Pairing against the differential of a potential: omega = dc(phi).
inline ExperimentReport pairing_experiment(const CalcContext& ctx, const GaugeForm& phi,
                                           const InvariantForm& beta, const std::vector<double>& radii,
                                           double lambda, std::uint64_t N, std::uint64_t seed) {
    int k_phi = 0;
    if (!phi.pure_degree(&k_phi)) throw RuminError("potential must have pure degree");
    int k_beta = 0;
    if (!beta.pure_degree(&k_beta)) throw RuminError("pairing requires a pure-degree invariant form");
    if (k_phi + 1 + k_beta != ctx.n())
        throw DegreeMismatch("degrees " + std::to_string(k_phi) + " + 1 + " + std::to_string(k_beta) +
                             " do not fill the top degree " + std::to_string(ctx.n()));
    GaugeForm omega = dc_apply(ctx, phi);
    ExperimentReport rep = detail::pairing_core(ctx, omega, beta, radii, lambda, N, seed, &phi);
    rep.config["potential_degree"] = std::to_string(k_phi);
    return rep;
}

// Pairing of a directly supplied form (no potential, no Hoelder columns).
inline ExperimentReport pairing_integral_experiment(const CalcContext& ctx, const GaugeForm& omega,
                                                    const InvariantForm& beta,
                                                    const std::vector<double>& radii, double lambda,
                                                    std::uint64_t N, std::uint64_t seed) {
    int k_omega = 0;
    if (!omega.pure_degree(&k_omega)) throw RuminError("pairing requires a pure-degree form");
    if (omega.is_zero()) throw UsageError("form must be nonzero");
    return detail::pairing_core(ctx, omega, beta, radii, lambda, N, seed, nullptr);
}

// ---------------------------------------------------------------------------
// Plain-text rendering.
// ---------------------------------------------------------------------------

inline std::string report_to_text(const ExperimentReport& rep) {
    std::ostringstream os;
    os << std::setprecision(9);
    os << "operation: " << rep.operation << "\n";
    if (!rep.group_ref.empty()) os << "group: " << rep.group_ref << "\n";
    for (const auto& [k, v] : rep.config) os << "config." << k << ": " << v << "\n";
    os << "seed: " << rep.seed << "\n";
    os << "samples per point: " << rep.samples_per_point << "\n";
    std::set<std::string> extra_keys;
    for (const auto& p : rep.points)
        for (const auto& [k, v] : p.extra) extra_keys.insert(k);
    os << "points (parameter, estimate, stderr";
    for (const auto& k : extra_keys) os << ", " << k;
    os << "):\n";
    for (const auto& p : rep.points) {
        os << "  " << p.parameter << "  " << p.estimate << "  " << p.stderr_;
        for (const auto& k : extra_keys) {
            auto it = p.extra.find(k);
            os << "  " << (it == p.extra.end() ? 0.0 : it->second);
        }
        os << "\n";
    }
    if (rep.fit.valid)
        os << "fit: slope " << rep.fit.slope << " +- " << rep.fit.slope_stderr << " (1 sigma), intercept "
           << rep.fit.intercept << "\n";
    for (const auto& [k, v] : rep.derived) os << "derived." << k << ": " << v << "\n";
    return os.str();
}

}  // namespace rumincalc
