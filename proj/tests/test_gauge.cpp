// Homogeneous gauge, log-gauge cutoff, and the S-power coefficient algebra
// that carries exact horizontal derivatives into the numeric harness.

#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "rumincalc/gauge.hpp"
#include "rumincalc/rng.hpp"

namespace rumincalc {
namespace {

CalcContext make_context(const std::string& ref) {
    auto g = builtin_group(ref);
    if (!g) throw std::runtime_error("unknown builtin: " + ref);
    return CalcContext(*g);
}

TEST(Gauge, ExponentIsLcmOfLayers) {
    EXPECT_EQ(gauge_exponent(abelian_group(3)), 1);
    EXPECT_EQ(gauge_exponent(heisenberg_group(1)), 2);
    EXPECT_EQ(gauge_exponent(heisenberg_group(3)), 2);
    EXPECT_EQ(gauge_exponent(engel_group()), 6);
}

TEST(Gauge, EuclideanOnAbelian) {
    auto g = abelian_group(3);
    CounterRng rng(7, 0);
    for (int i = 0; i < 100; ++i) {
        std::vector<double> x{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        double euclid = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        EXPECT_NEAR(gauge_eval(g, x), euclid, 1e-14 * (1.0 + euclid));
    }
}

TEST(Gauge, FrozenPointsOnHeisenberg) {
    auto g = heisenberg_group(1);
    EXPECT_DOUBLE_EQ(gauge_eval(g, {0.0, 0.0, 1.0}), 1.0);
    EXPECT_DOUBLE_EQ(gauge_eval(g, {1.0, 0.0, 0.0}), 1.0);
    EXPECT_NEAR(gauge_eval(g, {0.0, 0.0, 16.0}), 4.0, 1e-14);  // vertical direction scales like sqrt
}

TEST(Gauge, DilationHomogeneityTenThousandPairs) {
    for (const auto& ref : {std::string("abelian:2"), std::string("heisenberg:1"), std::string("engel")}) {
        auto g = *builtin_group(ref);
        int n = g.n();
        CounterRng rng(42, 0);
        for (int trial = 0; trial < 10000; ++trial) {
            std::vector<double> x(n), dx(n);
            for (int i = 0; i < n; ++i) x[i] = rng.uniform(-2, 2);
            double lambda = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
            for (int i = 0; i < n; ++i) dx[i] = ipow(lambda, g.layer_of(i)) * x[i];
            double lhs = gauge_eval(g, dx);
            double rhs = lambda * gauge_eval(g, x);
            EXPECT_NEAR(lhs, rhs, 1e-12 * (rhs + 1e-300)) << ref << " trial " << trial;
        }
    }
}

TEST(Gauge, PolynomialMatchesLayerEvaluation) {
    for (const auto& ref : {std::string("abelian:3"), std::string("heisenberg:2"), std::string("engel")}) {
        auto g = *builtin_group(ref);
        CompiledPoly P = CompiledPoly::compile(gauge_polynomial(g));
        GaugeEvaluator ge(g);
        CounterRng rng(9, 0);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> x(g.n());
            for (int i = 0; i < g.n(); ++i) x[i] = rng.uniform(-1.5, 1.5);
            double a = P.eval(x), b = ge.P(x);
            EXPECT_NEAR(a, b, 1e-12 * (std::abs(b) + 1e-30)) << ref;
        }
    }
}

TEST(Cutoff, PlateauShellAndMidpoint) {
    auto g = heisenberg_group(1);
    EXPECT_DOUBLE_EQ(cutoff_eval(g, 1.0, 4.0, {0.0, 0.0, 0.5}), 1.0);   // r < R
    EXPECT_DOUBLE_EQ(cutoff_eval(g, 1.0, 4.0, {0.0, 0.0, 1.0}), 1.0);   // r = R
    EXPECT_DOUBLE_EQ(cutoff_eval(g, 1.0, 4.0, {0.0, 0.0, 16.0}), 0.0);  // r = lambda R
    EXPECT_DOUBLE_EQ(cutoff_eval(g, 1.0, 4.0, {0.0, 0.0, 400.0}), 0.0);
    // r = sqrt(lambda) R sits exactly halfway down the logarithmic ramp.
    EXPECT_NEAR(cutoff_eval(g, 1.0, 4.0, {0.0, 0.0, 4.0}), 0.5, 1e-12);
    EXPECT_THROW(cutoff_eval(g, 0.0, 4.0, {0.0, 0.0, 1.0}), UsageError);
    EXPECT_THROW(cutoff_eval(g, 1.0, 1.0, {0.0, 0.0, 1.0}), UsageError);
}

TEST(GaugeCoefficient, ProfileValues) {
    auto g = heisenberg_group(1);
    auto S = make_gauge(g);
    std::vector<double> origin{0.0, 0.0, 0.0};

    GaugeCoefficient bump = bump_coefficient(S);
    EXPECT_DOUBLE_EQ(bump.eval(origin, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(bump.eval(origin, 0.5), 0.0625);  // (1/2)^4
    EXPECT_DOUBLE_EQ(bump.eval(origin, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(bump.eval(origin, 3.0), 0.0);

    // Q = 4, N = 2: exponent -(2Q-1)/(4N) = -7/8.
    GaugeCoefficient slow = slow_decay_coefficient(g, S);
    EXPECT_NEAR(slow.eval(origin, 0.5), std::pow(1.5, -0.875), 1e-15);

    GaugeCoefficient gauss = gaussian_coefficient(S);
    EXPECT_NEAR(gauss.eval(origin, 0.5), std::exp(-0.5), 1e-15);

    EXPECT_THROW(bump_coefficient(S, 0), UsageError);
    EXPECT_THROW(gaussian_coefficient(S, Rational(0)), UsageError);
}

TEST(GaugeCoefficient, AlgebraCombinesFactors) {
    auto g = heisenberg_group(1);
    auto S = make_gauge(g);
    // (1-S)_+^2 * (1-S)_+^3 carries the same factor content as (1-S)_+^5.
    EXPECT_EQ(bump_coefficient(S, 2) * bump_coefficient(S, 3), bump_coefficient(S, 5));
    // Sum of equal-key terms merges polynomials; subtraction cancels to zero.
    GaugeCoefficient b4 = bump_coefficient(S, 4);
    GaugeCoefficient sum = b4 + b4;
    GaugeCoefficient twice = b4;
    twice *= Rational(2);
    EXPECT_EQ(sum, twice);
    EXPECT_TRUE(coeff_is_zero(sum + (-twice)));
}

TEST(GaugeCoefficient, FieldApplyMatchesHandComputedProductRule) {
    CalcContext ctx = make_context("heisenberg:1");
    const auto& g = ctx.group();
    auto S = make_gauge(g);
    Polynomial x1 = Polynomial::variable(g.n(), 0);

    // X1 (x1 (1-S)_+^4) = X1(x1) (1-S)_+^4 - 4 x1 (1-S)_+^3 X1(S).
    GaugeCoefficient c = GaugeCoefficient::from_poly(S, x1) * bump_coefficient(S, 4);
    GaugeCoefficient got = field_apply(ctx.fields()[0], c);

    Polynomial dx1 = ctx.fields()[0].apply(x1);
    Polynomial xs = ctx.fields()[0].apply(*S);
    GaugeCoefficient expect = GaugeCoefficient::from_poly(S, dx1) * bump_coefficient(S, 4);
    Polynomial chain = x1 * xs;
    chain *= Rational(-4);
    expect += GaugeCoefficient::from_poly(S, chain) * bump_coefficient(S, 3);
    EXPECT_EQ(got, expect);
}

TEST(GaugeCoefficient, DifferentialOfBumpIsHorizontalGradient) {
    CalcContext ctx = make_context("heisenberg:1");
    const auto& g = ctx.group();
    auto S = make_gauge(g);

    GaugeForm phi = GaugeForm::term(g.n(), 0, bump_coefficient(S));
    GaugeForm dphi = dc_apply(ctx, phi);

    GaugeForm expect(g.n());
    for (int i = 0; i < g.n(); ++i) {
        if (g.layer_of(i) != 1) continue;
        expect.add_term(1ull << i, field_apply(ctx.fields()[i], bump_coefficient(S)));
    }
    EXPECT_EQ(dphi, expect);
}

// Coordinate finite differences of the cutoff, contracted with the field
// coefficients, must reproduce the symbolic first derivatives.
TEST(CutoffDerivatives, FirstOrderMatchesFiniteDifferences) {
    CalcContext ctx = make_context("heisenberg:1");
    const auto& g = ctx.group();
    const double R = 1.0, lambda = 4.0, h = 1e-5;
    CutoffDerivatives d1 = cutoff_derivatives(ctx, 1);
    ASSERT_EQ(d1.horizontal.size(), 2u);
    ASSERT_EQ(d1.component.size(), 2u);
    GaugeEvaluator ge(g);

    const std::vector<std::vector<double>> pts = {
        {0.7, -0.4, 1.2}, {-0.3, 1.1, -2.0}, {1.5, 0.5, 2.5}, {0.0, 1.3, 0.9}};
    for (const auto& x : pts) {
        double r = ge.r(x);
        ASSERT_GT(r, R * 1.05);
        ASSERT_LT(r, lambda * R * 0.95);
        double S = ge.P(x);
        for (std::size_t a = 0; a < d1.horizontal.size(); ++a) {
            int i = d1.horizontal[a];
            double fd = 0.0;
            for (int kcoord = 0; kcoord < g.n(); ++kcoord) {
                double ck = ctx.fields()[i].coeff[kcoord].eval<double>(x);
                if (ck == 0.0) continue;
                std::vector<double> xp = x, xm = x;
                xp[kcoord] += h;
                xm[kcoord] -= h;
                fd += ck * (cutoff_eval(g, R, lambda, xp) - cutoff_eval(g, R, lambda, xm)) / (2 * h);
            }
            double sym = d1.component[a].eval(x, S) / std::log(lambda);
            EXPECT_NEAR(sym, fd, 1e-6 * (std::abs(fd) + 1e-3)) << "field " << i;
        }
    }
}

// Second order: finite differences of the symbolic first-order components.
TEST(CutoffDerivatives, SecondOrderMatchesFiniteDifferencesOfFirst) {
    CalcContext ctx = make_context("heisenberg:1");
    const auto& g = ctx.group();
    const double h = 1e-5;
    CutoffDerivatives d1 = cutoff_derivatives(ctx, 1);
    CutoffDerivatives d2 = cutoff_derivatives(ctx, 2);
    const std::size_t H = d1.horizontal.size();
    ASSERT_EQ(d2.component.size(), H * H);
    GaugeEvaluator ge(g);

    const std::vector<std::vector<double>> pts = {{0.7, -0.4, 1.2}, {-0.3, 1.1, -2.0}, {1.5, 0.5, 2.5}};
    for (const auto& x : pts) {
        double S = ge.P(x);
        for (std::size_t a = 0; a < H; ++a)
            for (std::size_t b = 0; b < H; ++b) {
                int i = d1.horizontal[a];
                double fd = 0.0;
                for (int kcoord = 0; kcoord < g.n(); ++kcoord) {
                    double ck = ctx.fields()[i].coeff[kcoord].eval<double>(x);
                    if (ck == 0.0) continue;
                    std::vector<double> xp = x, xm = x;
                    xp[kcoord] += h;
                    xm[kcoord] -= h;
                    fd += ck * (d1.component[b].eval(xp, ge.P(xp)) - d1.component[b].eval(xm, ge.P(xm))) / (2 * h);
                }
                double sym = d2.component[a * H + b].eval(x, S);
                EXPECT_NEAR(sym, fd, 1e-5 * (std::abs(fd) + 1e-2)) << a << "," << b;
            }
    }
}

TEST(CutoffDerivatives, CompiledEvaluatorAgreesWithExact) {
    CalcContext ctx = make_context("heisenberg:1");
    const auto& g = ctx.group();
    CutoffDerivatives d2 = cutoff_derivatives(ctx, 2);
    GaugeEvaluator ge(g);
    CounterRng rng(11, 0);
    for (const auto& comp : d2.component) {
        CompiledGaugeCoefficient cc = CompiledGaugeCoefficient::compile(comp);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> x{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-3, 3)};
            double S = ge.P(x);
            if (S < 1e-6) continue;
            double a = comp.eval(x, S), b = cc.eval(x, S);
            EXPECT_NEAR(a, b, 1e-12 * (std::abs(a) + 1e-12));
        }
    }
}

// |grad xi| r log(lambda) is dilation-invariant, so its sup over the shell
// does not depend on (R, lambda). Dense sampling across three configurations
// must agree to a few percent.
TEST(CutoffDerivatives, SupLawIndependentOfShellParameters) {
    CalcContext ctx = make_context("heisenberg:1");
    const auto& g = ctx.group();
    CutoffDerivatives d1 = cutoff_derivatives(ctx, 1);
    GaugeEvaluator ge(g);

    const std::vector<std::pair<double, double>> configs = {{1.0, 4.0}, {2.0, 16.0}, {0.5, 64.0}};
    std::vector<double> sups;
    std::uint64_t seed = 100;
    for (auto [R, lambda] : configs) {
        CutoffDerivativeNorm norm(g, d1, R, lambda);
        CounterRng rng(seed++, 0);
        double sup = 0.0;
        int kept = 0;
        while (kept < 30000) {
            std::vector<double> y{rng.uniform(-std::exp(1.0), std::exp(1.0)),
                                  rng.uniform(-std::exp(1.0), std::exp(1.0)),
                                  rng.uniform(-std::exp(2.0), std::exp(2.0))};
            double u = rng.uniform01();
            double ry = ge.r(y);
            if (ry < 1.0 || ry >= std::exp(1.0)) continue;
            ++kept;
            double rho = R * std::pow(lambda, u);
            double s = rho / ry;
            std::vector<double> x{s * y[0], s * y[1], s * s * y[2]};
            double v = norm(x) * rho * std::log(lambda);
            sup = std::max(sup, v);
        }
        sups.push_back(sup);
    }
    for (std::size_t i = 0; i < sups.size(); ++i)
        for (std::size_t j = i + 1; j < sups.size(); ++j)
            EXPECT_NEAR(sups[i], sups[j], 0.05 * std::max(sups[i], sups[j])) << i << "," << j;
}

TEST(GaugeForm, ProjectorFixesProfileTimesIntrinsicBasis) {
    CalcContext ctx = make_context("heisenberg:2");
    const auto& g = ctx.group();
    auto S = make_gauge(g);
    GaugeCoefficient bump = bump_coefficient(S);
    for (int k = 1; k < g.n(); ++k) {
        for (const auto& eb : ctx.rumin_basis(k)) {
            GaugeForm f(g.n());
            for (const auto& [mask, c] : eb.components()) {
                GaugeCoefficient t = bump;
                t *= c;
                f.add_term(mask, t);
            }
            EXPECT_EQ(pi_e0_apply(ctx, f), f) << "degree " << k;
        }
    }
}

}  // namespace
}  // namespace rumincalc
