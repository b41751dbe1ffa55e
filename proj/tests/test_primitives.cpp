// Linear-growth primitives: exact solves for every invariant Rumin form away
// from the middle Heisenberg degree, the NoLinearGrowth state exactly at it,
// and the dilation homogeneity of the constructed primitive.

#include <gtest/gtest.h>

#include <random>

#include "rumincalc/primitives.hpp"

using namespace rumincalc;

namespace {

PolyForm promote(const InvariantForm& f) {
    PolyForm r(f.n());
    for (const auto& [m, c] : f.components()) r.add_term(m, Polynomial::constant(f.n(), c));
    return r;
}

// A nonzero random rational combination of the harmonic basis in one degree.
InvariantForm random_rumin_combo(std::mt19937& rng, const CalcContext& ctx, int k) {
    std::uniform_int_distribution<int> num(-3, 3);
    while (true) {
        InvariantForm f(ctx.n());
        for (const auto& eb : ctx.rumin_basis(k)) {
            InvariantForm t = eb;
            t *= rational(num(rng));
            f += t;
        }
        if (!f.is_zero()) return f;
    }
}

void expect_linear_primitive(const CalcContext& ctx, const InvariantForm& beta) {
    PrimitiveResult r = linear_growth_primitive(ctx, beta);
    ASSERT_TRUE(r.found()) << ctx.group().name();
    EXPECT_EQ(dc_apply(ctx, r.alpha), promote(beta));
    for (const auto& [mask, c] : r.alpha.components()) {
        long long hh = -1;
        EXPECT_TRUE(c.is_homogeneous(ctx.group().layers(), &hh));
        EXPECT_EQ(hh, 1) << "primitive must have linear growth";
    }
    // A pure-weight source gives a primitive homogeneous under dilations:
    // pulling back by delta_lambda multiplies it by lambda^w exactly.
    if (auto w = pure_weight(ctx.group(), beta)) {
        for (const Rational& lambda : {Rational(2), rational(3, 2)}) {
            PolyForm scaled = r.alpha;
            scaled *= rational_pow(lambda, *w);
            EXPECT_EQ(dilate_pullback(ctx.group(), r.alpha, lambda), scaled);
        }
    }
}

}  // namespace

TEST(Primitives, FrozenHeisenbergValues) {
    CalcContext ctx(heisenberg_group(1));
    const int n = ctx.n();

    PrimitiveResult r1 = linear_growth_primitive(ctx, InvariantForm::term(n, 0b001, Rational(1)));
    ASSERT_TRUE(r1.found());
    EXPECT_EQ(r1.alpha, PolyForm::term(n, 0, Polynomial::variable(n, 0)));  // x1

    PrimitiveResult r3 = linear_growth_primitive(ctx, InvariantForm::term(n, 0b111, Rational(1)));
    ASSERT_TRUE(r3.found());
    Polynomial minus_x2(n);
    minus_x2.add_term({0, 1, 0}, Rational(-1));
    EXPECT_EQ(r3.alpha, PolyForm::term(n, 0b101, minus_x2));  // -x2 theta^13

    // tau ^ theta^1 = -theta^13 sits in the middle degree h = m+1 = 2.
    PrimitiveResult r2 = linear_growth_primitive(ctx, InvariantForm::term(n, 0b101, Rational(-1)));
    EXPECT_FALSE(r2.found());
    EXPECT_EQ(r2.status, PrimitiveStatus::NoLinearGrowth);
}

TEST(Primitives, EveryBasisFormOffTheMiddleDegree) {
    for (int m : {1, 2}) {
        CalcContext ctx(heisenberg_group(m));
        std::mt19937 rng(5u + m);
        for (int h = 1; h <= ctx.n(); ++h) {
            if (h == m + 1) continue;
            for (const auto& eb : ctx.rumin_basis(h)) expect_linear_primitive(ctx, eb);
            expect_linear_primitive(ctx, random_rumin_combo(rng, ctx, h));
        }
    }
}

TEST(Primitives, MiddleDegreeHasNoLinearPrimitive) {
    for (int m : {1, 2}) {
        CalcContext ctx(heisenberg_group(m));
        for (const auto& eb : ctx.rumin_basis(m + 1)) {
            PrimitiveResult r = linear_growth_primitive(ctx, eb);
            EXPECT_FALSE(r.found()) << "heisenberg(" << m << ") degree " << (m + 1);
        }
    }
}

TEST(Primitives, AbelianEveryDegreeSolves) {
    for (int n : {3, 4}) {
        CalcContext ctx(abelian_group(n));
        std::mt19937 rng(17u + n);
        for (int h = 1; h <= n; ++h) {
            for (const auto& eb : ctx.rumin_basis(h)) expect_linear_primitive(ctx, eb);
            expect_linear_primitive(ctx, random_rumin_combo(rng, ctx, h));
        }
    }
}

TEST(Primitives, ZeroFormAndErrorContract) {
    CalcContext ctx(heisenberg_group(1));
    const int n = ctx.n();

    PrimitiveResult rz = linear_growth_primitive(ctx, InvariantForm(n));
    EXPECT_TRUE(rz.found());
    EXPECT_TRUE(rz.alpha.is_zero());

    // tau and theta^12 span the non-Rumin directions of degrees 1 and 2.
    EXPECT_THROW(linear_growth_primitive(ctx, InvariantForm::term(n, 0b100, Rational(1))), NotRumin);
    EXPECT_THROW(linear_growth_primitive(ctx, InvariantForm::term(n, 0b011, Rational(1))), NotRumin);

    // Degree-0 forms have no primitive; mixed degrees are rejected.
    EXPECT_THROW(linear_growth_primitive(ctx, InvariantForm::term(n, 0, Rational(1))), RuminError);
    InvariantForm mixed = InvariantForm::term(n, 0b001, Rational(1));
    mixed.add_term(0b110, Rational(1));
    EXPECT_THROW(linear_growth_primitive(ctx, mixed), RuminError);
}
