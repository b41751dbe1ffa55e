#include <gtest/gtest.h>

#include <random>

#include "rumincalc/invariant_forms.hpp"

using namespace rumincalc;

namespace {

InvariantForm random_invariant_form(std::mt19937& rng, const StratifiedLieAlgebra& g, int k) {
    std::uniform_int_distribution<int> num(-3, 3), den(1, 2);
    InvariantForm f(g.n());
    for (auto m : degree_masks(g.n(), k)) f.add_term(m, rational(num(rng), den(rng)));
    return f;
}

Rational inner(const InvariantForm& a, const InvariantForm& b) {
    Rational s(0);
    for (const auto& [m, c] : a.components())
        if (const Rational* d = b.find(m)) s += c * (*d);
    return s;
}

std::vector<StratifiedLieAlgebra> sample_groups() {
    return {abelian_group(3), heisenberg_group(1), heisenberg_group(2), engel_group()};
}

}  // namespace

TEST(Masks, DegreeEnumerationAndWeights) {
    auto m31 = degree_masks(3, 1);
    EXPECT_EQ(m31, (std::vector<std::uint64_t>{1, 2, 4}));
    auto m42 = degree_masks(4, 2);
    EXPECT_EQ(m42, (std::vector<std::uint64_t>{3, 5, 6, 9, 10, 12}));
    EXPECT_EQ(degree_masks(5, 0), (std::vector<std::uint64_t>{0}));
    EXPECT_EQ(degree_masks(3, 3), (std::vector<std::uint64_t>{7}));
    EXPECT_TRUE(degree_masks(3, 4).empty());
    EXPECT_EQ(degree_masks(6, 3).size(), 20u);

    auto h3 = heisenberg_group(1);
    EXPECT_EQ(mask_weight(h3, 0b001), 1);
    EXPECT_EQ(mask_weight(h3, 0b100), 2);
    EXPECT_EQ(mask_weight(h3, 0b111), 4);
}

TEST(Wedge, SignsAndNilpotency) {
    int n = 4;
    auto t = [n](int i) { return InvariantForm::term(n, 1ull << i, Rational(1)); };
    EXPECT_EQ(wedge(t(0), t(1)), InvariantForm::term(n, 0b11, Rational(1)));
    EXPECT_EQ(wedge(t(1), t(0)), InvariantForm::term(n, 0b11, rational(-1)));
    EXPECT_TRUE(wedge(t(2), t(2)).is_zero());

    // theta^{13} ^ theta^{24}: inversions (3,2) only -> sign -1.
    auto a = InvariantForm::term(n, 0b0101, Rational(1));
    auto b = InvariantForm::term(n, 0b1010, Rational(1));
    EXPECT_EQ(wedge(a, b), InvariantForm::term(n, 0b1111, rational(-1)));
}

TEST(Wedge, GradedCommutativityAndAssociativity) {
    auto g = heisenberg_group(2);
    std::mt19937 rng(5);
    for (int h = 0; h <= 3; ++h)
        for (int k = 0; k <= 3; ++k) {
            auto a = random_invariant_form(rng, g, h);
            auto b = random_invariant_form(rng, g, k);
            InvariantForm ba = wedge(b, a);
            if ((h * k) % 2 == 1) ba *= rational(-1);
            EXPECT_EQ(wedge(a, b), ba) << h << "," << k;
            auto c = random_invariant_form(rng, g, 1);
            EXPECT_EQ(wedge(wedge(a, b), c), wedge(a, wedge(b, c)));
        }
}

TEST(Differential, KnownValues) {
    auto h3 = heisenberg_group(1);
    // d tau = -theta^1 ^ theta^2; horizontal coframe elements are closed.
    EXPECT_EQ(coframe_d0(h3, 2), InvariantForm::term(3, 0b011, rational(-1)));
    EXPECT_TRUE(coframe_d0(h3, 0).is_zero());
    EXPECT_TRUE(coframe_d0(h3, 1).is_zero());

    auto en = engel_group();
    EXPECT_EQ(coframe_d0(en, 2), InvariantForm::term(4, 0b0011, rational(-1)));
    EXPECT_EQ(coframe_d0(en, 3), InvariantForm::term(4, 0b0101, rational(-1)));

    // d(tau ^ theta^1) = -theta^{12} ^ theta^1 = 0 on h3; d(tau ^ theta^2) = 0 too.
    EXPECT_TRUE(d0(h3, InvariantForm::term(3, 0b101, Rational(1))).is_zero());
    // d(theta^{3}) on h5: [X1,Y1]=T means d tau has two terms.
    auto h5 = heisenberg_group(2);
    InvariantForm dtau = coframe_d0(h5, 4);
    InvariantForm expect(5);
    expect.add_term(0b00101, rational(-1));
    expect.add_term(0b01010, rational(-1));
    EXPECT_EQ(dtau, expect);
}

TEST(Differential, SquaresToZeroAndLeibniz) {
    std::mt19937 rng(9);
    for (const auto& g : sample_groups()) {
        for (int k = 0; k <= g.n(); ++k)
            for (auto m : degree_masks(g.n(), k)) {
                auto once = d0_basis(g, m);
                EXPECT_TRUE(d0(g, once).is_zero()) << g.name() << " mask " << m;
            }
        for (int h = 0; h <= 2; ++h)
            for (int k = 0; k <= 2; ++k) {
                auto a = random_invariant_form(rng, g, h);
                auto b = random_invariant_form(rng, g, k);
                InvariantForm lhs = d0(g, wedge(a, b));
                InvariantForm rhs = wedge(d0(g, a), b);
                InvariantForm sgn = wedge(a, d0(g, b));
                if (h % 2 == 1) sgn *= rational(-1);
                rhs += sgn;
                EXPECT_EQ(lhs, rhs) << g.name();
            }
    }
}

TEST(Differential, PreservesWeight) {
    for (const auto& g : sample_groups())
        for (int k = 0; k < g.n(); ++k)
            for (auto m : degree_masks(g.n(), k)) {
                long long w = mask_weight(g, m);
                InvariantForm img = d0_basis(g, m);
                for (const auto& [m2, c] : img.components()) EXPECT_EQ(mask_weight(g, m2), w);
            }
}

TEST(HodgeStar, KnownValuesAndInvolution) {
    auto h3 = heisenberg_group(1);
    // star theta^1 = theta^2 ^ tau.
    EXPECT_EQ(hodge_star(h3, InvariantForm::term(3, 0b001, Rational(1))),
              InvariantForm::term(3, 0b110, Rational(1)));
    // star 1 = vol, star vol = 1.
    EXPECT_EQ(hodge_star(h3, InvariantForm::term(3, 0, Rational(1))),
              InvariantForm::term(3, 0b111, Rational(1)));
    EXPECT_EQ(hodge_star(h3, InvariantForm::term(3, 0b111, Rational(1))),
              InvariantForm::term(3, 0, Rational(1)));

    for (const auto& g : sample_groups()) {
        long long Q = g.Q();
        for (int k = 0; k <= g.n(); ++k)
            for (auto m : degree_masks(g.n(), k)) {
                auto f = InvariantForm::term(g.n(), m, Rational(1));
                auto ss = hodge_star(g, hodge_star(g, f));
                InvariantForm expect = f;
                if ((k * (g.n() - k)) % 2 == 1) expect *= rational(-1);
                EXPECT_EQ(ss, expect) << g.name() << " mask " << m;
                // weight(star f) = Q - weight(f)
                auto sf = hodge_star(g, f);
                EXPECT_EQ(*pure_weight(g, sf), Q - mask_weight(g, m));
            }
    }
}

TEST(HodgeStar, RealizesTheInnerProduct) {
    // a ^ star b = <a, b> vol for random invariant forms of equal degree.
    std::mt19937 rng(13);
    for (const auto& g : sample_groups()) {
        std::uint64_t full = (1ull << g.n()) - 1;
        for (int k = 0; k <= g.n(); ++k) {
            auto a = random_invariant_form(rng, g, k);
            auto b = random_invariant_form(rng, g, k);
            InvariantForm prod = wedge(a, hodge_star(g, b));
            Rational expect = inner(a, b);
            if (expect == 0) {
                EXPECT_TRUE(prod.is_zero());
            } else {
                EXPECT_EQ(prod, InvariantForm::term(g.n(), full, expect));
            }
        }
    }
}

TEST(Matrices, DifferentialMatrixAndPseudoinverse) {
    auto h3 = heisenberg_group(1);
    // Degree-1 basis {theta^1, theta^2, tau}; degree-2 basis {12, 13, 23}.
    RMatrix A = d0_matrix(h3, 1);
    ASSERT_EQ(A.rows(), 3);
    ASSERT_EQ(A.cols(), 3);
    EXPECT_EQ(A.at(0, 2), rational(-1));
    int nonzero = 0;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            if (A.at(r, c) != 0) ++nonzero;
    EXPECT_EQ(nonzero, 1);

    // pinv sends theta^{12} back to -tau.
    RMatrix P = A.pinv();
    std::vector<Rational> e12{Rational(1), Rational(0), Rational(0)};
    auto v = P.apply(e12);
    EXPECT_EQ(v[0], 0);
    EXPECT_EQ(v[1], 0);
    EXPECT_EQ(v[2], rational(-1));
}

TEST(Matrices, CohomologyDimensions) {
    EXPECT_EQ(cohomology_dims(heisenberg_group(1)), (std::vector<long long>{1, 2, 2, 1}));
    EXPECT_EQ(cohomology_dims(abelian_group(4)), (std::vector<long long>{1, 4, 6, 4, 1}));
    EXPECT_EQ(cohomology_dims(engel_group()), (std::vector<long long>{1, 2, 2, 2, 1}));
    // Poincare duality of the dimensions for a step-2 group of dimension 5.
    auto b = cohomology_dims(heisenberg_group(2));
    ASSERT_EQ(b.size(), 6u);
    for (std::size_t k = 0; k < b.size(); ++k) EXPECT_EQ(b[k], b[b.size() - 1 - k]);
    EXPECT_EQ(b[1], 4);
}
