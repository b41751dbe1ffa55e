// Shell Monte Carlo estimator: argument validation, closed-form integrals on
// the plane and on the first Heisenberg group, and bitwise reproducibility.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "rumincalc/montecarlo.hpp"

namespace rumincalc {
namespace {

constexpr double kPi = std::numbers::pi;

double one(const std::vector<double>&) { return 1.0; }

TEST(ShellIntegral, RejectsDegenerateShells) {
    auto g = abelian_group(2);
    EXPECT_THROW(shell_integral(g, one, 0.0, 1.0, 10000, 1), DegenerateShell);
    EXPECT_THROW(shell_integral(g, one, 1.0, 1.0, 10000, 1), DegenerateShell);
    EXPECT_THROW(shell_integral(g, one, 2.0, 1.0, 10000, 1), DegenerateShell);
    EXPECT_THROW(shell_integral(g, one, -1.0, 1.0, 10000, 1), DegenerateShell);
    EXPECT_THROW(shell_integral(g, one, 1.0, 2.0, 999, 1), UsageError);
}

// Area of the planar annulus 1 <= |x| <= 2 is exactly 3*pi.
TEST(ShellIntegral, AnnulusAreaOnThePlane) {
    auto g = abelian_group(2);
    ShellEstimate est = shell_integral(g, one, 1.0, 2.0, 200000, 12345);
    const double target = 3.0 * kPi;
    EXPECT_EQ(est.samples, 200000u);
    EXPECT_GT(est.stderr_, 0.0);
    EXPECT_LT(est.stderr_, 0.02 * target);
    EXPECT_NEAR(est.value, target, 3.0 * est.stderr_);
}

// integral over 1 <= |x| <= lambda of |x|^-2 dx = 2*pi*log(lambda): the
// estimator must track the logarithmic growth across a range of ratios.
TEST(ShellIntegral, LogarithmicGrowthOfInverseSquare) {
    auto g = abelian_group(2);
    auto f = [](const std::vector<double>& x) { return 1.0 / (x[0] * x[0] + x[1] * x[1]); };
    int idx = 0;
    for (double lambda : {4.0, 16.0, 64.0}) {
        ShellEstimate est = shell_integral(g, f, 1.0, lambda, 150000, 900 + idx++);
        const double target = 2.0 * kPi * std::log(lambda);
        EXPECT_NEAR(est.value, target, 3.0 * est.stderr_) << "lambda=" << lambda;
        EXPECT_LT(est.stderr_, 0.03 * target);
    }
}

// On the first Heisenberg group (Q = 4, gauge r with r^4 = (x1^2+x2^2)^2 + x3^2)
// the integral of r^-4 over a shell [R1, R2] is 2*pi^2*log(R2/R1): the measure
// of the unit gauge ball is pi^2/2 and r^-Q turns the volume growth into a log.
// The value depends only on the ratio R2/R1, so distant shells must agree.
TEST(ShellIntegral, HomogeneousDecayDependsOnlyOnShellRatio) {
    auto g = heisenberg_group(1);
    auto f = [](const std::vector<double>& x) {
        const double rho2 = x[0] * x[0] + x[1] * x[1];
        return 1.0 / (rho2 * rho2 + x[2] * x[2]);
    };
    const double target = 2.0 * kPi * kPi * std::log(4.0);
    ShellEstimate near_est = shell_integral(g, f, 1.0, 4.0, 150000, 12345);
    ShellEstimate far_est = shell_integral(g, f, 8.0, 32.0, 150000, 54321);
    EXPECT_NEAR(near_est.value, target, 3.0 * near_est.stderr_);
    EXPECT_NEAR(far_est.value, target, 3.0 * far_est.stderr_);
    EXPECT_NEAR(near_est.value, far_est.value,
                3.0 * std::hypot(near_est.stderr_, far_est.stderr_));
}

// Two bump-profile masses with exact closed forms:
//   plane:      integral of (1 - |x|^2)_+^4 dx          = pi/5
//   Heisenberg: integral of (1 - r^4)_+^4 dx            = pi^2/10
// The inner shell radius only trims a set of measure ~1e-8 resp. ~1e-12, far
// below the Monte Carlo resolution.
TEST(ShellIntegral, BumpProfilesMatchClosedForms) {
    auto plane = abelian_group(2);
    auto plane_bump = [](const std::vector<double>& x) {
        const double u = 1.0 - (x[0] * x[0] + x[1] * x[1]);
        return u > 0.0 ? u * u * u * u : 0.0;
    };
    ShellEstimate a = shell_integral(plane, plane_bump, 1e-4, 1.0, 300000, 12345);
    EXPECT_NEAR(a.value, kPi / 5.0, 3.0 * a.stderr_);

    auto heis = heisenberg_group(1);
    auto heis_bump = [](const std::vector<double>& x) {
        const double rho2 = x[0] * x[0] + x[1] * x[1];
        const double u = 1.0 - (rho2 * rho2 + x[2] * x[2]);
        return u > 0.0 ? u * u * u * u : 0.0;
    };
    ShellEstimate b = shell_integral(heis, heis_bump, 1e-3, 1.0, 300000, 12345);
    EXPECT_NEAR(b.value, kPi * kPi / 10.0, 3.0 * b.stderr_);
}

TEST(ShellIntegral, BitwiseReproducible) {
    auto g = heisenberg_group(1);
    auto f = [](const std::vector<double>& x) { return std::exp(-x[2] * x[2]) + x[0] * x[0]; };
    ShellEstimate a = shell_integral(g, f, 1.0, 3.0, 50000, 777);
    ShellEstimate b = shell_integral(g, f, 1.0, 3.0, 50000, 777);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.stderr_, b.stderr_);
    ShellEstimate c = shell_integral(g, f, 1.0, 3.0, 50000, 778);
    EXPECT_NE(a.value, c.value);
}

// Sample counts that are not multiples of the internal shard size must still
// use exactly the requested number of samples.
TEST(ShellIntegral, OddSampleCountsWork) {
    auto g = abelian_group(2);
    ShellEstimate est = shell_integral(g, one, 1.0, 2.0, 100001, 12345);
    EXPECT_EQ(est.samples, 100001u);
    const double target = 3.0 * kPi;
    EXPECT_NEAR(est.value, target, 4.0 * est.stderr_);
}

}  // namespace
}  // namespace rumincalc
