#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "gauge.hpp"
#include "rng.hpp"

namespace rumincalc {

struct ShellEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    std::uint64_t samples = 0;
};

// Samples are grouped into fixed-size shards, each drawing from its own
// counter-based stream, and shard totals are combined in index order. The
// result is therefore a pure function of (integrand, shell, N, seed) no
// matter how shards would be scheduled.
inline constexpr std::uint64_t kMcShardSize = 8192;

// Monte Carlo integral of f over the gauge shell R1 <= r(x) <= R2 with
// respect to Haar measure (Lebesgue measure in exponential coordinates).
//
// Every point with r > 0 factors as x = delta_{e^t} y with r(y) in [1, e)
// and t running over an interval of length exactly 1, so
//   I = integral over (y, t) of f(delta_{e^t} y) e^{Qt}
// restricted to the reference annulus and to e^t r(y) in [R1, R2]. Sampling
// y uniformly from the bounding box of the annulus (rejection kept in the
// estimator) and t uniformly from [log R1 - 1, log R2] makes each draw's
// importance follow the measure of the shell per multiplicative step in r,
// which keeps the variance bounded for integrands with r-power growth.
template <class F>
ShellEstimate shell_integral(const StratifiedLieAlgebra& g, F&& f, double R1, double R2, std::uint64_t N,
                             std::uint64_t seed) {
    if (!(R1 > 0.0) || !(R2 > R1)) throw DegenerateShell();
    if (N < 1000) throw UsageError("sample count must be at least 1000");

    const int n = g.n();
    const GaugeEvaluator gauge(g);

    // Bounding box of the reference annulus {1 <= r < e}: r < e forces each
    // layer-s block below e^s in Euclidean norm, hence each coordinate too.
    std::vector<double> half(n);
    double vol_box = 1.0;
    for (int i = 0; i < n; ++i) {
        half[i] = std::exp(static_cast<double>(g.layer_of(i)));
        vol_box *= 2.0 * half[i];
    }

    const double t_lo = std::log(R1) - 1.0;
    const double t_hi = std::log(R2);
    const double t_len = t_hi - t_lo;
    const double q_dim = static_cast<double>(g.Q());

    const std::uint64_t shards = (N + kMcShardSize - 1) / kMcShardSize;
    double sum = 0.0, sumsq = 0.0;
    std::vector<double> y(n), x(n);
    for (std::uint64_t shard = 0; shard < shards; ++shard) {
        CounterRng rng(seed, shard);
        const std::uint64_t lo = shard * kMcShardSize;
        const std::uint64_t hi = std::min<std::uint64_t>(N, lo + kMcShardSize);
        double s = 0.0, s2 = 0.0;
        for (std::uint64_t i = lo; i < hi; ++i) {
            for (int c = 0; c < n; ++c) y[c] = rng.uniform(-half[c], half[c]);
            const double t = rng.uniform(t_lo, t_hi);
            const double ry = gauge.r(y);
            if (ry < 1.0 || ry >= std::exp(1.0)) continue;
            const double et = std::exp(t);
            const double rx = et * ry;
            if (rx < R1 || rx > R2) continue;
            for (int c = 0; c < n; ++c) x[c] = ipow(et, g.layer_of(c)) * y[c];
            const double v = f(x) * std::exp(q_dim * t);
            s += v;
            s2 += v * v;
        }
        sum += s;
        sumsq += s2;
    }

    const double weight = vol_box * t_len;
    const double mean = sum / static_cast<double>(N);
    double var = (sumsq - sum * mean) / static_cast<double>(N - 1);
    if (var < 0.0) var = 0.0;

    ShellEstimate out;
    out.value = weight * mean;
    out.stderr_ = weight * std::sqrt(var / static_cast<double>(N));
    out.samples = N;
    return out;
}

}  // namespace rumincalc
