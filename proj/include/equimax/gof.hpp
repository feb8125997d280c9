#pragma once

// Goodness-of-fit test for exponentiality built on the equidistribution
// property of consecutive maxima: for exponential data,
//
//   T1 = max{X_1..X_{n-1}} + X_n/n   and   T2 = max{X_1..X_n}
//
// have the same distribution. The batch is shuffled once (seeded), split
// into two disjoint halves, and each half is partitioned into groups of n:
// half A yields T1 statistics, half B yields T2. Disjoint halves make the
// two samples independent, so a permutation two-sample KS test is exactly
// calibrated under equidistribution. Non-rejection is evidence of
// equidistribution only; the characterization needs analyticity of the
// density at 0, which no finite sample can check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "equimax/density.hpp"
#include "equimax/rng.hpp"
#include "equimax/version.hpp"

namespace equimax {

struct SampleBatch {
    std::vector<double> values;
    std::string source;  // file path or simulation spec
    std::uint64_t seed = 0;

    SampleBatch(std::vector<double> v, std::string src, std::uint64_t s)
        : values(std::move(v)), source(std::move(src)), seed(s) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!(values[i] > 0.0)) {
                throw std::domain_error("SampleBatch: value at index " + std::to_string(i) +
                                        " is not strictly positive");
            }
        }
    }
};

struct TestReport {
    int n = 0;
    std::size_t m1 = 0;
    std::size_t m2 = 0;
    double ks_statistic = 0.0;
    double p_value = 1.0;
    double alpha = 0.05;
    bool reject = false;
    int B = 0;
    std::uint64_t seed = 0;
    std::string engine_version;
};

namespace detail {

inline void seeded_shuffle(std::vector<double>& v, Philox& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        // unbiased bounded draw (rejection on the tail of 2^64 % i)
        const std::uint64_t bound = i;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t r;
        do {
            r = rng.next();
        } while (r >= limit);
        std::swap(v[i - 1], v[r % bound]);
    }
}

}  // namespace detail

// Partitions `ordered` into two halves of floor(len/2), then each half into
// disjoint groups of n (remainders discarded, at most n-1 per half). No
// shuffling happens here; callers control the ordering.
inline std::pair<std::vector<double>, std::vector<double>> group_statistics(
    std::span<const double> ordered, int n) {
    if (n < 2) {
        throw std::domain_error("group_statistics: requires n >= 2");
    }
    const std::size_t un = static_cast<std::size_t>(n);
    if (ordered.size() < 2 * un) {
        throw std::domain_error("group_statistics: need at least " + std::to_string(2 * un) +
                                " values, got " + std::to_string(ordered.size()));
    }
    const std::size_t half = ordered.size() / 2;
    const std::span<const double> half_a = ordered.subspan(0, half);
    const std::span<const double> half_b = ordered.subspan(half, half);

    std::vector<double> t1;
    std::vector<double> t2;
    t1.reserve(half / un);
    t2.reserve(half / un);
    for (std::size_t g = 0; g + un <= half_a.size(); g += un) {
        double mx = half_a[g];
        for (std::size_t j = 1; j + 1 < un; ++j) {
            mx = std::max(mx, half_a[g + j]);
        }
        // the group's last element is the one scaled by 1/n
        t1.push_back(mx + half_a[g + un - 1] / static_cast<double>(n));
    }
    for (std::size_t g = 0; g + un <= half_b.size(); g += un) {
        double mx = half_b[g];
        for (std::size_t j = 1; j < un; ++j) {
            mx = std::max(mx, half_b[g + j]);
        }
        t2.push_back(mx);
    }
    return {std::move(t1), std::move(t2)};
}

// Seeded shuffle (grouping stream of batch.seed), then group.
inline std::pair<std::vector<double>, std::vector<double>> build_statistics(
    const SampleBatch& batch, int n) {
    std::vector<double> shuffled = batch.values;
    Philox rng(batch.seed, stream::id(stream::kGrouping, 0));
    detail::seeded_shuffle(shuffled, rng);
    return group_statistics(shuffled, n);
}

// Two-sample Kolmogorov-Smirnov sup-distance between empirical cdfs,
// evaluated at every distinct pooled value so ties are handled exactly.
inline double ks_statistic(std::span<const double> u, std::span<const double> v) {
    if (u.empty() || v.empty()) {
        throw std::domain_error("ks_statistic: both samples must be nonempty");
    }
    std::vector<double> su(u.begin(), u.end());
    std::vector<double> sv(v.begin(), v.end());
    std::sort(su.begin(), su.end());
    std::sort(sv.begin(), sv.end());
    const double inv_m = 1.0 / static_cast<double>(su.size());
    const double inv_n = 1.0 / static_cast<double>(sv.size());
    double d = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < su.size() && j < sv.size()) {
        const double t = std::min(su[i], sv[j]);
        while (i < su.size() && su[i] == t) ++i;
        while (j < sv.size() && sv[j] == t) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) * inv_m - static_cast<double>(j) * inv_n));
    }
    // once one sample is exhausted the gap only shrinks back to 0
    return d;
}

// Two-sample statistics are pluggable; KS is the default everywhere.
using TwoSampleStatistic = double (*)(std::span<const double>, std::span<const double>);

// Permutation p-value with the add-one estimator:
// p = (1 + #{b : D_b >= D_obs}) / (B + 1), never zero at finite B.
// Relabeling b draws from the permutation stream with index b, so the
// permutations are independent of everything else and order-insensitive.
inline double permutation_pvalue(std::span<const double> u, std::span<const double> v, int B,
                                 std::uint64_t seed, TwoSampleStatistic stat = &ks_statistic) {
    if (B < 1) {
        throw std::domain_error("permutation_pvalue: B must be >= 1");
    }
    const double d_obs = stat(u, v);
    std::vector<double> pooled;
    pooled.reserve(u.size() + v.size());
    pooled.insert(pooled.end(), u.begin(), u.end());
    pooled.insert(pooled.end(), v.begin(), v.end());
    int count = 0;
    std::vector<double> work;
    for (int b = 0; b < B; ++b) {
        work = pooled;
        Philox rng(seed, stream::id(stream::kPermutation, static_cast<std::uint64_t>(b)));
        detail::seeded_shuffle(work, rng);
        const double d_b = stat(std::span<const double>(work).subspan(0, u.size()),
                                std::span<const double>(work).subspan(u.size()));
        if (d_b >= d_obs) {
            ++count;
        }
    }
    return static_cast<double>(1 + count) / static_cast<double>(B + 1);
}

inline TestReport run_test(const SampleBatch& batch, int n, int B, double alpha,
                           std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("run_test: alpha must lie in (0, 1)");
    }
    const auto [t1, t2] = build_statistics(batch, n);
    TestReport report;
    report.n = n;
    report.m1 = t1.size();
    report.m2 = t2.size();
    report.ks_statistic = ks_statistic(t1, t2);
    report.p_value = permutation_pvalue(t1, t2, B, seed);
    report.alpha = alpha;
    report.reject = report.p_value <= alpha;
    report.B = B;
    report.seed = seed;
    report.engine_version = kEngineVersion;
    return report;
}

struct SimulationReport {
    std::string model_spec;
    std::size_t N = 0;
    int n = 0;
    int reps = 0;
    int B = 0;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    std::vector<double> p_values;
    double rejection_rate = 0.0;
    std::string engine_version;
};

// Size/power harness: `reps` independent datasets drawn from `model` with
// per-replicate derived seeds, run_test on each, rejection fraction out.
inline SimulationReport simulate_size_power(const DensityModel& model, std::size_t N, int n,
                                            int reps, int B, double alpha, std::uint64_t seed) {
    if (reps < 1) {
        throw std::domain_error("simulate_size_power: reps must be >= 1");
    }
    if (N < 2 * static_cast<std::size_t>(n)) {
        throw std::domain_error("simulate_size_power: N must be at least 2n");
    }
    SimulationReport sim;
    sim.model_spec = model.spec_string();
    sim.N = N;
    sim.n = n;
    sim.reps = reps;
    sim.B = B;
    sim.alpha = alpha;
    sim.seed = seed;
    sim.engine_version = kEngineVersion;
    sim.p_values.reserve(static_cast<std::size_t>(reps));
    int rejections = 0;
    for (int r = 0; r < reps; ++r) {
        const std::uint64_t rep_seed = derive_seed(seed, static_cast<std::uint64_t>(r));
        SampleBatch batch(model.sample(N, rep_seed), sim.model_spec + "#rep" + std::to_string(r),
                          rep_seed);
        const TestReport t = run_test(batch, n, B, alpha, rep_seed);
        sim.p_values.push_back(t.p_value);
        rejections += t.reject ? 1 : 0;
    }
    sim.rejection_rate = static_cast<double>(rejections) / static_cast<double>(reps);
    return sim;
}

}  // namespace equimax
