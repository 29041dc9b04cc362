#include <wienerlab/estimator.hpp>
#include <wienerlab/grid.hpp>
#include <wienerlab/parallel.hpp>
#include <wienerlab/path.hpp>
#include <wienerlab/random.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

using namespace wienerlab;

TEST(TimeGrid, UniformTimesAndIndexLookup)
{
    const TimeGrid g(8);
    EXPECT_EQ(g.steps(), 8u);
    EXPECT_DOUBLE_EQ(g.dt(), 0.125);
    EXPECT_DOUBLE_EQ(g.time(0), 0.0);
    EXPECT_DOUBLE_EQ(g.time(8), 1.0);
    EXPECT_EQ(g.index_of(0.25), 2u);
    EXPECT_EQ(g.index_of(1.0), 8u);
    EXPECT_THROW(g.index_of(0.3), std::invalid_argument);
    EXPECT_THROW(g.index_of(1.5), std::invalid_argument);
}

TEST(TimeGrid, RejectsEmptyGrid)
{
    EXPECT_THROW(TimeGrid(0), std::invalid_argument);
    EXPECT_THROW(make_grid(0), std::invalid_argument);
    EXPECT_THROW(make_grid(-3), std::invalid_argument);
    EXPECT_EQ(make_grid(1).steps(), 1u);
}

TEST(Random, Mix64MatchesSplitMix64Reference)
{
    // first output of the reference SplitMix64 seeded with 0
    EXPECT_EQ(mix64(0x9e3779b97f4a7c15ULL), 0xe220a8397b1dcdafULL);
    EXPECT_EQ(mix64(1), 0x5692161d100b05e5ULL);
}

TEST(Random, StreamsAreReproducibleAndDistinct)
{
    const RandomSource s{42, 0};
    CounterRng a(s.path(7));
    CounterRng b(s.path(7));
    CounterRng c(s.path(8));
    CounterRng d(s.split(1).path(7));
    std::set<std::uint64_t> firsts;
    for (int k = 0; k < 4; ++k) {
        const auto x = a.next_u64();
        EXPECT_EQ(x, b.next_u64());
        firsts.insert(x);
    }
    firsts.insert(c.next_u64());
    firsts.insert(d.next_u64());
    EXPECT_EQ(firsts.size(), 6u);
    EXPECT_NE(s.split(1), s.split(2));
}

TEST(Random, NormalMomentsMatchStandardGaussian)
{
    CounterRng rng(RandomSource{3, 0});
    MomentAccumulator m1, m4;
    const int count = 200000;
    for (int k = 0; k < count; ++k) {
        const double z = rng.next_normal();
        m1.add(z);
        m4.add(z * z * z * z);
    }
    // mean 0, variance 1, fourth moment 3; tolerances are 5 standard errors
    EXPECT_NEAR(m1.mean(), 0.0, 5.0 / std::sqrt(count));
    EXPECT_NEAR(m1.variance(), 1.0, 5.0 * std::sqrt(2.0 / count));
    EXPECT_NEAR(m4.mean(), 3.0, 5.0 * std::sqrt(96.0 / count));
}

TEST(Random, UniformStaysInsideOpenInterval)
{
    CounterRng rng(RandomSource{0, 0});
    for (int k = 0; k < 100000; ++k) {
        const double u = rng.next_uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(WienerPath, ValuesAreCumulativeIncrements)
{
    const TimeGrid g(4);
    const WienerPath w(g, {0.5, -1.0, 0.25, 2.0});
    EXPECT_DOUBLE_EQ(w.value(0), 0.0);
    EXPECT_DOUBLE_EQ(w.value(2), -0.5);
    EXPECT_DOUBLE_EQ(w.value(4), 1.75);
    EXPECT_THROW(WienerPath(g, {1.0, 2.0}), std::invalid_argument);

    const WienerPath s = w.shifted(1, 0.5);
    EXPECT_DOUBLE_EQ(s.value(1), w.value(1));
    EXPECT_DOUBLE_EQ(s.value(2), w.value(2) + 0.5);
    EXPECT_DOUBLE_EQ(w.scaled(2.0).value(4), 3.5);
}

TEST(WienerPath, BuilderExposesOnlyTheFilledPrefix)
{
    const TimeGrid g(3);
    PathBuilder b(g);
    b.push(1.0);
    EXPECT_EQ(b.filled(), 1u);
    EXPECT_DOUBLE_EQ(b.path().value(1), 1.0);
    b.push(-2.0);
    b.push(0.5);
    EXPECT_THROW(b.push(1.0), std::logic_error);
    const WienerPath w = std::move(b).finish();
    EXPECT_DOUBLE_EQ(w.value(3), -0.5);
}

TEST(WienerPath, SampledIncrementsHaveVarianceDt)
{
    const TimeGrid g(64);
    MomentAccumulator end, inc;
    const RandomSource s{11, 0};
    for (std::uint64_t k = 0; k < 20000; ++k) {
        const WienerPath w = sample_path(g, s.path(k));
        end.add(w.value(64));
        inc.add(w.increment(17) / std::sqrt(g.dt()));
    }
    EXPECT_NEAR(end.mean(), 0.0, 0.04);
    EXPECT_NEAR(end.variance(), 1.0, 0.05);
    EXPECT_NEAR(inc.variance(), 1.0, 0.05);
    EXPECT_EQ(sample_path(g, s.path(3)).increments()[5],
              sample_path(g, s.path(3)).increments()[5]);
}

TEST(WienerPath, CoarseningSumsFineIncrements)
{
    const TimeGrid g(8);
    const WienerPath fine = sample_path(g, RandomSource{5, 0});
    const WienerPath coarse = coarsen(fine, 2);
    EXPECT_EQ(coarse.steps(), 2u);
    EXPECT_NEAR(coarse.value(1), fine.value(4), 1e-15);
    EXPECT_NEAR(coarse.value(2), fine.value(8), 1e-15);
    EXPECT_THROW(coarsen(fine, 3), std::invalid_argument);
    EXPECT_DOUBLE_EQ(sup_distance(coarsen(fine, 8), fine), 0.0);
}

TEST(CameronMartin, NormsAndPrimitive)
{
    const TimeGrid g(4);
    const CameronMartinVector h(g, {1.0, 2.0, -1.0, 0.0});
    EXPECT_DOUBLE_EQ(h_norm_sq(h), (1.0 + 4.0 + 1.0) * 0.25);
    const auto prim = cumulative_integral(h);
    ASSERT_EQ(prim.size(), 5u);
    EXPECT_DOUBLE_EQ(prim[2], 0.75);
    EXPECT_DOUBLE_EQ(prim[4], 0.5);
    EXPECT_DOUBLE_EQ(h_distance(h, CameronMartinVector(g)), std::sqrt(h_norm_sq(h)));
    EXPECT_THROW(CameronMartinVector(g, {1.0}), std::invalid_argument);
}

TEST(Estimator, MatchesTwoPassFormulas)
{
    const std::vector<double> x{2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0};
    const MCEstimate e = estimate_of(x);
    // mean 5, unbiased variance 32/7
    EXPECT_DOUBLE_EQ(e.mean, 5.0);
    EXPECT_NEAR(e.std_error, std::sqrt(32.0 / 7.0 / 8.0), 1e-14);
    EXPECT_EQ(e.count, 8u);
}

TEST(Estimator, MergedPartialsEqualTheWhole)
{
    CounterRng rng(RandomSource{9, 0});
    std::vector<double> x(1001);
    for (double& v : x) {
        v = 3.0 + rng.next_normal();
    }
    MomentAccumulator left, right, whole;
    for (std::size_t k = 0; k < x.size(); ++k) {
        (k < 400 ? left : right).add(x[k]);
        whole.add(x[k]);
    }
    left.merge(right);
    EXPECT_EQ(left.count(), whole.count());
    EXPECT_NEAR(left.mean(), whole.mean(), 1e-13);
    EXPECT_NEAR(left.variance(), whole.variance(), 1e-12);

    MomentAccumulator empty;
    empty.merge(whole);
    EXPECT_DOUBLE_EQ(empty.mean(), whole.mean());
}

TEST(Estimator, TailStatsAndQuantiles)
{
    std::vector<double> x(200, 1.0);
    x[17] = 1000.0;
    const TailStats t = tail_stats(x);
    EXPECT_DOUBLE_EQ(t.max_sample, 1000.0);
    // top 1% of 200 samples is the two largest
    EXPECT_NEAR(t.top1_share, 1001.0 / 1199.0, 1e-12);

    std::vector<double> q(1000);
    std::iota(q.begin(), q.end(), 1.0);
    EXPECT_DOUBLE_EQ(quantile(q, 0.999), 999.0);
    EXPECT_DOUBLE_EQ(quantile(q, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(quantile(q, 1.0), 1000.0);

    const MCEstimate a{0.0, 3.0, 10};
    const MCEstimate b{0.0, 4.0, 10};
    EXPECT_DOUBLE_EQ(combined_stderr(a, b), 5.0);
}

TEST(Parallel, ResultsDoNotDependOnScheduling)
{
    const std::size_t count = 5000;
    std::vector<double> par(count), seq(count);
    const RandomSource s{1, 0};
    parallel_for(count, [&](std::size_t k) { par[k] = CounterRng(s.path(k)).next_normal(); });
    for (std::size_t k = 0; k < count; ++k) {
        seq[k] = CounterRng(s.path(k)).next_normal();
    }
    EXPECT_EQ(par, seq);
    EXPECT_THROW(parallel_for(count, [](std::size_t k) {
                     if (k == 4000) {
                         throw std::runtime_error("boom");
                     }
                 }),
                 std::runtime_error);
}
