#include <wienerlab/drifts.hpp>
#include <wienerlab/path.hpp>
#include <wienerlab/random.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

using namespace wienerlab;

namespace {

WienerPath random_path(std::size_t n, std::uint64_t k)
{
    return sample_path(TimeGrid(n), RandomSource{2024, 0}.path(k));
}

} // namespace

TEST(DriftFormulas, ClosedFormDensities)
{
    const WienerPath w = random_path(16, 0);
    const double dt = w.grid().dt();
    for (std::size_t i = 0; i < 16; ++i) {
        const double t = w.grid().time(i);
        EXPECT_DOUBLE_EQ(make_zero_drift()->eval(w, i), 0.0);
        EXPECT_DOUBLE_EQ(make_constant_h(0.3)->eval(w, i), 0.3);
        EXPECT_NEAR(make_ou(0.7)->eval(w, i), 0.7 * w.value(i), 1e-15);
        EXPECT_NEAR(make_bounded_sin(2.0)->eval(w, i), 2.0 * std::sin(w.value(i)), 1e-15);
        const double factor = i == 0 ? std::pow(dt, -0.3) : std::pow(t, -0.3);
        EXPECT_NEAR(make_singular_alpha(1.5, 0.3)->eval(w, i), 1.5 * factor * std::sin(w.value(i)),
                    1e-13);
        double volterra = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
            volterra += std::exp(-2.0 * (t - w.grid().time(j))) * w.increment(j);
        }
        EXPECT_NEAR(make_linear_volterra(0.5, 2.0)->eval(w, i), 0.5 * volterra, 1e-14);
    }
}

TEST(DriftFormulas, EvalAllAgreesWithPointwiseEval)
{
    const WienerPath w = random_path(32, 1);
    for (const DriftSpec& spec : catalog_specs()) {
        const DriftPtr d = make_builtin(spec);
        const auto all = d->eval_all(w);
        ASSERT_EQ(all.size(), 32u) << spec.type;
        for (std::size_t i = 0; i < 32; ++i) {
            EXPECT_NEAR(all[i], d->eval(w, i), 1e-13) << spec.type << " at " << i;
        }
    }
}

TEST(DriftFormulas, CheckedEvaluationRejectsOutOfRange)
{
    const WienerPath w = random_path(8, 2);
    EXPECT_THROW(eval_drift(*make_ou(1.0), w, 8), std::invalid_argument);
    EXPECT_NO_THROW(eval_drift(*make_ou(1.0), w, 7));
    const CameronMartinVector h = drift_to_cm(*make_ou(1.0), w);
    EXPECT_DOUBLE_EQ(h.density[5], w.value(5));
}

TEST(Adaptedness, CatalogIgnoresFutureIncrements)
{
    const std::size_t n = 32;
    for (const DriftSpec& spec : catalog_specs()) {
        const DriftPtr d = make_builtin(spec);
        for (std::uint64_t k = 0; k < 5; ++k) {
            const WienerPath w = random_path(n, 10 + k);
            const auto base = d->eval_all(w);
            for (std::size_t j = 0; j < n; ++j) {
                const auto bumped = d->eval_all(w.shifted(j, 0.37));
                for (std::size_t i = 0; i <= j; ++i) {
                    ASSERT_EQ(bumped[i], base[i]) << spec.type << " i=" << i << " j=" << j;
                }
            }
        }
    }
}

TEST(Kernels, AnalyticKernelsMatchFiniteDifferences)
{
    const std::size_t n = 16;
    const double eps = 1e-6;
    for (const DriftSpec& spec : catalog_specs()) {
        const DriftPtr d = make_builtin(spec);
        const WienerPath w = random_path(n, 40);
        const auto K = d->kernel(w);
        if (!K) {
            continue;
        }
        const auto base = d->eval_all(w);
        for (std::size_t j = 0; j < n; ++j) {
            const auto up = d->eval_all(w.shifted(j, eps));
            const auto down = d->eval_all(w.shifted(j, -eps));
            for (std::size_t i = 0; i < n; ++i) {
                const double fd = (up[i] - down[i]) / (2.0 * eps);
                EXPECT_NEAR((*K)(i, j), fd, 1e-5 * (1.0 + std::abs(fd)))
                    << spec.type << " (" << i << "," << j << ")";
            }
        }
    }
}

TEST(Kernels, OuKernelIsStrictlyLowerAndConstant)
{
    const auto K = make_ou(1.5)->kernel(random_path(6, 3));
    ASSERT_TRUE(K.has_value());
    for (Eigen::Index i = 0; i < 6; ++i) {
        for (Eigen::Index j = 0; j < 6; ++j) {
            EXPECT_DOUBLE_EQ((*K)(i, j), j < i ? 1.5 : 0.0);
        }
    }
}

TEST(Tsirelson, DyadicFractionalParts)
{
    const TimeGrid g(8);
    const WienerPath w(g, {0.3, -0.1, 0.25, 0.4, -0.2, 0.1, 0.05, -0.3});
    const auto u = make_tsirelson()->eval_all(w);
    // [4, 8): frac((W4 - W2) / 0.25) = frac(0.65 / 0.25) = 0.6
    // [2, 4): frac((W2 - W1) / 0.125) = frac(-0.1 / 0.125) = 0.2
    const std::vector<double> expected{0.0, 0.0, 0.2, 0.2, 0.6, 0.6, 0.6, 0.6};
    for (std::size_t i = 0; i < 8; ++i) {
        EXPECT_NEAR(u[i], expected[i], 1e-12) << i;
    }
    EXPECT_FALSE(make_tsirelson()->smooth_in_path());
    EXPECT_EQ(make_tsirelson()->density_bound(), 1.0);
}

TEST(Bump, ValuesAndDerivative)
{
    EXPECT_DOUBLE_EQ(smooth_bump(0.0), 1.0);
    EXPECT_DOUBLE_EQ(smooth_bump(-1.0), 1.0);
    EXPECT_DOUBLE_EQ(smooth_bump(1.25), 0.875);
    EXPECT_DOUBLE_EQ(smooth_bump(-1.5), 0.5);
    EXPECT_DOUBLE_EQ(smooth_bump(1.75), 0.125);
    EXPECT_DOUBLE_EQ(smooth_bump(2.0), 0.0);
    EXPECT_DOUBLE_EQ(smooth_bump(-7.0), 0.0);
    EXPECT_DOUBLE_EQ(smooth_bump_derivative(1.5), -kBumpSlope);
    EXPECT_DOUBLE_EQ(smooth_bump_derivative(-1.5), kBumpSlope);
    EXPECT_DOUBLE_EQ(smooth_bump_derivative(0.5), 0.0);
    const double h = 1e-6;
    for (double x : {1.1, 1.3, 1.6, 1.9, -1.2}) {
        const double fd = (smooth_bump(x + h) - smooth_bump(x - h)) / (2.0 * h);
        EXPECT_NEAR(smooth_bump_derivative(x), fd, 1e-6);
    }
}

TEST(Truncation, SmoothTruncationIsBoundedAndExactInside)
{
    const DriftPtr ou = make_ou(3.0);
    const DriftPtr t = truncate_smooth(ou, 1.0);
    EXPECT_EQ(t->density_bound(), 2.0);
    for (std::uint64_t k = 0; k < 50; ++k) {
        const WienerPath w = random_path(32, 100 + k);
        const auto inner = ou->eval_all(w);
        const auto outer = t->eval_all(w);
        for (std::size_t i = 0; i < 32; ++i) {
            EXPECT_LE(std::abs(outer[i]), 2.0);
            if (std::abs(inner[i]) <= 1.0) {
                EXPECT_DOUBLE_EQ(outer[i], inner[i]);
            }
        }
    }
    EXPECT_THROW(truncate_smooth(ou, 0.0), std::invalid_argument);
}

TEST(Truncation, ThetaCutoffAgreesBeforeExit)
{
    const DriftPtr ou = make_ou(2.0);
    const DriftPtr t = truncate_theta(ou, 0.5);
    for (std::uint64_t k = 0; k < 50; ++k) {
        const WienerPath w = random_path(32, 200 + k);
        const std::size_t exit = theta_exit_index(*ou, w, 0.5);
        const auto inner = ou->eval_all(w);
        const auto outer = t->eval_all(w);
        for (std::size_t i = 0; i < exit; ++i) {
            EXPECT_DOUBLE_EQ(outer[i], inner[i]);
        }
        if (exit < 32) {
            EXPECT_GT(inner[exit] * inner[exit], 0.5);
        }
        for (std::size_t i = 0; i < 32; ++i) {
            if (inner[i] * inner[i] > 1.5) {
                EXPECT_DOUBLE_EQ(outer[i], 0.0);
            }
        }
    }
}

TEST(Stopped, FreezesOnceEnergyExceedsLevel)
{
    const DriftPtr c = make_constant_h(2.0);
    const auto s = stop_at_level(c, 1.0);
    const WienerPath w = random_path(16, 5);
    // energy before step i is 4 i / 16, which first exceeds 1 at i = 5
    EXPECT_EQ(s->stopping_index(w), 5u);
    const auto u = s->eval_all(w);
    for (std::size_t i = 0; i < 16; ++i) {
        EXPECT_DOUBLE_EQ(u[i], i < 5 ? 2.0 : 0.0);
    }
    EXPECT_THROW(stop_at_level(c, -1.0), std::invalid_argument);
    const auto never = stop_at_level(make_zero_drift(), 1.0);
    EXPECT_EQ(never->stopping_index(w), 16u);
}

TEST(Piecewise, DispatchesOnSignAfterSwitch)
{
    const DriftPtr first = make_constant_h(1.0);
    const DriftPtr second = make_constant_h(-1.0);
    const DriftPtr d = make_piecewise(0.5, first, second);
    const TimeGrid g(4);
    const WienerPath up(g, {0.1, 0.1, -0.5, -0.5});
    const WienerPath down(g, {-0.1, -0.1, 0.5, 0.5});
    EXPECT_EQ(d->eval_all(up), (std::vector<double>{1.0, 1.0, 1.0, 1.0}));
    EXPECT_EQ(d->eval_all(down), (std::vector<double>{1.0, 1.0, -1.0, -1.0}));
    const DriftPtr forced = make_piecewise(0.5, first, second, PiecewiseBranch::second);
    EXPECT_EQ(forced->eval_all(up), (std::vector<double>{1.0, 1.0, -1.0, -1.0}));
}

TEST(Builtin, CatalogCoversEveryTag)
{
    std::vector<std::string> seen;
    for (const DriftSpec& spec : catalog_specs()) {
        const DriftPtr d = make_builtin(spec);
        ASSERT_TRUE(d->spec().has_value());
        EXPECT_EQ(*d->spec(), spec);
        seen.push_back(spec.type);
    }
    EXPECT_EQ(seen, supported_drift_tags());
}

TEST(Builtin, RejectsBadSpecs)
{
    try {
        make_builtin(DriftSpec{"nope", {}, {}});
        FAIL() << "expected std::invalid_argument";
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        for (const std::string& tag : supported_drift_tags()) {
            EXPECT_NE(msg.find(tag), std::string::npos) << tag;
        }
    }
    EXPECT_THROW(make_builtin(DriftSpec{"ou", {{"b", 1.0}}, {}}), std::invalid_argument);
    EXPECT_THROW(make_builtin(DriftSpec{"singular-alpha", {{"alpha", 0.5}}, {}}),
                 std::invalid_argument);
    EXPECT_THROW(make_builtin(DriftSpec{"stopped", {{"level", 1.0}}, {}}), std::invalid_argument);
    EXPECT_THROW(make_builtin(DriftSpec{"truncated", {{"level", -2.0}}, {DriftSpec{"ou", {}, {}}}}),
                 std::invalid_argument);
    EXPECT_THROW(make_builtin(DriftSpec{"piecewise", {{"time", 1.5}},
                                        {DriftSpec{"zero", {}, {}}, DriftSpec{"zero", {}, {}}}}),
                 std::invalid_argument);
}
