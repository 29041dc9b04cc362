#include <wienerlab/drifts.hpp>
#include <wienerlab/malliavin.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

using namespace wienerlab;

namespace {

WienerPath path_on(std::size_t n, std::uint64_t k)
{
    return sample_path(TimeGrid(n), RandomSource{77, 0}.path(k));
}

class NanAtThree final : public AdaptedDrift {
public:
    std::string name() const override { return "nan-at-three"; }
    double eval(const WienerPath& w, std::size_t i) const override
    {
        return i == 3 ? std::numeric_limits<double>::quiet_NaN() : w.value(i);
    }
};

} // namespace

TEST(Det2, MatchesDirectFormula)
{
    Matrix a(2, 2);
    a << 0.5, 0.2, 0.1, -0.3;
    // det(I + A) exp(-tr A) = (1.5 * 0.7 - 0.02) * exp(-0.2)
    EXPECT_NEAR(det2(a), 0.8432926756703213, 1e-15);
    Matrix singular(1, 1);
    singular << -1.0;
    EXPECT_DOUBLE_EQ(det2(singular), 0.0);
    EXPECT_THROW(det2(Matrix(2, 3)), std::invalid_argument);
}

TEST(Det2, QuasiNilpotentOperatorsHaveUnitDeterminant)
{
    for (const DriftSpec& spec : catalog_specs()) {
        const DriftPtr d = make_builtin(spec);
        for (std::uint64_t k = 0; k < 3; ++k) {
            const MalliavinMatrix m = malliavin_matrix_fd(*d, path_on(32, k));
            EXPECT_NEAR(det2(m), 1.0, 1e-10) << spec.type;
            EXPECT_DOUBLE_EQ(adaptedness_defect(m), 0.0) << spec.type;
        }
    }
}

TEST(Carleman, DiagonalOracle)
{
    Matrix a = Matrix::Zero(3, 3);
    a.diagonal() << 0.5, -0.5, 2.0;
    const CarlemanResult r = carleman_check(a);
    EXPECT_NEAR(r.lhs, 0.6090087745647572, 1e-14);
    EXPECT_NEAR(r.rhs, 15.642631884188171, 1e-12);
    EXPECT_TRUE(r.ok);
    EXPECT_THROW(carleman_check(Matrix(3, 2)), std::invalid_argument);
}

TEST(Carleman, HoldsOnRandomMatrices)
{
    CounterRng rng(RandomSource{12, 0});
    for (int trial = 0; trial < 200; ++trial) {
        const int dim = 1 + trial % 12;
        Matrix a(dim, dim);
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                a(i, j) = 0.6 * rng.next_normal();
            }
        }
        const CarlemanResult r = carleman_check(a);
        EXPECT_LE(r.lhs, r.rhs * (1.0 + 1e-12));
        EXPECT_TRUE(r.ok);
    }
}

TEST(HilbertSchmidt, OuClosedForm)
{
    const std::size_t n = 256;
    const double dt = 1.0 / n;
    const double expected = dt * dt * n * (n - 1) / 2.0; // 0.498046875
    const WienerPath w = path_on(n, 1);
    EXPECT_NEAR(hs_norm_sq(malliavin_matrix_analytic(*make_ou(1.0), w)), expected, 1e-14);
    EXPECT_NEAR(hs_norm_sq(malliavin_matrix_fd(*make_ou(1.0), w)), expected, 1e-9);
    EXPECT_DOUBLE_EQ(expected, 0.498046875);
}

TEST(HilbertSchmidt, LinearVolterraClosedForm)
{
    // sum_{j<i} exp(-2 lambda (i - j) dt) dt^2 with a = 1, lambda = 2, n = 32
    const MalliavinMatrix m =
        malliavin_matrix(*make_linear_volterra(1.0, 2.0), path_on(32, 2), MatrixRoute::automatic);
    EXPECT_EQ(m.provenance, KernelProvenance::analytic);
    EXPECT_NEAR(hs_norm_sq(m), 0.17342499082704532, 1e-14);
}

TEST(Routes, FiniteDifferencesAgreeWithAnalyticKernels)
{
    for (const DriftSpec& spec : catalog_specs()) {
        const DriftPtr d = make_builtin(spec);
        const WienerPath w = path_on(24, 3);
        if (!d->kernel(w)) {
            EXPECT_THROW(malliavin_matrix_analytic(*d, w), std::invalid_argument) << spec.type;
            EXPECT_EQ(malliavin_matrix(*d, w).provenance, KernelProvenance::finite_difference);
            continue;
        }
        const MalliavinMatrix fd = malliavin_matrix(*d, w, MatrixRoute::finite_difference);
        const MalliavinMatrix an = malliavin_matrix(*d, w);
        EXPECT_EQ(fd.provenance, KernelProvenance::finite_difference);
        EXPECT_EQ(an.provenance, KernelProvenance::analytic);
        EXPECT_LT((fd.entries - an.entries).cwiseAbs().maxCoeff(), 1e-6) << spec.type;
    }
}

TEST(Routes, FiniteDifferenceErrors)
{
    const WienerPath w = path_on(8, 4);
    EXPECT_THROW(malliavin_matrix_fd(*make_ou(1.0), w, 0.0), std::invalid_argument);
    try {
        malliavin_matrix_fd(NanAtThree{}, w);
        FAIL() << "expected std::runtime_error";
    } catch (const std::runtime_error& e) {
        EXPECT_NE(std::string(e.what()).find("i=3"), std::string::npos) << e.what();
    }
}

TEST(OperatorStats, OuHasZeroTraceAndUnitDeterminant)
{
    const MalliavinMatrix m = malliavin_matrix(*make_ou(2.0), path_on(16, 5));
    const OperatorStats s = operator_stats(m);
    EXPECT_DOUBLE_EQ(s.trace, 0.0);
    EXPECT_NEAR(s.det2, 1.0, 1e-14);
    EXPECT_NEAR(s.hs_norm_sq, 4.0 * 16 * 15 / 2.0 / 256.0, 1e-13);
    EXPECT_GT(s.op_norm, 0.0);
    EXPECT_LE(s.op_norm * s.op_norm, s.hs_norm_sq + 1e-14);
}

TEST(RowNorms, OuRowsHaveOneJump)
{
    const std::size_t n = 16;
    const MalliavinMatrix m = malliavin_matrix(*make_ou(0.5), path_on(n, 6));
    EXPECT_DOUBLE_EQ(row_lipschitz_sup(m), 0.5);
    EXPECT_NEAR(row_h_norm_sup(m), 0.5 * std::sqrt((n - 1.0) / n), 1e-15);
}

TEST(Mehler, ZeroTimeIsIdentity)
{
    const PathFunctional f = [](const WienerPath& w) { return w.value(w.steps()); };
    const WienerPath w = path_on(8, 7);
    const MCEstimate e = mehler_apply(f, w, 0.0, 10, RandomSource{1, 1});
    EXPECT_DOUBLE_EQ(e.mean, w.value(8));
    EXPECT_DOUBLE_EQ(e.std_error, 0.0);
}

TEST(Mehler, SquareOfEndpoint)
{
    // P_tau W(1)^2 = e^{-2 tau} w^2 + 1 - e^{-2 tau}
    const PathFunctional f = [](const WienerPath& w) {
        const double x = w.value(w.steps());
        return x * x;
    };
    const WienerPath w = path_on(16, 8);
    const double x = w.value(16);
    for (double tau : {0.1, 0.5, 2.0}) {
        const MCEstimate e = mehler_apply(f, w, tau, 40000, RandomSource{4, 4});
        const double q = std::exp(-2.0 * tau);
        EXPECT_NEAR(e.mean, q * x * x + 1.0 - q, 4.0 * e.std_error) << tau;
    }
}

TEST(Mehler, SmoothedDriftIsDeterministicAndAdapted)
{
    const auto s = mehler_smooth(make_bounded_sin(1.0), 0.3, 64, RandomSource{2, 9});
    const WienerPath w = path_on(16, 9);
    const auto a = s->eval_all(w);
    EXPECT_EQ(a, s->eval_all(w));
    for (std::size_t i = 0; i < 16; ++i) {
        EXPECT_DOUBLE_EQ(s->eval(w, i), a[i]);
    }
    const auto bumped = s->eval_all(w.shifted(10, 0.4));
    for (std::size_t i = 0; i <= 10; ++i) {
        EXPECT_EQ(bumped[i], a[i]);
    }
    EXPECT_LE(*s->density_bound(), std::exp(-0.3) + 1e-15);
    EXPECT_THROW(mehler_smooth(make_ou(1.0), -0.1, 4, RandomSource{}), std::invalid_argument);
    EXPECT_THROW(mehler_smooth(make_ou(1.0), 0.1, 0, RandomSource{}), std::invalid_argument);
}

TEST(Mehler, ConstantDriftIsOnlyRescaled)
{
    const auto s = mehler_smooth(make_constant_h(2.0), 0.25, 8, RandomSource{3, 3});
    const auto u = s->eval_all(path_on(8, 10));
    for (double v : u) {
        EXPECT_NEAR(v, 2.0 * std::exp(-0.25), 1e-14);
    }
}

TEST(Mehler, SmoothedOuKernelIsShrunk)
{
    // the smoothed OU drift is affine in w with slope e^{-2 tau} a
    const double tau = 0.4;
    const auto s = mehler_smooth(make_ou(1.0), tau, 32, RandomSource{5, 5});
    const MalliavinMatrix m = malliavin_matrix(*s, path_on(16, 11));
    const MalliavinMatrix base = malliavin_matrix(*make_ou(1.0), path_on(16, 11));
    EXPECT_LT((m.entries - std::exp(-2.0 * tau) * base.entries).cwiseAbs().maxCoeff(), 1e-12);
}
