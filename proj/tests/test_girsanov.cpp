#include <wienerlab/drifts.hpp>
#include <wienerlab/girsanov.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

using namespace wienerlab;

TEST(Ito, LeftEndpointSum)
{
    const TimeGrid g(4);
    const WienerPath w(g, {0.5, -1.0, 0.25, 2.0});
    const CameronMartinVector u(g, {1.0, 2.0, 3.0, -1.0});
    EXPECT_DOUBLE_EQ(ito_integral(u, w), 0.5 - 2.0 + 0.75 - 2.0);
    EXPECT_THROW(ito_integral(CameronMartinVector(TimeGrid(2)), w), std::invalid_argument);
}

TEST(Weight, ConstantShiftHasClosedForm)
{
    const double c = 0.5;
    const DriftPtr d = make_constant_h(c);
    for (std::uint64_t k = 0; k < 20; ++k) {
        const WienerPath w = sample_path(TimeGrid(32), RandomSource{1, 0}.path(k));
        const GirsanovWeight gw = girsanov_weight(*d, w);
        EXPECT_NEAR(gw.delta0_u, c * w.value(32), 1e-13);
        EXPECT_NEAR(gw.h_norm_sq, c * c, 1e-14);
        EXPECT_NEAR(gw.rho, std::exp(-c * w.value(32) - 0.5 * c * c), 1e-13);
        EXPECT_FALSE(gw.overflow);
    }
}

TEST(Weight, OverflowIsFlaggedInsteadOfReturningGarbage)
{
    const TimeGrid g(1);
    const WienerPath w(g, {100.0});
    const CameronMartinVector u(g, {-10.0});
    const GirsanovWeight gw = girsanov_weight(u, w);
    EXPECT_DOUBLE_EQ(gw.log_rho, 1000.0 - 50.0);
    EXPECT_TRUE(gw.overflow);
    EXPECT_TRUE(std::isinf(gw.rho));
}

TEST(Normalization, ZeroDriftIsExactlyOne)
{
    const MomentReport r = expect_rho(*make_zero_drift(), TimeGrid(16), 100, RandomSource{3, 0});
    EXPECT_DOUBLE_EQ(r.estimate.mean, 1.0);
    EXPECT_DOUBLE_EQ(r.estimate.std_error, 0.0);
    EXPECT_EQ(r.estimate.count, 100u);
    EXPECT_THROW(expect_rho(*make_zero_drift(), TimeGrid(16), 1, RandomSource{}),
                 std::invalid_argument);
}

TEST(Normalization, BoundedDriftsAverageToOne)
{
    const TimeGrid g(64);
    for (const DriftPtr& d : {make_bounded_sin(1.0), make_constant_h(1.0), make_tsirelson()}) {
        const MomentReport r = expect_rho(*d, g, 20000, RandomSource{7, 0});
        EXPECT_NEAR(r.estimate.mean, 1.0, 4.0 * r.estimate.std_error) << d->name();
        EXPECT_EQ(normalization_verdict(r.estimate), NormalizationVerdict::consistent_with_one);
        EXPECT_LT(r.tails.top1_share, 0.5);
    }
}

TEST(Normalization, VerdictReadsStandardErrors)
{
    EXPECT_EQ(normalization_verdict({0.9, 0.01, 100}), NormalizationVerdict::below_one);
    EXPECT_EQ(normalization_verdict({0.98, 0.01, 100}), NormalizationVerdict::consistent_with_one);
    EXPECT_EQ(normalization_verdict({0.98, 0.01, 100}, 1.0), NormalizationVerdict::below_one);
    EXPECT_EQ(normalization_verdict({1.5, 0.01, 100}), NormalizationVerdict::consistent_with_one);
    EXPECT_EQ(to_string(NormalizationVerdict::below_one), "below-one");
}

TEST(Entropy, ConstantShiftEntropyIsHalfTheEnergy)
{
    // for a constant density c both sides equal c^2 / 2
    const double c = 0.8;
    const EstimatePair p =
        entropy_identity_check(*make_constant_h(c), TimeGrid(16), 40000, RandomSource{5, 0});
    EXPECT_NEAR(p.lhs.mean, 0.5 * c * c, 4.0 * p.lhs.std_error);
    EXPECT_NEAR(p.rhs.mean, 0.5 * c * c, 4.0 * p.rhs.std_error);
}

TEST(Entropy, IdentityHoldsForBoundedSin)
{
    const EstimatePair p =
        entropy_identity_check(*make_bounded_sin(1.0), TimeGrid(64), 20000, RandomSource{6, 0});
    EXPECT_NEAR(p.lhs.mean, p.rhs.mean, 4.0 * combined_stderr(p.lhs, p.rhs));
    EXPECT_GT(p.lhs.mean, 0.0);
}

TEST(ChangeOfVariables, ShiftedFunctionalsKeepTheirLaw)
{
    const PathFunctional f = [](const WienerPath& w) { return std::cos(w.value(w.steps())); };
    for (const DriftPtr& d : {make_constant_h(0.7), make_bounded_sin(1.0), make_ou(0.5)}) {
        const EstimatePair p = change_of_var_check(*d, f, TimeGrid(64), 20000, RandomSource{8, 0});
        EXPECT_NEAR(p.lhs.mean, p.rhs.mean, 4.0 * combined_stderr(p.lhs, p.rhs)) << d->name();
    }
    // E[cos W(1)] = exp(-1/2)
    const EstimatePair z =
        change_of_var_check(*make_zero_drift(), f, TimeGrid(8), 40000, RandomSource{9, 0});
    EXPECT_DOUBLE_EQ(z.lhs.mean, z.rhs.mean);
    EXPECT_NEAR(z.rhs.mean, std::exp(-0.5), 4.0 * z.rhs.std_error);
}
