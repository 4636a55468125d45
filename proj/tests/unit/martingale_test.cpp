#include <cmath>

#include <gtest/gtest.h>

#include "lpmult/error.hpp"
#include "lpmult/martingale.hpp"
#include "support/oracles.hpp"

using namespace lpmult;

namespace {

std::vector<double> as_alpha(const std::vector<int>& beta)
{
    return {beta.begin(), beta.end()};
}

} // namespace

TEST(EvaluateSequence, Examples)
{
    MartingaleDifferenceSequence one(1);
    one.entry(1, 0)[0] = 1.0;
    one.entry(1, 1)[0] = 1.0;
    const std::vector<int> w1{1, -1};
    EXPECT_EQ(evaluate_sequence(one, w1)[0], cdouble{-1.0});

    const auto two = oracle::explicit_instance();
    const std::vector<int> w2{1, 1, 1};
    EXPECT_EQ(evaluate_sequence(two, w2)[0], cdouble{3.0});

    const MartingaleDifferenceSequence zero(4, 2);
    const std::vector<int> w3{1, -1, 1, -1, 1};
    for (const auto& v : evaluate_sequence(zero, w3)) {
        EXPECT_EQ(v, cdouble{});
    }
    EXPECT_THROW(evaluate_sequence(two, w1), ConfigError);
}

TEST(PerturbedRatio, PEqualsTwoIsSqrtOnePlusTauSquared)
{
    Rng rng(2);
    for (int t = 0; t < 20; ++t) {
        const int n = 1 + t % 5;
        const auto F = oracle::random_sequence(rng, n, 1 + t % 2);
        const TransformConfig cfg{oracle::random_beta(rng, n), 3.0};
        EXPECT_NEAR(perturbed_ratio_exact(F, cfg, ExponentConfig(2.0, 2.0)), std::sqrt(10.0), 1e-12);
    }
}

TEST(PerturbedRatio, ExplicitInstance)
{
    const auto F = oracle::explicit_instance();
    const ExponentConfig four(4.0, 4.0);
    EXPECT_NEAR(perturbed_ratio_exact(F, {{-1, 1}, 1.0}, four), std::pow(52.0 / 21.0, 0.25), 1e-12);
    EXPECT_NEAR(perturbed_ratio_exact(F, {{-1, 1}, 0.0}, four), 1.0, 1e-12);
}

TEST(PerturbedRatio, MatchesDirectEnumeration)
{
    Rng rng(17);
    for (int t = 0; t < 40; ++t) {
        const int n = 1 + t % 6;
        const int m = 1 + t % 3;
        const auto F = oracle::random_sequence(rng, n, m);
        const auto beta = oracle::random_beta(rng, n);
        const double tau = 0.25 * (t % 4);
        const double p = 1.2 + 0.3 * (t % 9);
        const double p0 = 1.1 + 0.2 * (t % 5);
        EXPECT_NEAR(perturbed_ratio_exact(F, {beta, tau}, ExponentConfig(p, p0)),
                    oracle::martingale_ratio(F, as_alpha(beta), tau, p, p0), 1e-12);
    }
}

TEST(PerturbedRatio, WeightedMatchesDirectEnumeration)
{
    Rng rng(18);
    const auto F = oracle::random_sequence(rng, 4, 2);
    const std::vector<double> alpha{0.5, -2.0, 1.5, -0.25};
    EXPECT_NEAR(weighted_ratio_exact(F, alpha, 0.3, ExponentConfig(3.0, 2.5)),
                oracle::martingale_ratio(F, alpha, 0.3, 3.0, 2.5), 1e-12);
}

TEST(PerturbedRatio, ScaleInvariant)
{
    Rng rng(19);
    auto F = oracle::random_sequence(rng, 5, 1);
    const TransformConfig cfg{oracle::random_beta(rng, 5), 0.5};
    const ExponentConfig e(3.0, 3.0);
    const double before = perturbed_ratio_exact(F, cfg, e);
    for (auto& v : F.flat()) {
        v *= cdouble{-0.3, 2.1};
    }
    EXPECT_NEAR(perturbed_ratio_exact(F, cfg, e), before, 1e-12);
}

TEST(PerturbedRatio, CeilingPropertyOnRandomInstances)
{
    Rng rng(20);
    for (double p : {4.0, 4.0 / 3.0, 3.0, 1.5}) {
        const ExponentConfig e(p, p);
        for (double tau : {0.0, 0.5}) {
            const double ceiling = perturbed_transform_constant(p, tau);
            for (int t = 0; t < 25; ++t) {
                const int n = 1 + t % 6;
                const auto F = oracle::random_sequence(rng, n, 1 + t % 2);
                EXPECT_LE(perturbed_ratio_exact(F, {oracle::random_beta(rng, n), tau}, e), ceiling + 1e-9);
            }
        }
    }
}

TEST(PerturbedRatio, Errors)
{
    const MartingaleDifferenceSequence zero(2);
    EXPECT_THROW(perturbed_ratio_exact(zero, {{1, 1}, 0.0}, ExponentConfig(2.0, 2.0)), ConfigError);
    const auto F = oracle::explicit_instance();
    EXPECT_THROW(perturbed_ratio_exact(F, {{1}, 0.0}, ExponentConfig(2.0, 2.0)), ConfigError);
    EXPECT_THROW(perturbed_ratio_exact(F, {{1, 0}, 0.0}, ExponentConfig(2.0, 2.0)), ConfigError);
    const MartingaleDifferenceSequence deep(21);
    EXPECT_THROW(perturbed_ratio_exact(deep, {std::vector<int>(21, 1), 0.0}, ExponentConfig(2.0, 2.0)), ConfigError);
    EXPECT_THROW(perturbed_ratio_exact(F, {{1, 1}, 0.0}, ExponentConfig(2.0, 2.0), 1), ConfigError);
}

TEST(ExtendWithZero, LeavesRatioUnchanged)
{
    const auto F = oracle::explicit_instance();
    const ExponentConfig four(4.0, 4.0);
    const double base = perturbed_ratio_exact(F, {{-1, 1}, 1.0}, four);
    const auto once = extend_with_zero(F);
    const auto twice = extend_with_zero(once);
    EXPECT_EQ(once.depth(), 3);
    EXPECT_EQ(twice.depth(), 4);
    for (int b : {-1, 1}) {
        EXPECT_NEAR(perturbed_ratio_exact(once, {{-1, 1, b}, 1.0}, four), base, 1e-14);
        EXPECT_NEAR(perturbed_ratio_exact(twice, {{-1, 1, b, -b}, 1.0}, four), base, 1e-14);
    }

    MartingaleDifferenceSequence d1(1);
    d1.entry(1, 0)[0] = 1.0;
    d1.entry(1, 1)[0] = cdouble{0.0, 2.0};
    const ExponentConfig e(3.0, 3.0);
    EXPECT_NEAR(perturbed_ratio_exact(extend_with_zero(d1), {{1, -1}, 0.2}, e),
                perturbed_ratio_exact(d1, {{1}, 0.2}, e), 1e-14);
}

TEST(MartingaleDifferenceSequence, PrefixIndexConvention)
{
    const std::vector<int> plus{1, 1, 1};
    const std::vector<int> lead_minus{-1, 1, 1};
    const std::vector<int> tail_minus{1, 1, -1};
    EXPECT_EQ(MartingaleDifferenceSequence::prefix_index(plus), 0u);
    EXPECT_EQ(MartingaleDifferenceSequence::prefix_index(lead_minus), 4u);
    EXPECT_EQ(MartingaleDifferenceSequence::prefix_index(tail_minus), 1u);
    EXPECT_THROW(MartingaleDifferenceSequence(0), ConfigError);
}

TEST(Admissibility, Predicates)
{
    EXPECT_TRUE(tau_admissible(4.0, 10.0, Admissibility::Def2));
    EXPECT_TRUE(tau_admissible(1.5, 1.4, Admissibility::Def2));
    EXPECT_FALSE(tau_admissible(1.5, 1.5, Admissibility::Def2));
    EXPECT_FALSE(tau_admissible(1.5, 0.6, Admissibility::Cor7));
    EXPECT_TRUE(tau_admissible(1.5, 0.5, Admissibility::Cor7));
    EXPECT_STREQ(to_string(admissibility_from_string("cor7")), "cor7");
    EXPECT_THROW(admissibility_from_string("other"), ConfigError);
}
