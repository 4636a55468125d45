#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "lpmult/catalog.hpp"
#include "lpmult/error.hpp"
#include "support/oracles.hpp"

using namespace lpmult;

namespace {

std::vector<double> pt(double a, double b) { return {a, b}; }

OperatorFamilyParam fam(Family f)
{
    OperatorFamilyParam p;
    p.family = f;
    return p;
}

} // namespace

TEST(Catalog, TagsRoundTrip)
{
    for (auto f : {Family::Beurling, Family::BeurlingReal, Family::BeurlingImag, Family::BeurlingMatrix, Family::Rotated,
                   Family::Scaled, Family::Fz, Family::Riesz, Family::Vector}) {
        EXPECT_EQ(family_from_string(to_string(f)), f);
    }
    EXPECT_EQ(family_from_string("fz"), Family::Fz);
    EXPECT_STREQ(to_string(Family::Fz), "F");
    EXPECT_THROW(family_from_string("hilbert"), ConfigError);
}

TEST(Catalog, BeurlingValues)
{
    EXPECT_NEAR(beurling_real(pt(1, 0)), -1.0, 1e-15);
    EXPECT_NEAR(beurling_real(pt(0, 3)), 1.0, 1e-15);
    EXPECT_NEAR(beurling_imag(pt(1, 1)), 1.0, 1e-15);
    EXPECT_NEAR(beurling_imag(pt(2, -2)), -1.0, 1e-15);
    EXPECT_NEAR(std::abs(beurling_value(pt(1, 2)) - cdouble(0.6, 0.8)), 0.0, 1e-15);
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        const auto x = pt(rng.normal(), rng.normal());
        EXPECT_NEAR(std::abs(beurling_value(x)), 1.0, 1e-14);
        const auto m = beurling_matrix_value(x);
        EXPECT_NEAR((m * m.transpose() - Eigen::Matrix2d::Identity()).norm(), 0.0, 1e-14);
        EXPECT_NEAR(m(0, 0), beurling_real(x), 0.0);
        EXPECT_NEAR(m(0, 1), beurling_imag(x), 0.0);
    }
}

TEST(Catalog, ParametrizedFamilies)
{
    EXPECT_NEAR(rotated_value(std::numbers::pi / 2, pt(1, 1)), 1.0, 1e-15);
    EXPECT_NEAR(rotated_value(0.0, pt(1, 0)), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(scaled_value(2.0, pt(1, 0)) - 2.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(scaled_value(2.0, pt(1, 1)) - cdouble(0, 1)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(fz_value({1.0, 0.0}, pt(1, 1)) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(fz_value({0.0, 2.0}, pt(1, -1)) - cdouble(0, -2)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(riesz_value(1, pt(3, 4)) - cdouble(0, -0.6)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(riesz_value(2, pt(-3, 4)) - cdouble(0, -0.8)), 0.0, 1e-15);
    EXPECT_THROW(beurling_real(pt(0, 0)), ConfigError);
    EXPECT_THROW(riesz_value(3, pt(1, 0)), ConfigError);
}

TEST(Catalog, SymbolFactoriesAgreeWithValues)
{
    Rng rng(4);
    OperatorFamilyParam rot = fam(Family::Rotated);
    rot.theta = 0.7;
    OperatorFamilyParam sc = fam(Family::Scaled);
    sc.c = -1.5;
    OperatorFamilyParam fz = fam(Family::Fz);
    fz.z = {0.3, 0.0};
    for (int i = 0; i < 20; ++i) {
        const auto x = pt(rng.normal(), rng.normal());
        EXPECT_NEAR(std::abs(family_symbol(rot)(x)(0, 0) - rotated_value(0.7, x)), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(family_symbol(sc)(x)(0, 0) - scaled_value(-1.5, x)), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(family_symbol(fz)(x)(0, 0) - fz_value({0.3, 0.0}, x)), 0.0, 1e-15);
        const auto v = vector_symbol(0.25)(x);
        ASSERT_EQ(v.rows(), 2);
        EXPECT_NEAR(std::abs(v(0, 0) - beurling_real(x)), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(v(1, 0) - 0.25), 0.0, 0.0);
    }
    EXPECT_TRUE(beurling_symbol().even());
    EXPECT_FALSE(riesz_symbol(1).even());
    EXPECT_EQ(beurling_matrix_symbol().rows(), 2);
}

TEST(TargetConstant, BeurlingFamilies)
{
    const ExponentConfig four(4.0, 4.0);
    EXPECT_NEAR(target_constant(fam(Family::Beurling), four).target, 3.0, 1e-15);
    auto p = fam(Family::BeurlingReal);
    p.tau = 1.0;
    const auto t = target_constant(p, four);
    EXPECT_NEAR(t.target, std::sqrt(10.0), 1e-15);
    EXPECT_NEAR(t.c_tau, std::sqrt(10.0), 1e-15);
    EXPECT_NEAR(t.umd_cm, 3.0, 1e-15);
    EXPECT_FALSE(t.external_assumption);
    EXPECT_NEAR(target_constant(fam(Family::Rotated), ExponentConfig(1.5, 1.5)).target, 2.0, 1e-15);
    EXPECT_NEAR(target_constant(fam(Family::BeurlingMatrix), ExponentConfig(2.0, 2.0)).target, 1.0, 1e-15);
}

TEST(TargetConstant, ScaledAndFz)
{
    const ExponentConfig four(4.0, 4.0);
    auto s = fam(Family::Scaled);
    s.c = 2.0;
    EXPECT_NEAR(target_constant(s, four).target, 6.0, 1e-15);
    EXPECT_TRUE(target_constant(s, four).external_assumption);
    s.c = -0.5;
    EXPECT_NEAR(target_constant(s, four).target, 3.0, 1e-15);
    EXPECT_TRUE(target_constant(s, four).external_assumption);

    auto f = fam(Family::Fz);
    f.z = {1.0, 0.0};
    EXPECT_NEAR(target_constant(f, four).target, 3.0 * std::sqrt(2.0), 1e-14);
    EXPECT_FALSE(target_constant(f, four).external_assumption);
    f.z = {0.0, 2.0};
    EXPECT_NEAR(target_constant(f, four).target, 6.0, 1e-15);
    EXPECT_TRUE(target_constant(f, four).external_assumption);
    f.z = {0.0, 0.5};
    EXPECT_NEAR(target_constant(f, four).target, 3.0, 1e-15);
}

TEST(TargetConstant, Rejections)
{
    const ExponentConfig four(4.0, 4.0);
    EXPECT_THROW(target_constant(fam(Family::Riesz), four), ConfigError);
    EXPECT_THROW(target_constant(fam(Family::Beurling), ExponentConfig(4.0, 2.0)), ConfigError);
    auto f = fam(Family::Fz);
    f.z = {1.0, 1.0};
    EXPECT_THROW(target_constant(f, four), ConfigError);
    auto s = fam(Family::Scaled);
    s.c = 0.0;
    EXPECT_THROW(target_constant(s, four), ConfigError);
    s.c = 1.0;
    s.tau = 0.5;
    EXPECT_THROW(target_constant(s, four), ConfigError);

    auto b = fam(Family::Beurling);
    b.tau = 2.0;
    EXPECT_THROW(target_constant(b, ExponentConfig(1.5, 1.5), Admissibility::Def2), ConfigError);
    b.tau = 1.0;
    EXPECT_NO_THROW(target_constant(b, ExponentConfig(1.5, 1.5), Admissibility::Def2));
    EXPECT_THROW(target_constant(b, ExponentConfig(1.5, 1.5), Admissibility::Cor7), ConfigError);
    EXPECT_NO_THROW(target_constant(b, ExponentConfig(3.0, 3.0), Admissibility::Cor7));
}

TEST(ComplexVsMatrixPath, AgreeOnBandLimitedInput)
{
    Rng rng(5);
    const TorusGrid grid(2, 16);
    for (double p : {1.5, 2.0, 4.0}) {
        const auto f = oracle::random_polynomial(rng, grid, 4);
        const auto [a, b] = complex_vs_matrix_path(f, p);
        EXPECT_NEAR(a, b, 1e-12 * a) << p;
    }
    EXPECT_THROW(complex_vs_matrix_path(oracle::random_polynomial(rng, TorusGrid(1, 8), 2), 2.0), ConfigError);
}
