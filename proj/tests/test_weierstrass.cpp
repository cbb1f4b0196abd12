#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <zmc/catalog.hpp>
#include <zmc/descriptors.hpp>
#include <zmc/bjorling.hpp>
#include <zmc/weierstrass.hpp>

using namespace zmc;

TEST(Weierstrass, CircleDataHasClosedForm)
{
    const AnalyticNullCurve c = circle_null_curve();
    const WeierstrassData d = weierstrass_from_null_curve(c);
    const Complex i(0, 1);
    for (double u : {0.5, 2.0, 5.5}) {
        const Complex z(u, 0.3);
        // G = -i e^{iz}, w = -(i/2) e^{-iz}.
        EXPECT_NEAR(std::abs(d.G(z)[0] + i * std::exp(i * z)), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(d.G(z)[1] - std::exp(i * z)), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(d.w(z) + 0.5 * i * std::exp(-i * z)), 0.0, 1e-14);
        // The generic integrand built from (G, w) equals gamma'.
        const ComplexVec3 gen = weierstrass_integrand(d.G(z)[0], d.w(z));
        EXPECT_LT(euclid_norm(gen - c.derivative(z, 1)), 1e-14);
    }
    EXPECT_EQ(d.base_point, Complex(std::numbers::pi, 0.0));
}

TEST(Weierstrass, LiftReproducesMaximalExtension)
{
    const AnalyticNullCurve a = alpha_curve();
    const WeierstrassData d = weierstrass_from_null_curve(a);
    for (double u : {-1.5, 0.2, 1.7}) {
        for (double v : {-0.8, 0.0, 0.6}) {
            EXPECT_LT(euclid_norm(maxface_eval(d, {u, v}) - maximal_extension(a, u, v)), 1e-12);
        }
    }
    // Im Phi = 0 on the real axis.
    EXPECT_LT(euclid_norm(conjugate_eval(d, {1.0, 0.0})), 1e-14);
}

TEST(Weierstrass, FoldCriterionAndSingularSet)
{
    const WeierstrassData d = weierstrass_from_null_curve(parabolic_directrix());
    for (double u : {-1.2, 0.0, 0.9}) {
        EXPECT_NEAR(singular_residual(d, {u, 0.0}), 0.0, 1e-14);
        EXPECT_NEAR(fold_criterion(d, {u, 0.0}), 0.0, 1e-14);
        EXPECT_TRUE(is_nondegenerate_singular(d, {u, 0.0}, 1e-8));
    }
    // Off the axis |G| != 1.
    EXPECT_GT(std::abs(singular_residual(d, {0.3, 0.5})), 1e-3);
    EXPECT_THROW((void)is_nondegenerate_singular(d, {0.3, 0.5}, 1e-8), Error);
}

TEST(Weierstrass, RotationAndDomain)
{
    const WeierstrassData d = weierstrass_from_null_curve(circle_null_curve());
    const WeierstrassData r = rotate_data(d, 0.5 * std::numbers::pi);
    // Rotating eta by pi/2 multiplies Phi - Phi(z0) by i: Re becomes -Im.
    const Complex z(2.0, 0.4);
    const ComplexVec3 p = holomorphic_lift(d, z) - d.base_value;
    const ComplexVec3 q = holomorphic_lift(r, z) - r.base_value;
    EXPECT_LT(euclid_norm(q - Complex(0, 1) * p), 1e-13);
    EXPECT_THROW((void)holomorphic_lift(d, {2.0, 1.5}), Error);
    // The light-like line has constant G with |G| = 1: singular but degenerate.
    const WeierstrassData line = weierstrass_from_null_curve(degenerate_line());
    EXPECT_FALSE(is_nondegenerate_singular(line, {0.2, 0.0}, 1e-8));
}

TEST(Weierstrass, DescriptorMatchesCurveData)
{
    const WeierstrassData e = parse_weierstrass(load_json_file(std::string(ZMC_SAMPLES_DIR) + "/weierstrass_circle.json"));
    const AnalyticNullCurve c = circle_null_curve();
    for (double v : {-0.5, 0.2, 0.9}) {
        EXPECT_LT(euclid_norm(maxface_eval(e, {2.0, v}) - maximal_extension(c, 2.0, v)), 1e-12);
    }
    EXPECT_NEAR(fold_criterion(e, {1.0, 0.0}), 0.0, 1e-14);
}

TEST(Weierstrass, PathIndependence)
{
    const WeierstrassData d = weierstrass_from_null_curve(beta_curve());
    const Complex z(1.3, 0.7);
    const ComplexVec3 a = holomorphic_lift(d, z);
    const ComplexVec3 b = holomorphic_lift_along(d, {{-1.0, -0.5}, {1.9, 0.9}, z});
    EXPECT_LT(euclid_norm(a - b), 1e-11);
}
