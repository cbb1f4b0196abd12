#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include <zmc/lorentz.hpp>

using namespace zmc;

TEST(Lorentz, InnerProductSignature)
{
    const LorentzVec3 e0{1, 0, 0}, e1{0, 1, 0}, e2{0, 0, 1};
    EXPECT_EQ(minkowski_inner(e0, e0), -1.0);
    EXPECT_EQ(minkowski_inner(e1, e1), 1.0);
    EXPECT_EQ(minkowski_inner(e2, e2), 1.0);
    EXPECT_EQ(minkowski_inner(e0, e1), 0.0);
    const LorentzVec3 a{0.3, -1.2, 2.5}, b{1.7, 0.4, -0.9};
    EXPECT_DOUBLE_EQ(minkowski_inner(a, b), minkowski_inner(b, a));
    EXPECT_DOUBLE_EQ(minkowski_inner(a, b), -0.3 * 1.7 - 1.2 * 0.4 - 2.5 * 0.9);
}

TEST(Lorentz, CausalCharacter)
{
    EXPECT_EQ(causal_character({1, 1, 0}, 1e-12), CausalClass::Lightlike);
    EXPECT_EQ(causal_character({2, 1, 0}, 1e-12), CausalClass::Timelike);
    EXPECT_EQ(causal_character({0, 1, 1}, 1e-12), CausalClass::Spacelike);
    // Relative threshold: a large null vector perturbed in the last digits stays null.
    const double s = 1e8;
    EXPECT_EQ(causal_character({s, s * std::cos(0.3), s * std::sin(0.3)}, 1e-12), CausalClass::Lightlike);
    EXPECT_THROW(causal_character({1, 0, 0}, 0.0), Error);
}

TEST(Lorentz, MakeLorentzRejectsNonFinite)
{
    EXPECT_NO_THROW(make_lorentz(1, 2, 3));
    EXPECT_THROW(make_lorentz(std::numeric_limits<double>::quiet_NaN(), 0, 0), Error);
    EXPECT_THROW(make_lorentz(0, std::numeric_limits<double>::infinity(), 0), Error);
}

TEST(Lorentz, FirstFormDeterminantSign)
{
    // Horizontal plane is space-like, a plane containing e0 is time-like,
    // a plane tangent to the light cone is degenerate.
    EXPECT_GT(first_form_det({0, 1, 0}, {0, 0, 1}), 0.0);
    EXPECT_LT(first_form_det({1, 0, 0}, {0, 1, 0}), 0.0);
    EXPECT_NEAR(first_form_det({1, 1, 0}, {0, 0, 1}), 0.0, 1e-15);
}

TEST(Lorentz, ComplexInnerIsBilinear)
{
    const Complex i(0, 1);
    const ComplexVec3 a{1.0 + i, 2.0, -i}, b{0.5, i, 3.0};
    const Complex expect = -(1.0 + i) * 0.5 + 2.0 * i + (-i) * 3.0;
    EXPECT_NEAR(std::abs(complex_inner(a, b) - expect), 0.0, 1e-15);
    // A holomorphic null direction: (1, cos z, sin z) for complex z.
    const Complex z(0.4, 0.7);
    const ComplexVec3 v{1.0, std::cos(z), std::sin(z)};
    EXPECT_LT(std::abs(complex_inner(v, v)), 1e-15);
    EXPECT_EQ(v.conj().conj().t, v.t);
    EXPECT_EQ(v.real().x, v.x.real());
    EXPECT_EQ(v.imag().y, v.y.imag());
}
