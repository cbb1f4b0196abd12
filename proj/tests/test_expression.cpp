#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include <zmc/expression.hpp>

using namespace zmc;

TEST(Expression, EvaluatesArithmeticAndFunctions)
{
    const Expression e = Expression::parse("2*x^2 - sin(y)/3 + exp(-x*y)", {"x", "y"});
    const double x = 0.7, y = -1.3;
    EXPECT_NEAR(e.eval<double>({x, y}), 2 * x * x - std::sin(y) / 3 + std::exp(-x * y), 1e-15);
    EXPECT_NEAR(Expression::parse("-2^2", {}).eval<double>({}), -4.0, 0.0);
    EXPECT_NEAR(Expression::parse("2^3^2", {}).eval<double>({}), 512.0, 1e-12);
    EXPECT_NEAR(Expression::parse("pi + e", {}).eval<double>({}), std::numbers::pi + std::numbers::e, 1e-15);
    EXPECT_NEAR(Expression::parse("x^0.5", {"x"}).eval<double>({2.0}), std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(Expression::parse("1.5e-3 * 2", {}).eval<double>({}), 3e-3, 1e-18);
}

TEST(Expression, ComplexUnitOnlyInComplexEvaluation)
{
    const Expression e = Expression::parse("-i*exp(i*z)", {"z"});
    const std::complex<double> z{0.4, 0.2};
    const std::complex<double> I{0.0, 1.0};
    EXPECT_LT(std::abs(e.eval<std::complex<double>>({z}) - (-I * std::exp(I * z))), 1e-15);
    EXPECT_THROW((void)e.eval<double>({0.4}), Error);
}

TEST(Expression, JetEvaluationGivesDerivatives)
{
    using J = Jet<double, 3>;
    const Expression e = Expression::parse("tanh(z) * z^3", {"z"});
    const double z = 0.6;
    const J r = e.eval<J>({J::variable(z)});
    const double t = std::tanh(z), s2 = 1 - t * t;
    EXPECT_NEAR(r.derivative(0), t * z * z * z, 1e-15);
    EXPECT_NEAR(r.derivative(1), s2 * z * z * z + 3 * t * z * z, 1e-14);
}

TEST(Expression, RejectsMalformedInput)
{
    for (const char* bad : {"", "1 +", "(x", "x)", "foo(x)", "q", "sin x", "2 ** 3", "1..2"}) {
        try {
            Expression::parse(bad, {"x"});
            ADD_FAILURE() << "accepted '" << bad << "'";
        } catch (const Error& err) {
            EXPECT_EQ(err.code(), ErrorCode::ParseError) << bad;
        }
    }
    const Expression e = Expression::parse("x", {"x"});
    EXPECT_THROW((void)e.eval<double>({1.0, 2.0}), Error);
}
