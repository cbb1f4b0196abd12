#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include <zmc/jet.hpp>

using namespace zmc;

namespace {

// Sixth-order central difference, used as an independent derivative oracle.
template <typename F>
double fd1(F f, double x, double h = 1e-3)
{
    return (f(x + 3 * h) - 9 * f(x + 2 * h) + 45 * f(x + h) - 45 * f(x - h) + 9 * f(x - 2 * h) - f(x - 3 * h)) /
           (60 * h);
}

} // namespace

TEST(Jet, ElementaryFunctionsMatchKnownDerivatives)
{
    using J = Jet<double, 4>;
    const double x = 0.37;
    const J v = J::variable(x);
    // d^k/dx^k exp = exp.
    const J e = exp(v);
    for (int k = 0; k <= 4; ++k) EXPECT_NEAR(e.derivative(k), std::exp(x), 1e-14);
    // sin: sin, cos, -sin, -cos, sin.
    const J s = sin(v);
    const double sv[] = {std::sin(x), std::cos(x), -std::sin(x), -std::cos(x), std::sin(x)};
    for (int k = 0; k <= 4; ++k) EXPECT_NEAR(s.derivative(k), sv[k], 1e-14);
    // log: ln x, 1/x, -1/x^2, 2/x^3, -6/x^4.
    const J l = log(v);
    const double lv[] = {std::log(x), 1 / x, -1 / (x * x), 2 / (x * x * x), -6 / (x * x * x * x)};
    for (int k = 0; k <= 4; ++k) EXPECT_NEAR(l.derivative(k), lv[k], 1e-12 * std::abs(lv[k]) + 1e-14);
    // cosh'' = cosh, sinh' = cosh.
    EXPECT_NEAR(cosh(v).derivative(2), std::cosh(x), 1e-14);
    EXPECT_NEAR(sinh(v).derivative(1), std::cosh(x), 1e-14);
}

TEST(Jet, CompositionAgainstFiniteDifferences)
{
    using J = Jet<double, 1>;
    auto f = [](auto x) {
        using std::sqrt;
        using std::tan;
        using std::tanh;
        using std::asinh;
        return tanh(x) * sqrt(1.0 + x * x) / (2.0 + tan(x)) + asinh(x);
    };
    for (double x : {-0.8, -0.1, 0.3, 0.9}) {
        const J r = f(J::variable(x));
        EXPECT_NEAR(r.value(), f(x), 1e-15);
        EXPECT_NEAR(r.derivative(1), fd1([&](double s) { return f(s); }, x), 1e-9);
    }
}

TEST(Jet, ComplexJetIsHolomorphic)
{
    using J = Jet<std::complex<double>, 2>;
    const std::complex<double> z(0.3, 0.8);
    const J c = cos(J::variable(z));
    EXPECT_NEAR(std::abs(c.derivative(1) + std::sin(z)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(c.derivative(2) + std::cos(z)), 0.0, 1e-15);
}

TEST(Jet, IntegerPowers)
{
    using J = Jet<double, 3>;
    const J p = ipow(J::variable(1.5), 5);
    EXPECT_NEAR(p.value(), std::pow(1.5, 5), 1e-12);
    EXPECT_NEAR(p.derivative(1), 5 * std::pow(1.5, 4), 1e-12);
    EXPECT_NEAR(p.derivative(3), 60 * 1.5 * 1.5, 1e-12);
    EXPECT_NEAR(ipow(J::variable(2.0), -2).derivative(1), -2.0 / 8.0, 1e-15);
    EXPECT_EQ(ipow(3.0, 0), 1.0);
}
