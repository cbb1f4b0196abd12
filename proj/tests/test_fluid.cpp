#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <zmc/catalog.hpp>
#include <zmc/fluid.hpp>

using namespace zmc;

namespace {

PlanarCurve unit_circle()
{
    return make_planar_curve(
        [](auto z) {
            using std::cos;
            using std::sin;
            return std::array{cos(z), sin(z)};
        },
        Interval{0, 2 * std::numbers::pi}, true);
}

} // namespace

TEST(Fluid, VirtualGasHasRhoCEqualOne)
{
    const VirtualGas gas{1.0, 2.0};
    for (double rho : {0.3, 1.0, 2.5}) {
        const double h = 1e-6;
        const double c2 = (gas.pressure(rho + h) - gas.pressure(rho - h)) / (2 * h);
        EXPECT_NEAR(std::sqrt(c2), gas.sound_speed(rho), 1e-8);
        EXPECT_NEAR(rho * gas.sound_speed(rho), 1.0, 1e-15);
    }
    EXPECT_EQ(gas.bernoulli_k(1.0), -1.0);
    EXPECT_EQ(gas.bernoulli_k(-1.0), 1.0);
}

TEST(Fluid, HelicoidFlowStatesAndRegimes)
{
    const GraphFunction psi = helicoid_graph({0.2, -3, 3, 3});
    const VirtualGas gas;
    // r = 2: B = 3/4, rho = sqrt(3)/2, q = (1/r)/rho.
    const FlowState s = flow_state(psi, gas, 2.0, 0.0);
    EXPECT_NEAR(s.B, 0.75, 1e-15);
    EXPECT_NEAR(s.rho, std::sqrt(0.75), 1e-15);
    EXPECT_NEAR(s.q, 0.5 / std::sqrt(0.75), 1e-15);
    EXPECT_EQ(s.regime, Regime::Subsonic);
    EXPECT_LT(s.q, s.sound_speed);
    // Velocity (psi_y, -psi_x)/rho is radial here.
    EXPECT_NEAR(s.velocity[1], 0.0, 1e-15);
    const FlowState t = flow_state(psi, gas, 0.5, 0.0);
    EXPECT_EQ(t.regime, Regime::Supersonic);
    EXPECT_GT(t.q, t.sound_speed);
    const FlowState u = flow_state(psi, gas, 1.0, 0.0);
    EXPECT_EQ(u.regime, Regime::Sonic);
    EXPECT_TRUE(u.divergent);
    EXPECT_EQ(verify_stream_equation(psi, 1.7, 0.4), zmc_residual(psi, 1.7, 0.4));
}

TEST(Fluid, ConservationOnSubsonicRect)
{
    const GraphFunction psi = helicoid_graph({0.2, -3, 3, 3});
    const ConservationReport a = verify_conservation(psi, VirtualGas{}, {1.6, -1, 2.8, 1}, 1e-3, 11);
    const ConservationReport b = verify_conservation(psi, VirtualGas{}, {1.6, -1, 2.8, 1}, 5e-4, 11);
    EXPECT_NEAR(a.bernoulli_k, -1.0, 1e-12);
    EXPECT_LT(a.bernoulli_deviation, 1e-12);
    EXPECT_NEAR(a.continuity_max / b.continuity_max, 4.0, 0.2);
    EXPECT_NEAR(a.irrotational_max / b.irrotational_max, 4.0, 0.2);
    EXPECT_THROW(verify_conservation(psi, VirtualGas{}, {0.5, -0.5, 1.5, 0.5}, 1e-3, 11), Error);
}

TEST(Fluid, TransonicFlowThroughUnitCircle)
{
    const TransonicFlow f = transonic_flow_from_convex_curve(unit_circle(), VirtualGas{}, 0.3, 21);
    EXPECT_TRUE(f.report.pass());
    EXPECT_LT(f.report.max_sonic_B, 1e-10);
    EXPECT_NEAR(f.report.exponent_subsonic, -0.5, 0.1);
    EXPECT_NEAR(f.report.exponent_supersonic, -0.5, 0.1);
    for (const auto& p : f.sonic_line) EXPECT_NEAR(std::hypot(p[0], p[1]), 1.0, 1e-12);
    // Locally the flow is psi = theta: subsonic outside, supersonic inside.
    EXPECT_EQ(flow_state(f.psi, VirtualGas{}, -1.0005, 0.0).regime, Regime::Subsonic);
    EXPECT_EQ(flow_state(f.psi, VirtualGas{}, -0.9995, 0.0).regime, Regime::Supersonic);
}

TEST(Fluid, StraightSonicLineIsRejected)
{
    const PlanarCurve line = make_planar_curve([](auto z) { return std::array{z, z - z}; }, Interval{-1, 1}, true);
    EXPECT_THROW(transonic_flow_from_convex_curve(line, VirtualGas{}, 0.3, 11), Error);
}

TEST(Fluid, TransonicFlowThroughEllipse)
{
    const PlanarCurve ellipse = make_planar_curve(
        [](auto z) {
            using std::cos;
            using std::sin;
            return std::array{1.5 * cos(z), sin(z)};
        },
        Interval{0, 2 * std::numbers::pi}, false);
    const TransonicFlow f = transonic_flow_from_convex_curve(arclength_reparametrize(ellipse, 128), VirtualGas{}, 0.3, 21);
    EXPECT_TRUE(f.report.regime_flips);
    EXPECT_TRUE(f.report.acceleration_points_supersonic);
    EXPECT_TRUE(f.report.exponent_ok) << f.report.exponent_subsonic << ' ' << f.report.exponent_supersonic;
    for (const auto& p : f.sonic_line) EXPECT_NEAR(p[0] * p[0] / 2.25 + p[1] * p[1], 1.0, 1e-10);
}
