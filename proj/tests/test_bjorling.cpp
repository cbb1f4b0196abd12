#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <zmc/bjorling.hpp>
#include <zmc/catalog.hpp>

using namespace zmc;

namespace {

double helicoid(const LorentzVec3& p) { return p.x * std::sin(p.t) - p.y * std::cos(p.t); }

ErrorCode code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorCode::InvalidArgument;
}

} // namespace

TEST(Bjorling, CircleExtensionsAreTheHelicoid)
{
    const AnalyticNullCurve c = circle_null_curve();
    for (double u : {1.0, 2.5, 4.0}) {
        for (double v : {-0.7, -0.2, 0.3, 0.8}) {
            // Closed forms: Re gamma(u + iv) = (u, cos u cosh v, sin u cosh v),
            // (gamma(u+v) + gamma(u-v))/2 = (u, cos u cos v, sin u cos v).
            const LorentzVec3 m = maximal_extension(c, u, v);
            EXPECT_NEAR(m.x, std::cos(u) * std::cosh(v), 1e-14);
            EXPECT_NEAR(m.y, std::sin(u) * std::cosh(v), 1e-14);
            const LorentzVec3 t = timelike_extension(c, u, v);
            EXPECT_NEAR(t.x, std::cos(u) * std::cos(v), 1e-14);
            EXPECT_NEAR(helicoid(m), 0.0, 1e-14);
            EXPECT_NEAR(helicoid(t), 0.0, 1e-14);
        }
    }
}

TEST(Bjorling, ExtensionsReduceToCurveAndHaveCorrectCausalType)
{
    const AnalyticNullCurve a = alpha_curve();
    const double u = 0.4;
    EXPECT_LT(euclid_norm(maximal_extension(a, u, 0.0) - a.point(u)), 1e-15);
    EXPECT_LT(euclid_norm(timelike_extension(a, u, 0.0) - a.point(u)), 1e-15);
    const ExtensionSurface max(a, ExtensionSide::Maximal), tl(a, ExtensionSide::Timelike);
    const SurfaceJet jm = max.jet(u, 0.3), jt = tl.jet(u, 0.3);
    EXPECT_GT(first_form_det(jm.pu, jm.pv), 0.0);
    EXPECT_LT(first_form_det(jt.pu, jt.pv), 0.0);
    // Conformal on the space-like side, null coordinates on the time-like side.
    EXPECT_NEAR(minkowski_inner(jm.pu, jm.pu) - minkowski_inner(jm.pv, jm.pv), 0.0, 1e-12);
    EXPECT_NEAR(minkowski_inner(jm.pu, jm.pv), 0.0, 1e-12);
    EXPECT_NEAR(minkowski_inner(jt.pu + jt.pv, jt.pu + jt.pv), 0.0, 1e-12);
}

TEST(Bjorling, UnifiedExtensionIsSmoothAcrossTheCurve)
{
    const AnalyticNullCurve c = alpha_curve();
    const double u = 0.3;
    // One-sided difference quotients in w agree with the jet at w = 0: H_w = gamma''/2.
    const SurfaceJet j0 = unified_jet(c, u, 0.0);
    const LorentzVec3 half_acc = 0.5 * c.acceleration(u);
    EXPECT_LT(euclid_norm(j0.pv - half_acc), 1e-10);
    const double h = 1e-6;
    const LorentzVec3 fwd = (unified_extension(c, u, h) - unified_extension(c, u, 0.0)) / h;
    const LorentzVec3 bwd = (unified_extension(c, u, 0.0) - unified_extension(c, u, -h)) / h;
    EXPECT_LT(euclid_norm(fwd - half_acc), 1e-5);
    EXPECT_LT(euclid_norm(bwd - half_acc), 1e-5);
    // Jet against differences on both sides away from the curve.
    for (double w : {-0.3, 0.3}) {
        const SurfaceJet j = unified_jet(c, u, w);
        const double e = 1e-5;
        const LorentzVec3 dw = (unified_extension(c, u, w + e) - unified_extension(c, u, w - e)) / (2 * e);
        const LorentzVec3 du = (unified_extension(c, u + e, w) - unified_extension(c, u - e, w)) / (2 * e);
        EXPECT_LT(euclid_norm(j.pv - dw), 1e-8);
        EXPECT_LT(euclid_norm(j.pu - du), 1e-8);
    }
}

TEST(Bjorling, DomainErrors)
{
    const AnalyticNullCurve c = circle_null_curve();
    EXPECT_EQ(code_of([&] { maximal_extension(c, 1.0, 1.0); }), ErrorCode::OutsideStrip);
    EXPECT_EQ(code_of([&] { timelike_extension(c, 0.2, 0.5); }), ErrorCode::OutsideDomain);
    EXPECT_EQ(code_of([&] { unified_extension(c, 3.0, -1.0); }), ErrorCode::OutsideStrip);
}

TEST(Bjorling, GraphAroundCircleIsAtan2)
{
    const AnalyticNullCurve c = circle_null_curve();
    const GraphFunction g = graph_around_curve(c, std::numbers::pi, 0.4, 21);
    for (double r : {0.9, 1.0, 1.1}) {
        for (double th : {2.9, 3.1, 3.3}) {
            const double x = r * std::cos(th), y = r * std::sin(th);
            const GraphJet j = g.jet(x, y);
            EXPECT_NEAR(j.f, th, 1e-11);
            // t = theta on the helicoid: grad f = (-y, x) / r^2.
            EXPECT_NEAR(j.fx, -y / (r * r), 1e-9);
            EXPECT_NEAR(j.fy, x / (r * r), 1e-9);
            EXPECT_NEAR(j.fxx, 2 * x * y / (r * r * r * r), 1e-7);
        }
    }
    EXPECT_EQ(code_of([&] { (void)g.value(0.0, 0.0); }), ErrorCode::InversionFailed);
}

TEST(Bjorling, GraphAroundDegenerateCurveFails)
{
    EXPECT_EQ(code_of([] { graph_around_curve(degenerate_line(), 0.0, 0.2, 11); }), ErrorCode::DegenerateCurve);
}
