#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "expression.hpp"
#include "jet.hpp"
#include "lorentz.hpp"
#include "null_curve.hpp"
#include "quadrature.hpp"

namespace zmc {

/// Rectangle [x0, x1] x [y0, y1] in the z-plane; convex, so the straight
/// segment from the base point stays inside.
struct ComplexRect {
    double x0 = -1.0;
    double x1 = 1.0;
    double y0 = -1.0;
    double y1 = 1.0;

    [[nodiscard]] bool contains(Complex z) const noexcept
    {
        return z.real() >= x0 && z.real() <= x1 && z.imag() >= y0 && z.imag() <= y1;
    }
};

/// (G, eta = w dz) with the lift integrand (-2G w, (1 + G^2) w, i (1 - G^2) w).
struct WeierstrassData {
    /// G and G'.
    std::function<std::array<Complex, 2>(Complex)> G;
    std::function<Complex(Complex)> w;
    /// dPhi/dz; when built from a curve this is gamma' evaluated directly.
    std::function<ComplexVec3(Complex)> integrand;
    Complex base_point{};
    ComplexVec3 base_value{};
    ComplexRect domain{};
};

inline ComplexVec3 weierstrass_integrand(Complex g, Complex w)
{
    const Complex i(0.0, 1.0);
    return {-2.0 * g * w, (1.0 + g * g) * w, i * (1.0 - g * g) * w};
}

/// Data from explicit (G, G') and w evaluators.
inline WeierstrassData make_weierstrass_data(std::function<std::array<Complex, 2>(Complex)> G,
                                             std::function<Complex(Complex)> w, Complex base_point,
                                             ComplexVec3 base_value, ComplexRect domain)
{
    WeierstrassData d;
    d.G = std::move(G);
    d.w = std::move(w);
    d.integrand = [g = d.G, ww = d.w](Complex z) { return weierstrass_integrand(g(z)[0], ww(z)); };
    d.base_point = base_point;
    d.base_value = base_value;
    d.domain = domain;
    if (!domain.contains(base_point)) throw Error(ErrorCode::InvalidArgument, "base point outside the domain");
    return d;
}

/// Data from expressions in z (G by a first-order jet, so G' is exact).
inline WeierstrassData make_weierstrass_data(const Expression& G, const Expression& w, Complex base_point,
                                             ComplexVec3 base_value, ComplexRect domain)
{
    auto gfn = [G](Complex z) {
        using J = Jet<Complex, 1>;
        const J r = G.eval<J>({J::variable(z)});
        return std::array<Complex, 2>{r.c[0], r.c[1]};
    };
    auto wfn = [w](Complex z) { return w.eval<Complex>({z}); };
    return make_weierstrass_data(std::move(gfn), std::move(wfn), base_point, base_value, domain);
}

/// w = (gamma_1' - i gamma_2') / 2, G = -(gamma_1' + i gamma_2') / gamma_0'.
/// Base point at the middle of the real domain with base value gamma(z0), so
/// Im Phi = 0 on the real axis.
inline WeierstrassData weierstrass_from_null_curve(const AnalyticNullCurve& curve)
{
    const Interval dom = curve.domain();
    constexpr int samples = 64;
    for (int k = 0; k < samples; ++k) {
        const double u = dom.sample(k, samples);
        if (std::abs(curve.velocity(u).t) < 1e-12) {
            throw Error(ErrorCode::TimeComponentCritical, "gamma_0' vanishes at u = " + std::to_string(u));
        }
    }
    const Complex i(0.0, 1.0);
    WeierstrassData d;
    d.G = [curve, i](Complex z) {
        const CurveJet j = curve.jet(z, 2);
        const Complex num = j.d[1].x + i * j.d[1].y;
        const Complex dnum = j.d[2].x + i * j.d[2].y;
        const Complex g = -num / j.d[1].t;
        const Complex dg = -(dnum * j.d[1].t - num * j.d[2].t) / (j.d[1].t * j.d[1].t);
        return std::array<Complex, 2>{g, dg};
    };
    d.w = [curve, i](Complex z) {
        const ComplexVec3 v = curve.derivative(z, 1);
        return 0.5 * (v.x - i * v.y);
    };
    d.integrand = [curve](Complex z) { return curve.derivative(z, 1); };
    d.base_point = Complex(dom.mid(), 0.0);
    d.base_value = curve(d.base_point);
    const double r = curve.strip_radius();
    d.domain = ComplexRect{dom.a, dom.b, -r, r};
    return d;
}

/// Associated family member: eta -> e^{i theta} eta (G unchanged).
inline WeierstrassData rotate_data(const WeierstrassData& d, double theta)
{
    const Complex e = std::polar(1.0, theta);
    WeierstrassData r = d;
    r.w = [w = d.w, e](Complex z) { return e * w(z); };
    r.integrand = [f = d.integrand, e](Complex z) { return e * f(z); };
    r.base_value = e * d.base_value;
    return r;
}

namespace detail {

inline ComplexVec3 integrate_segment(const WeierstrassData& d, Complex a, Complex b, const AdaptiveOptions& opt)
{
    const Complex dz = b - a;
    auto f = [&](double s) { return dz * d.integrand(a + s * dz); };
    auto norm = [](const ComplexVec3& v) { return euclid_norm(v); };
    return integrate_adaptive<ComplexVec3>(f, 0.0, 1.0, norm, opt);
}

} // namespace detail

/// Phi(z) = base_value + integral of the integrand along the segment z0 -> z.
inline ComplexVec3 holomorphic_lift(const WeierstrassData& d, Complex z, const AdaptiveOptions& opt = {})
{
    if (!d.domain.contains(z)) throw Error(ErrorCode::OutsideDomain, "z outside the Weierstrass domain");
    return d.base_value + detail::integrate_segment(d, d.base_point, z, opt);
}

/// Same integral along the polyline base_point -> path[0] -> ... -> path.back().
inline ComplexVec3 holomorphic_lift_along(const WeierstrassData& d, const std::vector<Complex>& path,
                                          const AdaptiveOptions& opt = {})
{
    ComplexVec3 acc = d.base_value;
    Complex prev = d.base_point;
    for (const Complex& z : path) {
        if (!d.domain.contains(z)) throw Error(ErrorCode::OutsideDomain, "path vertex outside the Weierstrass domain");
        acc = acc + detail::integrate_segment(d, prev, z, opt);
        prev = z;
    }
    return acc;
}

inline LorentzVec3 maxface_eval(const WeierstrassData& d, Complex z) { return holomorphic_lift(d, z).real(); }
inline LorentzVec3 conjugate_eval(const WeierstrassData& d, Complex z) { return holomorphic_lift(d, z).imag(); }

/// |G(z)| - 1; zero exactly on the singular set.
inline double singular_residual(const WeierstrassData& d, Complex z) { return std::abs(d.G(z)[0]) - 1.0; }

inline bool is_nondegenerate_singular(const WeierstrassData& d, Complex z, double tol)
{
    const auto g = d.G(z);
    const double res = std::abs(g[0]) - 1.0;
    if (std::abs(res) > tol) {
        throw Error(ErrorCode::NotOnSingularSet, "|G| - 1 = " + std::to_string(res));
    }
    return std::abs(g[1]) > tol;
}

/// Re(G' / (G^2 w)); vanishes along non-degenerate folds.
inline double fold_criterion(const WeierstrassData& d, Complex z)
{
    const auto g = d.G(z);
    return (g[1] / (g[0] * g[0] * d.w(z))).real();
}

} // namespace zmc
