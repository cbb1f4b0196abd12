#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "lorentz.hpp"
#include "null_curve.hpp"

namespace zmc {

enum class ChartKind {
    Graph,          // (u, v) = (x, y)
    Conformal,      // Re or Im of a holomorphic null map of z = u + i v
    NullCoordinates,// (alpha(u) + beta(v)) / 2 type time-like charts
    Other
};

struct Chart {
    std::string name;
    std::function<LorentzVec3(double, double)> map;
    double u0 = 0.0;
    double u1 = 1.0;
    double v0 = 0.0;
    double v1 = 1.0;
    ChartKind kind = ChartKind::Other;
    /// Isometry or congruence applied relative to the textbook formula, if any.
    std::string note;
};

struct CatalogSurface {
    std::string name;
    std::string equation;
    std::function<double(const LorentzVec3&)> implicit_residual;
    std::vector<Chart> charts;
    std::string causal_note;
    std::vector<std::string> related;
    std::optional<GraphFunction> graph;
};

// ---------------------------------------------------------------------------
// Null curves used across the catalog.

inline AnalyticNullCurve circle_null_curve()
{
    return make_closed_form_curve(
        [](auto z) {
            using std::cos;
            using std::sin;
            return std::array{z, cos(z), sin(z)};
        },
        Interval{0.0, 2.0 * std::numbers::pi}, 1.0);
}

/// alpha(u) = (sinh u, u, cosh u).
inline AnalyticNullCurve alpha_curve()
{
    return make_closed_form_curve(
        [](auto z) {
            using std::cosh;
            using std::sinh;
            return std::array{sinh(z), z, cosh(z)};
        },
        Interval{-2.0, 2.0}, 1.0);
}

/// beta(v) = (sinh v, v, -cosh v).
inline AnalyticNullCurve beta_curve()
{
    return make_closed_form_curve(
        [](auto z) {
            using std::cosh;
            using std::sinh;
            return std::array{sinh(z), z, -cosh(z)};
        },
        Interval{-2.0, 2.0}, 1.0);
}

/// Image of the singular curve |z| = 1 under the Scherk conjugate:
/// (log cot u, (1/2) log((1 - cos u)/(1 + cos u)), (1/2) log((1 + sin u)/(1 - sin u))).
inline AnalyticNullCurve scherk_null_curve()
{
    return make_closed_form_curve(
        [](auto z) {
            using std::cos;
            using std::log;
            using std::sin;
            return std::array{log(cos(z) / sin(z)), 0.5 * log((1.0 - cos(z)) / (1.0 + cos(z))),
                              0.5 * log((1.0 + sin(z)) / (1.0 - sin(z)))};
        },
        Interval{0.1, 0.5 * std::numbers::pi - 0.1}, 0.05);
}

/// Directrix of the parabolic helicoid, (-u - u^3/3, -u + u^3/3, -u^2).
inline AnalyticNullCurve parabolic_directrix()
{
    return make_closed_form_curve(
        [](auto z) {
            const auto z3 = z * z * z;
            return std::array{-z - z3 / 3.0, -z + z3 / 3.0, -(z * z)};
        },
        Interval{-1.5, 1.5}, 1.0);
}

/// The light-like line (u, u, 0): null and regular but degenerate.
inline AnalyticNullCurve degenerate_line()
{
    return make_closed_form_curve([](auto z) { return std::array{z, z, z * 0.0}; }, Interval{-1.0, 1.0}, 1.0);
}

// ---------------------------------------------------------------------------
// Scherk parametrizations on the unit disk.

namespace detail {

inline void check_scherk_chart(Complex z)
{
    const Complex branch[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (const Complex& b : branch) {
        if (std::abs(z - b) < 1e-6) throw Error(ErrorCode::NearBranchPoint, "z is within 1e-6 of a branch point");
    }
    if (!(std::abs(z) < 1.0)) throw Error(ErrorCode::OutOfChart, "z outside the open unit disk");
}

/// The three quotients whose arguments/log-moduli define the Scherk maps.
inline std::array<Complex, 3> scherk_quotients(Complex z)
{
    const Complex i(0.0, 1.0);
    return {(1.0 + z * z) / (1.0 - z * z), (1.0 - z) / (1.0 + z), (1.0 - i * z) / (1.0 + i * z)};
}

} // namespace detail

/// Space-like Scherk maxface on the unit disk. Each quotient maps the disk into
/// the right half-plane, so principal arguments are continuous there. The
/// time slot is reflected (t -> pi - t) so the image satisfies cos t = cos x cos y.
inline LorentzVec3 scherk_maxface(Complex z)
{
    detail::check_scherk_chart(z);
    const auto q = detail::scherk_quotients(z);
    const double h = 0.5 * std::numbers::pi;
    return {h - std::arg(q[0]), h + std::arg(q[1]), h + std::arg(q[2])};
}

/// Log-modulus conjugate, with t -> -t so that e^t cosh x = cosh y.
inline LorentzVec3 scherk_conjugate(Complex z)
{
    detail::check_scherk_chart(z);
    const auto q = detail::scherk_quotients(z);
    return {-std::log(std::abs(q[0])), std::log(std::abs(q[1])), std::log(std::abs(q[2]))};
}

namespace detail {

inline LorentzVec3 scherk_gamma(double u)
{
    const double c = std::cos(u), s = std::sin(u);
    return {std::log(c / s), 0.5 * std::log((1.0 - c) / (1.0 + c)), 0.5 * std::log((1.0 + s) / (1.0 - s))};
}

inline void check_scherk_null_chart(double u, double v)
{
    const double h = 0.5 * std::numbers::pi;
    if (!(u > 0.0 && u < h && v > 0.0 && v < h)) throw Error(ErrorCode::OutOfChart, "need 0 < u, v < pi/2");
}

} // namespace detail

/// (gamma(u) - gamma(v)) / 2: the time-like Scherk surface, cosh t = cosh x cosh y.
inline LorentzVec3 scherk_timelike(double u, double v)
{
    detail::check_scherk_null_chart(u, v);
    return 0.5 * (detail::scherk_gamma(u) - detail::scherk_gamma(v));
}

/// (gamma(u) + gamma(v)) / 2 with t -> -t: the time-like extension across the
/// fold of the Scherk conjugate, inside e^t cosh x = cosh y.
inline LorentzVec3 scherk_conjugate_extension(double u, double v)
{
    detail::check_scherk_null_chart(u, v);
    LorentzVec3 p = 0.5 * (detail::scherk_gamma(u) + detail::scherk_gamma(v));
    p.t = -p.t;
    return p;
}

// ---------------------------------------------------------------------------
// Graph-type entries.

inline GraphFunction c_zero_graph(Rect domain = {-2.0, -3.0, 2.0, 3.0})
{
    return make_closed_form_graph(
        [](auto x, auto y) {
            using std::tanh;
            return y * tanh(x);
        },
        domain);
}

inline GraphFunction s_zero_graph(Rect domain = {-2.0, -2.0, 2.0, 2.0})
{
    return make_closed_form_graph(
        [](auto x, auto y) {
            using std::cosh;
            using std::log;
            return log(cosh(y)) - log(cosh(x));
        },
        domain);
}

/// t = atan2(y, x), the helicoid x sin t = y cos t off the negative x-axis.
inline GraphFunction helicoid_graph(Rect domain = {0.2, -2.0, 2.0, 2.0})
{
    return GraphFunction::analytic(
        [](double x, double y) {
            const double r2 = x * x + y * y;
            const double r4 = r2 * r2;
            GraphJet g;
            g.f = std::atan2(y, x);
            g.fx = -y / r2;
            g.fy = x / r2;
            g.fxx = 2.0 * x * y / r4;
            g.fxy = (y * y - x * x) / r4;
            g.fyy = -2.0 * x * y / r4;
            return g;
        },
        domain);
}

// ---------------------------------------------------------------------------
// The registry.

namespace detail {

inline Chart chart(std::string name, std::function<LorentzVec3(double, double)> map, double u0, double u1, double v0,
                   double v1, ChartKind kind, std::string note = {})
{
    return Chart{std::move(name), std::move(map), u0, u1, v0, v1, kind, std::move(note)};
}

inline Chart graph_chart(const GraphFunction& g)
{
    const Rect& r = g.domain();
    return chart(
        "graph", [g](double x, double y) { return LorentzVec3{g.value(x, y), x, y}; }, r.x0, r.x1, r.y0, r.y1,
        ChartKind::Graph);
}

inline std::vector<CatalogSurface> build_catalog()
{
    using std::cos;
    using std::cosh;
    using std::sin;
    using std::sinh;
    const double pi = std::numbers::pi;
    std::vector<CatalogSurface> cat;

    {
        CatalogSurface s;
        s.name = "C_plus";
        s.equation = "sin^2 x + y^2 - t^2 = 0";
        s.implicit_residual = [](const LorentzVec3& p) { return sin(p.x) * sin(p.x) + p.y * p.y - p.t * p.t; };
        s.charts.push_back(chart(
            "phi1", [](double u, double v) { return LorentzVec3{cosh(u) * sin(v), v, sinh(u) * sin(v)}; }, -2, 2, -3,
            3, ChartKind::Conformal));
        s.charts.push_back(chart(
            "psi1", [](double u, double v) { return LorentzVec3{-cosh(u) * sin(v), v, -sinh(u) * sin(v)}; }, -2, 2,
            -3, 3, ChartKind::Conformal));
        s.causal_note = "space-like hyperbolic catenoid; cone-like singular points along v = n pi";
        s.related = {"C_zero: -(conjugate of phi1) = (sinh u cos v, u, cosh u cos v)"};
        cat.push_back(std::move(s));
    }
    {
        CatalogSurface s;
        s.name = "C_minus";
        s.equation = "sinh^2 x + y^2 - t^2 = 0";
        s.implicit_residual = [](const LorentzVec3& p) { return sinh(p.x) * sinh(p.x) + p.y * p.y - p.t * p.t; };
        s.charts.push_back(chart(
            "phi2",
            [](double u, double v) {
                return LorentzVec3{0.5 * (sinh(u) + sinh(v)), 0.5 * (u + v), 0.5 * (cosh(u) - cosh(v))};
            },
            -2, 2, -2, 2, ChartKind::NullCoordinates));
        s.charts.push_back(chart(
            "psi2",
            [](double u, double v) {
                return LorentzVec3{-0.5 * (sinh(u) + sinh(v)), 0.5 * (u + v), 0.5 * (cosh(v) - cosh(u))};
            },
            -2, 2, -2, 2, ChartKind::NullCoordinates));
        s.causal_note = "time-like hyperbolic catenoid";
        s.related = {"C_zero: conjugate (alpha(u) - beta(v)) / 2"};
        cat.push_back(std::move(s));
    }
    {
        CatalogSurface s;
        s.name = "S_plus";
        s.equation = "cos t - cos x cos y = 0";
        s.implicit_residual = [](const LorentzVec3& p) { return cos(p.t) - cos(p.x) * cos(p.y); };
        s.charts.push_back(chart(
            "phi1", [](double u, double v) { return scherk_maxface(Complex(u, v)); }, -0.65, 0.65, -0.65, 0.65,
            ChartKind::Conformal, "time slot reflected t -> pi - t"));
        s.charts.push_back(chart(
            "psi1",
            [pi](double u, double v) {
                const LorentzVec3 p = scherk_maxface(Complex(u, v));
                return LorentzVec3{pi - p.t, p.x, pi - p.y};
            },
            -0.65, 0.65, -0.65, 0.65, ChartKind::Conformal, "time slot reflected t -> pi - t"));
        s.causal_note = "space-like Scherk surface; triply periodic with period 2 pi in t, x, y";
        s.related = {"S_zero: log-modulus conjugate"};
        cat.push_back(std::move(s));
    }
    {
        CatalogSurface s;
        s.name = "S_minus";
        s.equation = "cosh t - cosh x cosh y = 0";
        s.implicit_residual = [](const LorentzVec3& p) { return cosh(p.t) - cosh(p.x) * cosh(p.y); };
        s.charts.push_back(chart(
            "psi2", [](double u, double v) { return scherk_timelike(u, v); }, 0.15, 0.5 * pi - 0.15, 0.15,
            0.5 * pi - 0.15, ChartKind::NullCoordinates));
        s.causal_note = "time-like Scherk surface of the first kind";
        s.related = {"S_zero: conjugate (gamma(u) + gamma(v)) / 2"};
        cat.push_back(std::move(s));
    }
    {
        CatalogSurface s;
        s.name = "C_zero";
        s.equation = "t - y tanh x = 0";
        s.implicit_residual = [](const LorentzVec3& p) { return p.t - p.y * std::tanh(p.x); };
        s.graph = c_zero_graph();
        s.charts.push_back(graph_chart(*s.graph));
        s.charts.push_back(chart(
            "minus_phi1_star", [](double u, double v) { return LorentzVec3{sinh(u) * cos(v), u, cosh(u) * cos(v)}; },
            -2, 2, -3, 3, ChartKind::Conformal));
        s.charts.push_back(chart(
            "phi2_star", [](double xi, double ze) { return LorentzVec3{cosh(xi) * sinh(ze), ze, cosh(xi) * cosh(ze)}; },
            -1.5, 1.5, -1.5, 1.5, ChartKind::Other, "(xi, zeta) = ((u + v)/2, (u - v)/2)"));
        s.causal_note = "entire graph; changes type across the null curves y = +-cosh x";
        s.related = {"C_plus", "C_minus"};
        cat.push_back(std::move(s));
    }
    {
        CatalogSurface s;
        s.name = "S_zero";
        s.equation = "e^t cosh x - cosh y = 0";
        s.implicit_residual = [](const LorentzVec3& p) { return std::exp(p.t) * cosh(p.x) - cosh(p.y); };
        s.graph = s_zero_graph();
        s.charts.push_back(graph_chart(*s.graph));
        s.charts.push_back(chart(
            "psi1_star", [](double u, double v) { return scherk_conjugate(Complex(u, v)); }, -0.65, 0.65, -0.65, 0.65,
            ChartKind::Conformal, "t -> -t"));
        s.charts.push_back(chart(
            "psi2_hat", [](double u, double v) { return scherk_conjugate_extension(u, v); }, 0.15, 0.5 * pi - 0.15,
            0.15, 0.5 * pi - 0.15, ChartKind::NullCoordinates, "t -> -t"));
        s.causal_note = "entire graph; changes type across tanh^2 x + tanh^2 y = 1";
        s.related = {"S_plus", "S_minus"};
        cat.push_back(std::move(s));
    }
    {
        CatalogSurface s;
        s.name = "helicoid";
        s.equation = "x sin t - y cos t = 0";
        s.implicit_residual = [](const LorentzVec3& p) { return p.x * sin(p.t) - p.y * cos(p.t); };
        s.graph = helicoid_graph();
        s.charts.push_back(graph_chart(*s.graph));
        s.charts.push_back(chart(
            "bjorling_max", [](double u, double v) { return LorentzVec3{u, cos(u) * cosh(v), sin(u) * cosh(v)}; }, -pi,
            pi, -1, 1, ChartKind::Conformal));
        s.charts.push_back(chart(
            "bjorling_timelike", [](double u, double v) { return LorentzVec3{u, cos(u) * cos(v), sin(u) * cos(v)}; },
            -pi, pi, -1, 1, ChartKind::NullCoordinates));
        s.charts.push_back(chart(
            "elliptic_conjugate",
            [](double u, double v) { return LorentzVec3{-u, cos(u) * cosh(v), -sin(u) * cosh(v)}; }, -pi, pi, -1.5,
            1.5, ChartKind::Conformal, "x and y swapped"));
        s.causal_note = "changes type across the unit circle (space-like for r > 1)";
        s.related = {"elliptic_catenoid_spacelike", "elliptic_catenoid_timelike"};
        cat.push_back(std::move(s));
    }
    {
        CatalogSurface s;
        s.name = "elliptic_catenoid_spacelike";
        s.equation = "x^2 + y^2 - sinh^2 t = 0";
        s.implicit_residual = [](const LorentzVec3& p) { return p.x * p.x + p.y * p.y - sinh(p.t) * sinh(p.t); };
        s.charts.push_back(chart(
            "phiE_plus", [](double u, double v) { return LorentzVec3{v, cos(u) * sinh(v), sin(u) * sinh(v)}; }, -pi,
            pi, -1.5, 1.5, ChartKind::Conformal));
        s.causal_note = "space-like elliptic catenoid";
        s.related = {"helicoid"};
        cat.push_back(std::move(s));
    }
    {
        CatalogSurface s;
        s.name = "elliptic_catenoid_timelike";
        s.equation = "x^2 - y^2 - sinh^2 t = 0";
        s.implicit_residual = [](const LorentzVec3& p) { return p.x * p.x - p.y * p.y - sinh(p.t) * sinh(p.t); };
        s.charts.push_back(chart(
            "phiE_minus", [](double u, double v) { return LorentzVec3{v, cosh(u) * sinh(v), sinh(u) * sinh(v)}; },
            -1.5, 1.5, -1.5, 1.5, ChartKind::Other));
        s.causal_note = "time-like elliptic catenoid";
        s.related = {"helicoid"};
        cat.push_back(std::move(s));
    }
    {
        CatalogSurface s;
        s.name = "parabolic_completion_plus";
        s.equation = "(x + t){12(x - t) - (x + t)^3} + 12 y^2 = 0";
        s.implicit_residual = [](const LorentzVec3& p) {
            const double a = p.x + p.t;
            return a * (12.0 * (p.x - p.t) - a * a * a) + 12.0 * p.y * p.y;
        };
        s.charts.push_back(chart(
            "phiP_plus",
            [](double u, double v) {
                return LorentzVec3{v - v * v * v / 3.0 + u * u * v, v + v * v * v / 3.0 - u * u * v, 2.0 * u * v};
            },
            -1.5, 1.5, -1.5, 1.5, ChartKind::Conformal));
        s.causal_note = "space-like parabolic catenoid completed by the light-like line y = x + t = 0";
        s.related = {"parabolic_helicoid"};
        cat.push_back(std::move(s));
    }
    {
        CatalogSurface s;
        s.name = "parabolic_completion_minus";
        s.equation = "(x + t){12(x - t) + (x + t)^3} + 12 y^2 = 0";
        s.implicit_residual = [](const LorentzVec3& p) {
            const double a = p.x + p.t;
            return a * (12.0 * (p.x - p.t) + a * a * a) + 12.0 * p.y * p.y;
        };
        s.charts.push_back(chart(
            "phiP_minus",
            [](double u, double v) {
                return LorentzVec3{-u - u * u * u / 3.0 - u * v * v, -u + u * u * u / 3.0 + u * v * v, -2.0 * u * v};
            },
            -1.5, 1.5, -1.5, 1.5, ChartKind::Other, "third slot -2uv"));
        s.causal_note = "time-like parabolic catenoid completed by the light-like line y = x + t = 0";
        s.related = {"parabolic_helicoid"};
        cat.push_back(std::move(s));
    }
    {
        CatalogSurface s;
        s.name = "parabolic_helicoid";
        s.equation = "(t - x) + (t + x)^3 / 6 + (t + x) y = 0";
        s.implicit_residual = [](const LorentzVec3& p) {
            const double a = p.t + p.x;
            return (p.t - p.x) + a * a * a / 6.0 + a * p.y;
        };
        s.charts.push_back(chart(
            "phiP_zero",
            [](double u, double v) {
                return LorentzVec3{-u - u * u * u / 3.0 + v * u, -u + u * u * u / 3.0 - v * u, -u * u + v};
            },
            -1.5, 1.5, -1.5, 1.5, ChartKind::Other));
        s.charts.push_back(chart(
            "timelike_extension",
            [](double u, double v) {
                return LorentzVec3{-u - u * u * u / 3.0 - u * v * v, -u + u * u * u / 3.0 + u * v * v, -u * u - v * v};
            },
            -1.5, 1.5, -1.5, 1.5, ChartKind::NullCoordinates));
        s.charts.push_back(chart(
            "maximal_extension",
            [](double u, double v) {
                // Re gamma(u + i v) of the directrix.
                return LorentzVec3{-u - u * u * u / 3.0 + u * v * v, -u + u * u * u / 3.0 - u * v * v, -u * u + v * v};
            },
            -1.5, 1.5, -1.5, 1.5, ChartKind::Conformal));
        s.causal_note = "ruled; changes type across the directrix (-u - u^3/3, -u + u^3/3, -u^2)";
        s.related = {"parabolic_completion_plus", "parabolic_completion_minus"};
        cat.push_back(std::move(s));
    }
    return cat;
}

} // namespace detail

inline const std::vector<CatalogSurface>& catalog_list()
{
    static const std::vector<CatalogSurface> cat = detail::build_catalog();
    return cat;
}

inline const CatalogSurface& catalog_get(const std::string& name)
{
    for (const auto& s : catalog_list()) {
        if (s.name == name) return s;
    }
    throw Error(ErrorCode::UnknownName, "no catalog surface named '" + name + "'");
}

inline const Chart& chart_get(const CatalogSurface& s, const std::string& name)
{
    if (name.empty()) return s.charts.front();
    for (const auto& c : s.charts) {
        if (c.name == name) return c;
    }
    throw Error(ErrorCode::UnknownName, "surface '" + s.name + "' has no chart '" + name + "'");
}

// ---------------------------------------------------------------------------
// Sampling helpers and identity checks.

/// Radical-inverse Halton point k (k >= 1) in bases 2 and 3.
inline std::array<double, 2> halton2(int k)
{
    auto radical = [](int n, int base) {
        double f = 1.0, r = 0.0;
        while (n > 0) {
            f /= base;
            r += f * (n % base);
            n /= base;
        }
        return r;
    };
    return {radical(k, 2), radical(k, 3)};
}

inline std::array<double, 2> chart_sample(const Chart& c, int k)
{
    const auto h = halton2(k);
    return {c.u0 + h[0] * (c.u1 - c.u0), c.v0 + h[1] * (c.v1 - c.v0)};
}

/// Max |F o chart| over n Halton samples.
inline double chart_max_residual(const CatalogSurface& s, const Chart& c, int n)
{
    double worst = 0.0;
    for (int k = 1; k <= n; ++k) {
        const auto uv = chart_sample(c, k);
        worst = std::max(worst, std::abs(s.implicit_residual(c.map(uv[0], uv[1]))));
    }
    return worst;
}

struct ConjugateIdentityReport {
    int samples = 0;
    double minus_phi1_star_in_C_zero = 0.0;
    double phi2_star_in_C_zero = 0.0;
    double psi1_star_in_S_zero = 0.0;
    double psi2_in_S_minus = 0.0;
    double cosh_chain = 0.0;
};

/// The conjugate identities between the catalog families, at n Halton samples each.
inline ConjugateIdentityReport conjugate_identities_check(int n = 1000)
{
    using std::cos;
    using std::cosh;
    using std::sin;
    using std::sinh;
    ConjugateIdentityReport r;
    r.samples = n;
    const auto& c0 = catalog_get("C_zero");
    const auto& s0 = catalog_get("S_zero");
    const auto& sm = catalog_get("S_minus");
    const double h = 0.5 * std::numbers::pi;
    for (int k = 1; k <= n; ++k) {
        const auto q = halton2(k);
        {
            const double u = -2.0 + 4.0 * q[0], v = -3.0 + 6.0 * q[1];
            const LorentzVec3 p{sinh(u) * cos(v), u, cosh(u) * cos(v)};
            r.minus_phi1_star_in_C_zero = std::max(r.minus_phi1_star_in_C_zero, std::abs(c0.implicit_residual(p)));
        }
        {
            // phi2* = (alpha(u) - beta(v)) / 2 in the original (u, v).
            const double u = -2.0 + 4.0 * q[0], v = -2.0 + 4.0 * q[1];
            const LorentzVec3 p{0.5 * (sinh(u) - sinh(v)), 0.5 * (u - v), 0.5 * (cosh(u) + cosh(v))};
            r.phi2_star_in_C_zero = std::max(r.phi2_star_in_C_zero, std::abs(c0.implicit_residual(p)));
        }
        {
            const Complex z(-0.65 + 1.3 * q[0], -0.65 + 1.3 * q[1]);
            r.psi1_star_in_S_zero =
                std::max(r.psi1_star_in_S_zero, std::abs(s0.implicit_residual(scherk_conjugate(z))));
        }
        {
            const double u = 0.15 + (h - 0.3) * q[0], v = 0.15 + (h - 0.3) * q[1];
            const LorentzVec3 p = scherk_timelike(u, v);
            r.psi2_in_S_minus = std::max(r.psi2_in_S_minus, std::abs(sm.implicit_residual(p)));
            const double chain = sin(u + v) / std::sqrt(sin(2.0 * u) * sin(2.0 * v));
            r.cosh_chain = std::max(r.cosh_chain, std::abs(cosh(p.t) - chain));
        }
    }
    return r;
}

/// Quadratic contact coefficient q(c) of the completed space-like parabolic
/// catenoid along the light-like line: t(c, y) + c = q(c) y^2 + O(y^4).
/// With delta = t + c and x = c the surface reads
/// delta (12 (2c - delta) - delta^3) + 12 y^2 = 0.
inline double alpha0_II_contact(double c)
{
    if (!(std::abs(c) >= 0.1 && std::abs(c) <= 10.0)) {
        throw Error(ErrorCode::InvalidArgument, "alpha0_II_contact needs |c| in [0.1, 10]");
    }
    auto solve = [c](double y) {
        double d = 0.0;
        for (int it = 0; it < 100; ++it) {
            const double g = d * (12.0 * (2.0 * c - d) - d * d * d) + 12.0 * y * y;
            const double dg = 24.0 * c - 24.0 * d - 4.0 * d * d * d;
            const double step = g / dg;
            d -= step;
            if (std::abs(step) <= 1e-17 + 1e-15 * std::abs(d)) return d;
        }
        throw Error(ErrorCode::NewtonFailed, "no root near t = -c");
    };
    const double h = 1e-3;
    const double e1 = 0.5 * (solve(h) + solve(-h));
    const double e2 = 0.5 * (solve(2.0 * h) + solve(-2.0 * h));
    return (16.0 * e1 - e2) / (12.0 * h * h);
}

} // namespace zmc
