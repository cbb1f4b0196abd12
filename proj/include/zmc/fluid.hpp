#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "bjorling.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "null_curve.hpp"

namespace zmc {

/// Barotropic gas p = p0 - 1/rho, for which the sound speed is c = 1/rho.
struct VirtualGas {
    double rho0 = 1.0;
    double p0 = 1.0;

    [[nodiscard]] double pressure(double rho) const { return p0 - 1.0 / rho; }
    [[nodiscard]] double sound_speed(double rho) const { return 1.0 / rho; }
    /// -1/rho^2 + q^2 on a region where B has the given sign.
    [[nodiscard]] double bernoulli_k(double b_sign) const { return -(b_sign < 0.0 ? -1.0 : 1.0) / (rho0 * rho0); }
};

enum class Regime { Subsonic, Supersonic, Sonic };

constexpr const char* to_string(Regime r) noexcept
{
    switch (r) {
    case Regime::Subsonic: return "subsonic";
    case Regime::Supersonic: return "supersonic";
    case Regime::Sonic: return "sonic";
    }
    return "?";
}

struct FlowState {
    double x = 0.0;
    double y = 0.0;
    double psi = 0.0;
    std::array<double, 2> grad_psi{};
    double B = 0.0;
    double rho = 0.0;
    std::array<double, 2> velocity{};
    double q = 0.0;
    double sound_speed = 0.0;
    Regime regime = Regime::Subsonic;
    /// Set on sonic states: velocity and sound speed are infinite there.
    bool divergent = false;
};

inline FlowState flow_state(const GraphJet& g, const VirtualGas& gas, double x, double y, double tol = 1e-10)
{
    FlowState s;
    s.x = x;
    s.y = y;
    s.psi = g.f;
    s.grad_psi = {g.fx, g.fy};
    s.B = 1.0 - g.fx * g.fx - g.fy * g.fy;
    s.rho = gas.rho0 * std::sqrt(std::abs(s.B));
    if (std::abs(s.B) <= tol || !(s.rho > tol)) {
        s.regime = Regime::Sonic;
        s.divergent = true;
        s.velocity = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
        s.q = std::numeric_limits<double>::infinity();
        s.sound_speed = std::numeric_limits<double>::infinity();
        return s;
    }
    s.regime = s.B > 0.0 ? Regime::Subsonic : Regime::Supersonic;
    s.velocity = {g.fy / s.rho, -g.fx / s.rho};
    s.q = std::hypot(s.velocity[0], s.velocity[1]);
    s.sound_speed = gas.sound_speed(s.rho);
    return s;
}

inline FlowState flow_state(const GraphFunction& psi, const VirtualGas& gas, double x, double y, double tol = 1e-10)
{
    return flow_state(psi.jet(x, y), gas, x, y, tol);
}

/// Residual of the stream-function equation; with rho c = 1 it is the ZMC residual.
inline double verify_stream_equation(const GraphFunction& psi, double x, double y) { return zmc_residual(psi, x, y); }

struct ConservationReport {
    int grid = 0;
    double h = 0.0;
    double continuity_max = 0.0;
    double irrotational_max = 0.0;
    double bernoulli_k = 0.0;
    double bernoulli_deviation = 0.0;
};

/// Central-difference residuals of div(rho v) and v_x - u_y, and the spread of
/// -1/rho^2 + q^2 about its grid median, on an n x n grid over rect.
inline ConservationReport verify_conservation(const GraphFunction& psi, const VirtualGas& gas, const Rect& rect,
                                              double h, int n = 21)
{
    if (!(h > 0.0) || n < 2) throw Error(ErrorCode::InvalidArgument, "bad conservation grid");
    // The margin check samples B on a grid over the rect grown by 10h.
    const Rect outer{rect.x0 - 10 * h, rect.y0 - 10 * h, rect.x1 + 10 * h, rect.y1 + 10 * h};
    int positive = 0, negative = 0;
    const int m = 2 * n;
    for (int i = 0; i <= m; ++i) {
        for (int j = 0; j <= m; ++j) {
            const double x = outer.x0 + outer.width() * i / m;
            const double y = outer.y0 + outer.height() * j / m;
            const double b = B_and_gradB(psi, x, y).B;
            if (std::abs(b) <= 1e-10) {
                throw Error(ErrorCode::SonicInRect, "sonic point inside the verification rect");
            }
            (b > 0.0 ? positive : negative)++;
        }
    }
    if (positive > 0 && negative > 0) throw Error(ErrorCode::SonicInRect, "B changes sign inside the verification rect");

    auto mass_flux = [&](double x, double y) {
        const FlowState s = flow_state(psi, gas, x, y);
        return std::array<double, 2>{s.rho * s.velocity[0], s.rho * s.velocity[1]};
    };
    auto velocity = [&](double x, double y) { return flow_state(psi, gas, x, y).velocity; };

    ConservationReport r;
    r.grid = n;
    r.h = h;
    std::vector<double> bern;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double x = rect.x0 + rect.width() * i / (n - 1);
            const double y = rect.y0 + rect.height() * j / (n - 1);
            const auto fe = mass_flux(x + h, y), fw = mass_flux(x - h, y);
            const auto fn = mass_flux(x, y + h), fs = mass_flux(x, y - h);
            const double div = (fe[0] - fw[0]) / (2 * h) + (fn[1] - fs[1]) / (2 * h);
            const auto ve = velocity(x + h, y), vw = velocity(x - h, y);
            const auto vn = velocity(x, y + h), vs = velocity(x, y - h);
            const double rot = (ve[1] - vw[1]) / (2 * h) - (vn[0] - vs[0]) / (2 * h);
            r.continuity_max = std::max(r.continuity_max, std::abs(div));
            r.irrotational_max = std::max(r.irrotational_max, std::abs(rot));
            const FlowState s = flow_state(psi, gas, x, y);
            bern.push_back(-1.0 / (s.rho * s.rho) + s.q * s.q);
        }
    }
    std::vector<double> sorted = bern;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(sorted.size() / 2), sorted.end());
    r.bernoulli_k = sorted[sorted.size() / 2];
    for (double b : bern) r.bernoulli_deviation = std::max(r.bernoulli_deviation, std::abs(b - r.bernoulli_k));
    return r;
}

struct TransonicOptions {
    int samples = 32;
    double convexity_tol = 1e-6;
    /// Base offset h of the divergence fit over d in [h, 20h].
    double fit_h = 1e-5;
    /// Offset used for the regime and acceleration-side checks.
    double side_offset = 1e-3;
};

struct TransonicReport {
    int samples = 0;
    bool regime_flips = true;
    bool acceleration_points_supersonic = true;
    double max_sonic_B = 0.0;
    double exponent_subsonic = 0.0;
    double exponent_supersonic = 0.0;
    bool exponent_ok = true;

    [[nodiscard]] bool pass() const noexcept { return regime_flips && acceleration_points_supersonic && exponent_ok; }
};

struct TransonicFlow {
    GraphFunction psi;
    std::vector<std::array<double, 2>> sonic_line;
    TransonicReport report;
};

namespace detail {

/// Least-squares slope of log q against log d.
inline double loglog_slope(const std::vector<double>& d, const std::vector<double>& q)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double lx = std::log(d[i]), ly = std::log(q[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace detail

/// Stream function of a transonic flow whose sonic line is the locally convex
/// arclength curve sigma: the graph of the type-changing surface through the
/// null lift (t, sigma(t)), around the middle of sigma's domain.
inline TransonicFlow transonic_flow_from_convex_curve(const PlanarCurve& sigma, const VirtualGas& gas,
                                                      double half_width, int grid, const TransonicOptions& opt = {})
{
    const AnalyticNullCurve curve = lift_planar(sigma);
    for (int k = 0; k < 64; ++k) {
        const double u = sigma.domain().sample(k, 64);
        const auto a = sigma.derivative(u, 2);
        if (!(std::hypot(a[0], a[1]) > opt.convexity_tol)) {
            throw Error(ErrorCode::NotConvex, "sigma'' vanishes at u = " + std::to_string(u));
        }
    }
    const double u0 = sigma.domain().mid();
    TransonicFlow out{graph_around_curve(curve, u0, half_width, grid), {}, {}};
    TransonicReport& rep = out.report;
    rep.samples = opt.samples;
    // Sample the part of sigma well inside the graph window.
    const double reach = 0.5 * std::min(half_width, 0.5 * curve.strip_radius());
    const double lo = std::max(sigma.domain().a, u0 - reach);
    const double hi = std::min(sigma.domain().b, u0 + reach);
    double worst_sub = 0.0, worst_sup = 0.0;
    for (int k = 0; k < opt.samples; ++k) {
        const double u = lo + (hi - lo) * (k + 0.5) / opt.samples;
        const auto p = sigma.point(u);
        out.sonic_line.push_back(p);
        rep.max_sonic_B = std::max(rep.max_sonic_B, std::abs(B_and_gradB(out.psi, p[0], p[1]).B));
        const auto a = sigma.derivative(u, 2);
        const double an = std::hypot(a[0], a[1]);
        const std::array<double, 2> n{a[0] / an, a[1] / an};
        auto at = [&](double d) { return flow_state(out.psi, gas, p[0] + d * n[0], p[1] + d * n[1]); };
        const FlowState inner = at(opt.side_offset);
        const FlowState outer = at(-opt.side_offset);
        if (inner.regime == outer.regime || inner.regime == Regime::Sonic || outer.regime == Regime::Sonic) {
            rep.regime_flips = false;
        }
        if (inner.regime != Regime::Supersonic) rep.acceleration_points_supersonic = false;
        std::vector<double> ds, q_sup, q_sub;
        for (int j = 0; j <= 10; ++j) {
            const double d = opt.fit_h * std::pow(20.0, j / 10.0);
            ds.push_back(d);
            q_sup.push_back(at(d).q);
            q_sub.push_back(at(-d).q);
        }
        const double e_sup = detail::loglog_slope(ds, q_sup);
        const double e_sub = detail::loglog_slope(ds, q_sub);
        if (std::abs(e_sup + 0.5) > std::abs(worst_sup + 0.5)) worst_sup = e_sup;
        if (std::abs(e_sub + 0.5) > std::abs(worst_sub + 0.5)) worst_sub = e_sub;
        if (k == 0) {
            worst_sup = e_sup;
            worst_sub = e_sub;
        }
    }
    rep.exponent_supersonic = worst_sup;
    rep.exponent_subsonic = worst_sub;
    rep.exponent_ok = std::abs(worst_sup + 0.5) <= 0.1 && std::abs(worst_sub + 0.5) <= 0.1;
    return out;
}

} // namespace zmc
