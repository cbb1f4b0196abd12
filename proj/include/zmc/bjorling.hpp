#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "lorentz.hpp"
#include "null_curve.hpp"

namespace zmc {

enum class ExtensionSide { Maximal, Timelike, Unified };

constexpr const char* to_string(ExtensionSide s) noexcept
{
    switch (s) {
    case ExtensionSide::Maximal: return "max";
    case ExtensionSide::Timelike: return "timelike";
    case ExtensionSide::Unified: return "unified";
    }
    return "?";
}

/// Re gamma(u + i|v|): the space-like extension, symmetric in v by construction.
inline LorentzVec3 maximal_extension(const AnalyticNullCurve& curve, double u, double v)
{
    if (!(std::abs(v) < curve.strip_radius())) {
        throw Error(ErrorCode::OutsideStrip, "|v| = " + std::to_string(std::abs(v)) + " is outside the strip");
    }
    if (v == 0.0) return curve(Complex(u, 0.0)).real();
    return curve(Complex(u, std::abs(v))).real();
}

/// (gamma(u + v) + gamma(u - v)) / 2: the time-like extension.
inline LorentzVec3 timelike_extension(const AnalyticNullCurve& curve, double u, double v)
{
    const Interval& d = curve.domain();
    if (!d.contains(u + v) || !d.contains(u - v)) {
        throw Error(ErrorCode::OutsideDomain, "u +- v leaves the curve domain");
    }
    if (v == 0.0) return curve(Complex(u, 0.0)).real();
    return 0.5 * (curve(Complex(u + v, 0.0)).real() + curve(Complex(u - v, 0.0)).real());
}

/// H(u, w): time-like side for w >= 0, space-like side for w < 0; real
/// analytic across w = 0.
inline LorentzVec3 unified_extension(const AnalyticNullCurve& curve, double u, double w)
{
    const double r = curve.strip_radius();
    if (!(std::abs(w) < r * r)) {
        throw Error(ErrorCode::OutsideStrip, "|w| = " + std::to_string(std::abs(w)) + " exceeds strip_radius^2");
    }
    if (w >= 0.0) return timelike_extension(curve, u, std::sqrt(w));
    return maximal_extension(curve, u, std::sqrt(-w));
}

/// Position and first/second partials of a parametrized surface.
struct SurfaceJet {
    LorentzVec3 p;
    LorentzVec3 pu;
    LorentzVec3 pv;
    LorentzVec3 puu;
    LorentzVec3 puv;
    LorentzVec3 pvv;
};

namespace detail {

/// H(u, w) for complex w through (gamma(u + s) + gamma(u - s)) / 2, s^2 = w;
/// even in s, so the branch of the square root is irrelevant. `order` selects
/// gamma^(order) in place of gamma (u-derivatives of H).
inline ComplexVec3 unified_complex(const AnalyticNullCurve& c, double u, Complex w, int order)
{
    const Complex s = std::sqrt(w);
    const Complex zp = Complex(u) + s;
    const Complex zm = Complex(u) - s;
    const ComplexVec3 a = order == 0 ? c(zp) : c.derivative(zp, order);
    const ComplexVec3 b = order == 0 ? c(zm) : c.derivative(zm, order);
    return 0.5 * (a + b);
}

/// H, H_w, H_ww (and the same for H_u) from a Cauchy integral on a circle
/// around w0 inside the disc |w| < R^2.
struct CauchyW {
    std::array<LorentzVec3, 3> h;  // H, H_w, H_ww
    std::array<LorentzVec3, 2> hu; // H_u, H_uw
};

inline CauchyW cauchy_w(const AnalyticNullCurve& c, double u, double w0)
{
    constexpr int n = 40;
    const double r2 = c.strip_radius() * c.strip_radius();
    const double rho = 0.5 * (r2 - std::abs(w0));
    CauchyW out{};
    std::array<ComplexVec3, 3> acc{};
    std::array<ComplexVec3, 2> acc_u{};
    for (int k = 0; k < n; ++k) {
        const double th = 2.0 * std::numbers::pi * (k + 0.5) / n;
        const Complex e = std::polar(1.0, th);
        const Complex w = w0 + rho * e;
        const ComplexVec3 g = unified_complex(c, u, w, 0);
        const ComplexVec3 gu = unified_complex(c, u, w, 1);
        // m-th Taylor coefficient: (1/n) sum g(w_k) (rho e_k)^{-m}.
        Complex scale(1.0);
        for (int m = 0; m <= 2; ++m) {
            acc[static_cast<std::size_t>(m)] = acc[static_cast<std::size_t>(m)] + scale * g;
            if (m <= 1) acc_u[static_cast<std::size_t>(m)] = acc_u[static_cast<std::size_t>(m)] + scale * gu;
            scale /= rho * e;
        }
    }
    const double factorial[3] = {1.0, 1.0, 2.0};
    for (std::size_t m = 0; m < 3; ++m) out.h[m] = (factorial[m] / n) * acc[m].real();
    for (std::size_t m = 0; m < 2; ++m) out.hu[m] = (factorial[m] / n) * acc_u[m].real();
    return out;
}

/// (H_u, H_w) cheaply, for Newton Jacobians.
inline std::array<LorentzVec3, 2> unified_first(const AnalyticNullCurve& c, double u, double w)
{
    if (std::abs(w) < 1e-6) {
        const CurveJet j = c.jet(Complex(u, 0.0), 4);
        const LorentzVec3 hu = (j.d[1] + (w / 2.0) * j.d[3]).real();
        const LorentzVec3 hw = (0.5 * j.d[2] + (w / 12.0) * j.d[4]).real();
        return {hu, hw};
    }
    const Complex s = std::sqrt(Complex(w));
    const ComplexVec3 dp = c.derivative(Complex(u) + s, 1);
    const ComplexVec3 dm = c.derivative(Complex(u) - s, 1);
    const LorentzVec3 hu = (0.5 * (dp + dm)).real();
    const LorentzVec3 hw = ((1.0 / (4.0 * s)) * (dp - dm)).real();
    return {hu, hw};
}

} // namespace detail

/// Derivatives of H(u, w) in (u, w): u-derivatives from curve jets, w-derivatives
/// by contour integration in w (H is analytic in w on |w| < R^2).
inline SurfaceJet unified_jet(const AnalyticNullCurve& curve, double u, double w)
{
    const double r = curve.strip_radius();
    if (!(std::abs(w) < r * r)) throw Error(ErrorCode::OutsideStrip, "|w| exceeds strip_radius^2");
    const detail::CauchyW cw = detail::cauchy_w(curve, u, w);
    SurfaceJet j;
    j.p = unified_extension(curve, u, w);
    j.pu = cw.hu[0];
    j.pv = cw.h[1];
    j.puv = cw.hu[1];
    j.pvv = cw.h[2];
    j.puu = detail::unified_complex(curve, u, Complex(w), 2).real();
    return j;
}

/// One side of the singular Bjorling surface of a null curve.
class ExtensionSurface {
public:
    ExtensionSurface(AnalyticNullCurve source, ExtensionSide side) : source_(std::move(source)), side_(side) {}

    [[nodiscard]] const AnalyticNullCurve& source() const noexcept { return source_; }
    [[nodiscard]] ExtensionSide side() const noexcept { return side_; }

    /// (u, v) for Maximal and Timelike, (u, w) for Unified.
    [[nodiscard]] LorentzVec3 operator()(double u, double v) const
    {
        switch (side_) {
        case ExtensionSide::Maximal: return maximal_extension(source_, u, v);
        case ExtensionSide::Timelike: return timelike_extension(source_, u, v);
        case ExtensionSide::Unified: break;
        }
        return unified_extension(source_, u, v);
    }

    [[nodiscard]] SurfaceJet jet(double u, double v) const
    {
        if (side_ == ExtensionSide::Unified) return unified_jet(source_, u, v);
        SurfaceJet j;
        j.p = (*this)(u, v);
        if (side_ == ExtensionSide::Maximal) {
            // Re gamma(u + i|v|) with sgn(v) entering the odd v-derivatives.
            const double sg = v < 0.0 ? -1.0 : 1.0;
            const CurveJet c = source_.jet(Complex(u, std::abs(v)), 2);
            j.pu = c.d[1].real();
            j.pv = sg * (-1.0) * c.d[1].imag();
            j.puu = c.d[2].real();
            j.puv = sg * (-1.0) * c.d[2].imag();
            j.pvv = -1.0 * c.d[2].real();
        } else {
            const CurveJet a = source_.jet(Complex(u + v, 0.0), 2);
            const CurveJet b = source_.jet(Complex(u - v, 0.0), 2);
            j.pu = 0.5 * (a.d[1] + b.d[1]).real();
            j.pv = 0.5 * (a.d[1] - b.d[1]).real();
            j.puu = 0.5 * (a.d[2] + b.d[2]).real();
            j.puv = 0.5 * (a.d[2] - b.d[2]).real();
            j.pvv = j.puu;
        }
        return j;
    }

private:
    AnalyticNullCurve source_;
    ExtensionSide side_;
};

struct GraphInversionOptions {
    double newton_tol = 1e-12;
    int max_iter = 50;
};

namespace detail {

struct InversionSeed {
    double u;
    double w;
    double x;
    double y;
};

/// The graph t = f(x, y) of the unified extension near gamma(u0), obtained by
/// inverting (u, w) -> (H_x, H_y).
class BjorlingGraph {
public:
    BjorlingGraph(AnalyticNullCurve curve, double u_lo, double u_hi, double s_max, int grid,
                  GraphInversionOptions opt)
        : curve_(std::move(curve)), u_lo_(u_lo), u_hi_(u_hi), s_max_(s_max), opt_(opt)
    {
        for (int i = 0; i < grid; ++i) {
            const double u = u_lo + (u_hi - u_lo) * i / (grid - 1);
            for (int k = 0; k < grid; ++k) {
                const double s = -s_max + 2.0 * s_max * k / (grid - 1);
                const double w = s * std::abs(s);
                const LorentzVec3 p = unified_extension(curve_, u, w);
                seeds_.push_back({u, w, p.x, p.y});
            }
        }
    }

    [[nodiscard]] Rect bounding_box() const
    {
        Rect r{INFINITY, INFINITY, -INFINITY, -INFINITY};
        for (const auto& s : seeds_) {
            r.x0 = std::min(r.x0, s.x);
            r.y0 = std::min(r.y0, s.y);
            r.x1 = std::max(r.x1, s.x);
            r.y1 = std::max(r.y1, s.y);
        }
        return r;
    }

    /// (u, w) with H_x = x, H_y = y.
    [[nodiscard]] std::array<double, 2> invert(double x, double y) const
    {
        const InversionSeed* best = &seeds_.front();
        double best_d = INFINITY;
        for (const auto& s : seeds_) {
            const double d = (s.x - x) * (s.x - x) + (s.y - y) * (s.y - y);
            if (d < best_d) {
                best_d = d;
                best = &s;
            }
        }
        double u = best->u, w = best->w;
        const double w_cap = 0.81 * curve_.strip_radius() * curve_.strip_radius();
        const double u_margin = 0.5 * (u_hi_ - u_lo_);
        auto residual = [&](double uu, double ww) {
            const LorentzVec3 p = unified_extension(curve_, uu, ww);
            return std::array<double, 2>{p.x - x, p.y - y};
        };
        std::array<double, 2> r = residual(u, w);
        double scale = 1.0 + std::hypot(x, y);
        for (int it = 0; it < opt_.max_iter; ++it) {
            const double rn = std::hypot(r[0], r[1]);
            if (rn <= opt_.newton_tol * scale) return {u, w};
            const auto d = unified_first(curve_, u, w);
            const double a = d[0].x, b = d[1].x, c = d[0].y, e = d[1].y;
            const double det = a * e - b * c;
            if (!(std::abs(det) > 0.0)) break;
            const double du = (e * r[0] - b * r[1]) / det;
            const double dw = (-c * r[0] + a * r[1]) / det;
            // Backtracking keeps the iterate inside the extension window.
            double lam = 1.0;
            bool moved = false;
            for (int bt = 0; bt < 30; ++bt) {
                const double un = u - lam * du, wn = w - lam * dw;
                if (std::abs(wn) < w_cap && un > u_lo_ - u_margin && un < u_hi_ + u_margin &&
                    curve_.domain().contains(un + std::sqrt(std::max(wn, 0.0))) &&
                    curve_.domain().contains(un - std::sqrt(std::max(wn, 0.0)))) {
                    const auto rn_new = residual(un, wn);
                    if (std::hypot(rn_new[0], rn_new[1]) < rn || lam < 1e-3) {
                        u = un;
                        w = wn;
                        r = rn_new;
                        moved = true;
                        break;
                    }
                }
                lam *= 0.5;
            }
            if (!moved) break;
        }
        if (std::hypot(r[0], r[1]) <= 1e3 * opt_.newton_tol * scale) return {u, w};
        throw Error(ErrorCode::InversionFailed, "Newton inversion failed at (" + std::to_string(x) + ", " +
                                                    std::to_string(y) + ")");
    }

    [[nodiscard]] GraphJet jet(double x, double y) const
    {
        const auto uw = invert(x, y);
        const SurfaceJet h = unified_jet(curve_, uw[0], uw[1]);
        // J = d(x, y)/d(u, w); grad f = J^{-T} (T_u, T_w).
        const double j11 = h.pu.x, j12 = h.pv.x, j21 = h.pu.y, j22 = h.pv.y;
        const double det = j11 * j22 - j12 * j21;
        // A = J^{-1}: A[a][i] = d(u_a)/d(x_i).
        const double a[2][2] = {{j22 / det, -j12 / det}, {-j21 / det, j11 / det}};
        GraphJet g;
        g.f = h.p.t;
        g.fx = h.pu.t * a[0][0] + h.pv.t * a[1][0];
        g.fy = h.pu.t * a[0][1] + h.pv.t * a[1][1];
        // f_ij = sum_ab (T_ab - f_x X_ab - f_y Y_ab) A[a][i] A[b][j].
        const LorentzVec3 second[2][2] = {{h.puu, h.puv}, {h.puv, h.pvv}};
        double m[2][2];
        for (int p = 0; p < 2; ++p) {
            for (int q = 0; q < 2; ++q) {
                const LorentzVec3& s = second[p][q];
                m[p][q] = s.t - g.fx * s.x - g.fy * s.y;
            }
        }
        auto hess = [&](int i, int k) {
            double acc = 0.0;
            for (int p = 0; p < 2; ++p) {
                for (int q = 0; q < 2; ++q) acc += m[p][q] * a[p][i] * a[q][k];
            }
            return acc;
        };
        g.fxx = hess(0, 0);
        g.fxy = hess(0, 1);
        g.fyy = hess(1, 1);
        return g;
    }

private:
    AnalyticNullCurve curve_;
    double u_lo_;
    double u_hi_;
    double s_max_;
    GraphInversionOptions opt_;
    std::vector<InversionSeed> seeds_;
};

} // namespace detail

/// Local graph t = f(x, y) of the type-changing surface through gamma near
/// gamma(u0). The returned domain is the bounding box of the seed samples;
/// points outside the invertible neighbourhood raise InversionFailed.
inline GraphFunction graph_around_curve(const AnalyticNullCurve& curve, double u0, double half_width, int grid,
                                        const GraphInversionOptions& opt = {})
{
    if (!curve.domain().contains(u0)) throw Error(ErrorCode::InvalidArgument, "u0 outside the curve domain");
    if (!(half_width > 0.0) || grid < 2) throw Error(ErrorCode::InvalidArgument, "bad graph window");
    if (!is_nondegenerate_at(curve, u0, 1e-8)) {
        throw Error(ErrorCode::DegenerateCurve, "curve is degenerate at u0 = " + std::to_string(u0));
    }
    const double s_max = std::min(half_width, 0.5 * curve.strip_radius());
    const double u_lo = std::max(u0 - half_width, curve.domain().a + s_max);
    const double u_hi = std::min(u0 + half_width, curve.domain().b - s_max);
    if (!(u_hi > u_lo)) throw Error(ErrorCode::InvalidArgument, "graph window collapses inside the curve domain");
    auto g = std::make_shared<detail::BjorlingGraph>(curve, u_lo, u_hi, s_max, grid, opt);
    const Rect box = g->bounding_box();
    return GraphFunction::analytic([g](double x, double y) { return g->jet(x, y); }, box);
}

} // namespace zmc
