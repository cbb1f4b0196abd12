#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "chebyshev.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "null_curve.hpp"

namespace zmc {

struct PolylinePoint {
    double x = 0.0;
    double y = 0.0;
    double B = 0.0;
    double grad_B_norm = 0.0;
};

struct Polyline {
    std::vector<PolylinePoint> points;
    bool closed = false;
};

struct TraceOptions {
    double on_curve_tol = 1e-10;
    double nondegenerate_tol = 1e-6;
    int corrector_iters = 30;
};

namespace detail {

inline PolylinePoint make_point(const GraphFunction& f, double x, double y)
{
    const BGrad b = B_and_gradB(f, x, y);
    return {x, y, b.B, b.grad_norm()};
}

/// Newton along grad B onto {B = 0}; returns false if it does not converge.
inline bool correct_onto_curve(const GraphFunction& f, double& x, double& y, const TraceOptions& opt)
{
    for (int it = 0; it < opt.corrector_iters; ++it) {
        const BGrad b = B_and_gradB(f, x, y);
        const double g2 = b.grad[0] * b.grad[0] + b.grad[1] * b.grad[1];
        if (std::sqrt(g2) <= opt.nondegenerate_tol) {
            throw Error(ErrorCode::DegenerateOnCurve, "|grad B| vanishes near (" + std::to_string(x) + ", " +
                                                          std::to_string(y) + ")");
        }
        if (std::abs(b.B) <= opt.on_curve_tol) return true;
        x -= b.B * b.grad[0] / g2;
        y -= b.B * b.grad[1] / g2;
    }
    return std::abs(B_and_gradB(f, x, y).B) <= opt.on_curve_tol;
}

/// Zero of B on the segment p -> q (B(p), B(q) of either sign), by secant-safeguarded
/// bisection on the segment parameter. Used to land on the domain boundary.
inline std::array<double, 2> zero_on_segment(const GraphFunction& f, std::array<double, 2> p, std::array<double, 2> q,
                                             const TraceOptions& opt)
{
    auto at = [&](double s) {
        const double x = p[0] + s * (q[0] - p[0]);
        const double y = p[1] + s * (q[1] - p[1]);
        return B_and_gradB(f, x, y).B;
    };
    double lo = 0.0, hi = 1.0;
    double blo = at(lo), bhi = at(hi);
    if (blo * bhi > 0.0) {
        // No sign change along the edge: keep the closer endpoint's projection.
        const double s = std::abs(blo) < std::abs(bhi) ? 0.0 : 1.0;
        return {p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])};
    }
    double s = 0.5;
    for (int it = 0; it < 200; ++it) {
        s = (blo * hi - bhi * lo) / (blo - bhi);
        if (!(s > lo && s < hi)) s = 0.5 * (lo + hi);
        const double bs = at(s);
        if (std::abs(bs) <= opt.on_curve_tol || hi - lo < 1e-16) break;
        if ((bs < 0.0) == (blo < 0.0)) {
            lo = s;
            blo = bs;
        } else {
            hi = s;
            bhi = bs;
        }
        // Force progress when one end stalls.
        if (it % 3 == 2) {
            const double m = 0.5 * (lo + hi);
            const double bm = at(m);
            if ((bm < 0.0) == (blo < 0.0)) {
                lo = m;
                blo = bm;
            } else {
                hi = m;
                bhi = bm;
            }
        }
    }
    return {p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])};
}

/// Where the segment p -> q (p inside) leaves the rectangle.
inline std::array<double, 2> exit_point(const Rect& r, std::array<double, 2> p, std::array<double, 2> q)
{
    double s = 1.0;
    const double dx = q[0] - p[0], dy = q[1] - p[1];
    if (dx > 0) s = std::min(s, (r.x1 - p[0]) / dx);
    if (dx < 0) s = std::min(s, (r.x0 - p[0]) / dx);
    if (dy > 0) s = std::min(s, (r.y1 - p[1]) / dy);
    if (dy < 0) s = std::min(s, (r.y0 - p[1]) / dy);
    s = std::clamp(s, 0.0, 1.0);
    return {p[0] + s * dx, p[1] + s * dy};
}

/// Traces one branch from the (corrected) seed; `sign` picks the orientation.
inline std::vector<PolylinePoint> trace_branch(const GraphFunction& f, double x0, double y0, double step, int max_points,
                                               double sign, bool& closed, const TraceOptions& opt)
{
    const Rect& dom = f.domain();
    std::vector<PolylinePoint> pts;
    double x = x0, y = y0;
    BGrad b = B_and_gradB(f, x, y);
    std::array<double, 2> tangent{-sign * b.grad[1] / b.grad_norm(), sign * b.grad[0] / b.grad_norm()};
    while (static_cast<int>(pts.size()) < max_points) {
        double h = step;
        double xn = 0.0, yn = 0.0;
        bool ok = false;
        for (int attempt = 0; attempt < 12 && !ok; ++attempt) {
            xn = x + h * tangent[0];
            yn = y + h * tangent[1];
            if (!dom.contains(xn, yn)) {
                // Step to the boundary, then solve B = 0 along the crossed edge.
                const auto e = exit_point(dom, {x, y}, {xn, yn});
                const bool vertical = std::abs(e[0] - dom.x0) < 1e-14 || std::abs(e[0] - dom.x1) < 1e-14;
                const double reach = 2.0 * step;
                std::array<double, 2> lo = e, hi = e;
                if (vertical) {
                    lo[1] = std::max(dom.y0, e[1] - reach);
                    hi[1] = std::min(dom.y1, e[1] + reach);
                } else {
                    lo[0] = std::max(dom.x0, e[0] - reach);
                    hi[0] = std::min(dom.x1, e[0] + reach);
                }
                const auto z = zero_on_segment(f, lo, hi, opt);
                pts.push_back(make_point(f, z[0], z[1]));
                return pts;
            }
            ok = correct_onto_curve(f, xn, yn, opt);
            if (!ok || std::hypot(xn - x, yn - y) > 2.0 * h) {
                ok = false;
                h *= 0.5;
            }
        }
        if (!ok) throw Error(ErrorCode::NewtonFailed, "corrector failed while tracing B = 0");
        b = B_and_gradB(f, xn, yn);
        std::array<double, 2> t{-b.grad[1] / b.grad_norm(), b.grad[0] / b.grad_norm()};
        if (t[0] * tangent[0] + t[1] * tangent[1] < 0.0) t = {-t[0], -t[1]};
        tangent = t;
        x = xn;
        y = yn;
        pts.push_back({x, y, b.B, b.grad_norm()});
        if (pts.size() >= 10 && std::hypot(x - x0, y - y0) < 0.5 * step) {
            closed = true;
            return pts;
        }
    }
    return pts;
}

} // namespace detail

/// Predictor-corrector tracing of the type-change curve {B = 0} through the
/// seed, in both directions, up to the domain boundary, closure or max_points.
inline Polyline trace_typechange_curve(const GraphFunction& f, std::array<double, 2> seed, double step, int max_points,
                                       const TraceOptions& opt = {})
{
    if (!(step > 0.0) || max_points < 2) throw Error(ErrorCode::InvalidArgument, "bad tracing step or max_points");
    double x = seed[0], y = seed[1];
    if (!f.domain().contains(x, y)) throw Error(ErrorCode::InvalidArgument, "seed outside the graph domain");
    if (!detail::correct_onto_curve(f, x, y, opt)) {
        throw Error(ErrorCode::NewtonFailed, "could not correct the seed onto B = 0");
    }
    Polyline out;
    bool closed = false;
    const auto fwd = detail::trace_branch(f, x, y, step, max_points - 1, 1.0, closed, opt);
    if (closed) {
        out.points.push_back(detail::make_point(f, x, y));
        out.points.insert(out.points.end(), fwd.begin(), fwd.end() - 1);
        out.closed = true;
        return out;
    }
    bool closed_back = false;
    const int remaining = std::max(0, max_points - 1 - static_cast<int>(fwd.size()));
    const auto back = remaining > 0 ? detail::trace_branch(f, x, y, step, remaining, -1.0, closed_back, opt)
                                    : std::vector<PolylinePoint>{};
    out.points.assign(back.rbegin(), back.rend());
    out.points.push_back(detail::make_point(f, x, y));
    out.points.insert(out.points.end(), fwd.begin(), fwd.end());
    return out;
}

struct NullLiftOptions {
    int n_nodes = 64;
    double strip_radius = 0.2;
    double nullity_tol = 1e-8;
};

/// The null curve t -> (t, x(t), y(t)) over a traced type-change curve, with
/// t = f(x, y) (unit-speed because |grad f| = 1 and grad f is tangent there),
/// stored as Chebyshev tables.
inline AnalyticNullCurve null_lift_of_typechange(const GraphFunction& f, const Polyline& polyline,
                                                 const NullLiftOptions& opt = {})
{
    if (polyline.points.size() < 2) throw Error(ErrorCode::InvalidArgument, "polyline needs at least two points");
    std::vector<double> tv;
    for (const auto& p : polyline.points) {
        const GraphJet g = f.jet(p.x, p.y);
        const BGrad b = B_and_gradB(g);
        if (b.grad_norm() <= 1e-6) {
            throw Error(ErrorCode::DegenerateOnCurve, "polyline point with vanishing grad B");
        }
        tv.push_back(g.f);
    }
    std::vector<PolylinePoint> pts = polyline.points;
    if (tv.back() < tv.front()) {
        std::reverse(pts.begin(), pts.end());
        std::reverse(tv.begin(), tv.end());
    }
    for (std::size_t i = 1; i < tv.size(); ++i) {
        if (!(tv[i] > tv[i - 1])) {
            throw Error(ErrorCode::InvalidArgument, "f is not monotone along the polyline");
        }
    }
    const double t0 = tv.front(), t1 = tv.back();
    const int n = opt.n_nodes;
    std::vector<double> xs(static_cast<std::size_t>(n + 1)), ys(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) {
        const double t = ChebyshevSeries::node(t0, t1, n, k);
        const auto it = std::lower_bound(tv.begin(), tv.end(), t);
        std::size_t i = static_cast<std::size_t>(std::clamp<long>(it - tv.begin(), 1, static_cast<long>(tv.size()) - 1));
        const double s = (t - tv[i - 1]) / (tv[i] - tv[i - 1]);
        double x = pts[i - 1].x + s * (pts[i].x - pts[i - 1].x);
        double y = pts[i - 1].y + s * (pts[i].y - pts[i - 1].y);
        // 2-D Newton on (B, f - t); rows grad B and grad f.
        bool done = false;
        for (int iter = 0; iter < 50; ++iter) {
            const GraphJet g = f.jet(x, y);
            const BGrad b = B_and_gradB(g);
            const double r0 = b.B, r1 = g.f - t;
            if (std::abs(r0) <= 1e-14 && std::abs(r1) <= 1e-14 * (1.0 + std::abs(t))) {
                done = true;
                break;
            }
            const double a11 = b.grad[0], a12 = b.grad[1], a21 = g.fx, a22 = g.fy;
            const double det = a11 * a22 - a12 * a21;
            if (!(std::abs(det) > 1e-300)) break;
            const double dx = (a22 * r0 - a12 * r1) / det;
            const double dy = (-a21 * r0 + a11 * r1) / det;
            x -= dx;
            y -= dy;
            if (std::hypot(dx, dy) <= 1e-15 * (1.0 + std::hypot(x, y))) {
                done = true;
                break;
            }
        }
        if (!done) throw Error(ErrorCode::NewtonFailed, "could not locate the curve point with f = " + std::to_string(t));
        xs[static_cast<std::size_t>(k)] = x;
        ys[static_cast<std::size_t>(k)] = y;
    }
    std::vector<double> ts(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) ts[static_cast<std::size_t>(k)] = ChebyshevSeries::node(t0, t1, n, k);
    std::array<ChebyshevSeries, 3> series{ChebyshevSeries::from_values(ts, t0, t1),
                                          ChebyshevSeries::from_values(xs, t0, t1),
                                          ChebyshevSeries::from_values(ys, t0, t1)};
    CurveValidation v;
    v.nullity_tol = opt.nullity_tol;
    AnalyticNullCurve curve = make_chebyshev_curve(std::move(series), Interval{t0, t1}, opt.strip_radius, v);
    if (!curve.nondegenerate()) throw Error(ErrorCode::DegenerateCurve, "null lift is degenerate");
    return curve;
}

} // namespace zmc
