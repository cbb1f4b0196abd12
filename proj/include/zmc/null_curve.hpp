#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "chebyshev.hpp"
#include "error.hpp"
#include "jet.hpp"
#include "lorentz.hpp"
#include "quadrature.hpp"

namespace zmc {

struct Interval {
    double a = 0.0;
    double b = 1.0;

    [[nodiscard]] double length() const noexcept { return b - a; }
    [[nodiscard]] double mid() const noexcept { return 0.5 * (a + b); }
    [[nodiscard]] bool contains(double u) const noexcept { return u >= a && u <= b; }
    /// k-th of n cell-centred samples; never hits the (possibly singular) ends.
    [[nodiscard]] double sample(int k, int n) const noexcept { return a + (k + 0.5) * (b - a) / n; }
};

/// gamma and its derivatives up to `order` at one complex point.
struct CurveJet {
    static constexpr int kMaxOrder = 4;
    int order = 0;
    std::array<ComplexVec3, kMaxOrder + 1> d{};
};

struct CurveValidation {
    int samples = 64;
    double nullity_tol = 1e-10;
    double reality_tol = 1e-10;
    double regularity_tol = 1e-12;
    double nondegeneracy_tol = 1e-8;
};

/// A real-analytic null curve gamma: (a, b) -> R^3_1 together with its
/// holomorphic extension to the strip |Im z| < strip_radius.
class AnalyticNullCurve {
public:
    using JetFn = std::function<CurveJet(Complex, int)>;

    AnalyticNullCurve(JetFn fn, Interval domain, double strip_radius)
        : fn_(std::move(fn)), domain_(domain), strip_radius_(strip_radius)
    {
    }

    [[nodiscard]] ComplexVec3 operator()(Complex z) const { return fn_(z, 0).d[0]; }
    [[nodiscard]] ComplexVec3 derivative(Complex z, int order) const
    {
        check_order(order);
        return fn_(z, order).d[static_cast<std::size_t>(order)];
    }
    [[nodiscard]] CurveJet jet(Complex z, int max_order) const
    {
        check_order(max_order);
        return fn_(z, max_order);
    }

    [[nodiscard]] LorentzVec3 point(double u) const { return (*this)(Complex(u, 0.0)).real(); }
    [[nodiscard]] LorentzVec3 velocity(double u) const { return derivative(Complex(u, 0.0), 1).real(); }
    [[nodiscard]] LorentzVec3 acceleration(double u) const { return derivative(Complex(u, 0.0), 2).real(); }

    [[nodiscard]] const Interval& domain() const noexcept { return domain_; }
    [[nodiscard]] double strip_radius() const noexcept { return strip_radius_; }
    /// False when some validation sample was degenerate (gamma'' parallel to gamma').
    [[nodiscard]] bool nondegenerate() const noexcept { return nondegenerate_; }
    [[nodiscard]] const JetFn& jet_function() const noexcept { return fn_; }

private:
    friend AnalyticNullCurve validate_curve(AnalyticNullCurve, const CurveValidation&);

    static void check_order(int order)
    {
        if (order < 0 || order > CurveJet::kMaxOrder) {
            throw Error(ErrorCode::InvalidArgument, "curve derivative order must be in [0, 4]");
        }
    }

    JetFn fn_;
    Interval domain_;
    double strip_radius_;
    bool nondegenerate_ = true;
};

/// Evaluates a generic closed form `f(z) -> std::array<Z, M>` together with its
/// derivatives through Taylor jets, picking the cheapest jet order.
template <std::size_t M, typename F>
std::array<std::array<Complex, M>, CurveJet::kMaxOrder + 1> evaluate_jet(const F& f, Complex z, int order)
{
    std::array<std::array<Complex, M>, CurveJet::kMaxOrder + 1> out{};
    auto run = [&]<int N>(std::integral_constant<int, N>) {
        const auto r = f(Jet<Complex, N>::variable(z));
        for (int k = 0; k <= order; ++k) {
            for (std::size_t i = 0; i < M; ++i) out[static_cast<std::size_t>(k)][i] = r[i].derivative(k);
        }
    };
    if (order == 0) {
        const auto r = f(z);
        for (std::size_t i = 0; i < M; ++i) out[0][i] = r[i];
    } else if (order == 1) {
        run(std::integral_constant<int, 1>{});
    } else if (order == 2) {
        run(std::integral_constant<int, 2>{});
    } else {
        run(std::integral_constant<int, 4>{});
    }
    return out;
}

/// Wraps a generic lambda `[](auto z) { return std::array{t(z), x(z), y(z)}; }`.
template <typename F>
AnalyticNullCurve::JetFn closed_form_jet(F f)
{
    return [f = std::move(f)](Complex z, int order) {
        const auto raw = evaluate_jet<3>(f, z, order);
        CurveJet j;
        j.order = order;
        for (int k = 0; k <= order; ++k) {
            const auto& r = raw[static_cast<std::size_t>(k)];
            j.d[static_cast<std::size_t>(k)] = {r[0], r[1], r[2]};
        }
        return j;
    };
}

namespace detail {

inline double vec_scale(const ComplexVec3& v) { return 1.0 + euclid_norm(v); }

} // namespace detail

/// Sample-based validation: reality (including Schwarz reflection inside the
/// strip), nullity and regularity. Degeneracy is recorded, not rejected.
inline AnalyticNullCurve validate_curve(AnalyticNullCurve curve, const CurveValidation& opt)
{
    const Interval& dom = curve.domain();
    const double v_probe = 0.5 * curve.strip_radius();
    bool all_nondegenerate = true;
    for (int k = 0; k < opt.samples; ++k) {
        const double u = dom.sample(k, opt.samples);
        const CurveJet j = curve.jet(Complex(u, 0.0), 2);
        const std::string where = "sample " + std::to_string(k) + " (u = " + std::to_string(u) + ")";
        if (!j.d[0].is_finite() || !j.d[1].is_finite()) {
            throw Error(ErrorCode::RegularityViolation, "non-finite value at " + where);
        }
        if (euclid_norm(j.d[0].imag()) > opt.reality_tol * detail::vec_scale(j.d[0])) {
            throw Error(ErrorCode::RealityViolation, "gamma(u) not real at " + where);
        }
        const ComplexVec3 up = curve(Complex(u, v_probe));
        const ComplexVec3 dn = curve(Complex(u, -v_probe));
        if (euclid_norm(dn - up.conj()) > opt.reality_tol * detail::vec_scale(up)) {
            throw Error(ErrorCode::RealityViolation, "Schwarz reflection fails at " + where);
        }
        const LorentzVec3 d1 = j.d[1].real();
        const double speed = euclid_norm(d1);
        if (!(speed > opt.regularity_tol)) {
            throw Error(ErrorCode::RegularityViolation, "gamma'(u) vanishes at " + where);
        }
        if (std::abs(minkowski_inner(d1, d1)) > opt.nullity_tol * (1.0 + speed * speed)) {
            throw Error(ErrorCode::NullityViolation, "<gamma', gamma'> != 0 at " + where);
        }
        const LorentzVec3 d2 = j.d[2].real();
        const double m0 = d1.t * d2.x - d1.x * d2.t;
        const double m1 = d1.t * d2.y - d1.y * d2.t;
        const double m2 = d1.x * d2.y - d1.y * d2.x;
        const double thr = opt.nondegeneracy_tol * (speed * euclid_norm(d2) + 1.0);
        if (std::abs(m0) <= thr && std::abs(m1) <= thr && std::abs(m2) <= thr) all_nondegenerate = false;
    }
    curve.nondegenerate_ = all_nondegenerate;
    return curve;
}

/// Builds and validates a curve from a value evaluator and a derivative
/// evaluator (order 1..4).
inline AnalyticNullCurve make_curve_from_evaluators(std::function<ComplexVec3(Complex)> evaluator,
                                                    std::function<ComplexVec3(Complex, int)> derivative_evaluator,
                                                    Interval domain, double strip_radius,
                                                    const CurveValidation& opt = {})
{
    if (!(strip_radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "strip_radius must be positive");
    if (!(domain.b > domain.a)) throw Error(ErrorCode::InvalidArgument, "empty curve domain");
    auto fn = [ev = std::move(evaluator), dev = std::move(derivative_evaluator)](Complex z, int order) {
        CurveJet j;
        j.order = order;
        j.d[0] = ev(z);
        for (int k = 1; k <= order; ++k) j.d[static_cast<std::size_t>(k)] = dev(z, k);
        return j;
    };
    return validate_curve(AnalyticNullCurve(std::move(fn), domain, strip_radius), opt);
}

/// Builds and validates a curve from a generic closed form evaluated by jets.
template <typename F>
AnalyticNullCurve make_closed_form_curve(F f, Interval domain, double strip_radius, const CurveValidation& opt = {})
{
    if (!(strip_radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "strip_radius must be positive");
    if (!(domain.b > domain.a)) throw Error(ErrorCode::InvalidArgument, "empty curve domain");
    return validate_curve(AnalyticNullCurve(closed_form_jet(std::move(f)), domain, strip_radius), opt);
}

/// One Taylor segment: gamma(z) = sum_k coeffs[k] (z - center)^k for |z - center| < radius.
struct TaylorSegment {
    double center = 0.0;
    double radius = 1.0;
    std::vector<std::array<double, 3>> coeffs;
};

inline AnalyticNullCurve make_taylor_curve(std::vector<TaylorSegment> segments, Interval domain, double strip_radius,
                                           const CurveValidation& opt = {})
{
    if (segments.empty()) throw Error(ErrorCode::InvalidArgument, "Taylor curve needs at least one segment");
    for (const auto& s : segments) {
        if (s.coeffs.empty()) throw Error(ErrorCode::InvalidArgument, "empty Taylor segment");
    }
    auto fn = [segs = std::move(segments)](Complex z, int order) {
        // Nearest centre wins.
        const TaylorSegment* best = &segs.front();
        for (const auto& s : segs) {
            if (std::abs(z.real() - s.center) < std::abs(z.real() - best->center)) best = &s;
        }
        const Complex dz = z - best->center;
        CurveJet j;
        j.order = order;
        const std::size_t n = best->coeffs.size();
        for (int k = 0; k <= order; ++k) {
            std::array<Complex, 3> acc{};
            for (std::size_t m = n; m-- > static_cast<std::size_t>(k);) {
                double falling = 1.0;
                for (int i = 0; i < k; ++i) falling *= static_cast<double>(m - static_cast<std::size_t>(i));
                for (std::size_t c = 0; c < 3; ++c) acc[c] = acc[c] * dz + falling * best->coeffs[m][c];
            }
            j.d[static_cast<std::size_t>(k)] = {acc[0], acc[1], acc[2]};
        }
        return j;
    };
    if (!(strip_radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "strip_radius must be positive");
    return validate_curve(AnalyticNullCurve(std::move(fn), domain, strip_radius), opt);
}

/// Table-backed curve: one Chebyshev series per coordinate.
inline AnalyticNullCurve make_chebyshev_curve(std::array<ChebyshevSeries, 3> series, Interval domain,
                                              double strip_radius, const CurveValidation& opt = {})
{
    auto fn = [s = std::move(series)](Complex z, int order) {
        CurveJet j;
        j.order = order;
        for (int k = 0; k <= order; ++k) {
            j.d[static_cast<std::size_t>(k)] = {s[0].evaluate(z, k), s[1].evaluate(z, k), s[2].evaluate(z, k)};
        }
        return j;
    };
    if (!(strip_radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "strip_radius must be positive");
    return validate_curve(AnalyticNullCurve(std::move(fn), domain, strip_radius), opt);
}

/// True iff gamma''(u) is not proportional to gamma'(u): some 2x2 minor of the
/// matrix with rows gamma', gamma'' exceeds tol * (|gamma'| |gamma''| + 1).
inline bool is_nondegenerate_at(const AnalyticNullCurve& curve, double u, double tol)
{
    const CurveJet j = curve.jet(Complex(u, 0.0), 2);
    const LorentzVec3 d1 = j.d[1].real();
    const LorentzVec3 d2 = j.d[2].real();
    const double thr = tol * (euclid_norm(d1) * euclid_norm(d2) + 1.0);
    const double m0 = d1.t * d2.x - d1.x * d2.t;
    const double m1 = d1.t * d2.y - d1.y * d2.t;
    const double m2 = d1.x * d2.y - d1.y * d2.x;
    return std::abs(m0) > thr || std::abs(m1) > thr || std::abs(m2) > thr;
}

// ---------------------------------------------------------------------------
// Planar curves sigma(t) = (x(t), y(t)).

struct PlanarJet {
    int order = 0;
    std::array<std::array<Complex, 2>, CurveJet::kMaxOrder + 1> d{};
};

class PlanarCurve {
public:
    using JetFn = std::function<PlanarJet(Complex, int)>;

    PlanarCurve(JetFn fn, Interval domain, bool arclength, double strip_radius)
        : fn_(std::move(fn)), domain_(domain), arclength_(arclength), strip_radius_(strip_radius)
    {
    }

    [[nodiscard]] PlanarJet jet(Complex z, int order) const { return fn_(z, order); }
    [[nodiscard]] std::array<double, 2> point(double u) const { return derivative(u, 0); }
    [[nodiscard]] std::array<double, 2> derivative(double u, int order) const
    {
        const auto& d = fn_(Complex(u, 0.0), order).d[static_cast<std::size_t>(order)];
        return {d[0].real(), d[1].real()};
    }
    [[nodiscard]] double speed(double u) const
    {
        const auto d = derivative(u, 1);
        return std::hypot(d[0], d[1]);
    }

    [[nodiscard]] const Interval& domain() const noexcept { return domain_; }
    [[nodiscard]] bool arclength() const noexcept { return arclength_; }
    [[nodiscard]] double strip_radius() const noexcept { return strip_radius_; }
    [[nodiscard]] const JetFn& jet_function() const noexcept { return fn_; }

private:
    JetFn fn_;
    Interval domain_;
    bool arclength_;
    double strip_radius_;
};

/// Planar curve from a generic closed form `[](auto z) { return std::array{x(z), y(z)}; }`.
template <typename F>
PlanarCurve make_planar_curve(F f, Interval domain, bool arclength, double strip_radius = 1.0)
{
    auto fn = [f = std::move(f)](Complex z, int order) {
        const auto raw = evaluate_jet<2>(f, z, order);
        PlanarJet j;
        j.order = order;
        for (int k = 0; k <= order; ++k) j.d[static_cast<std::size_t>(k)] = raw[static_cast<std::size_t>(k)];
        return j;
    };
    return PlanarCurve(std::move(fn), domain, arclength, strip_radius);
}

/// t -> (t, x(t), y(t)); null exactly when sigma has unit speed.
inline AnalyticNullCurve lift_planar(const PlanarCurve& sigma, const CurveValidation& opt = {})
{
    if (!sigma.arclength()) throw Error(ErrorCode::NotArclength, "planar curve is not flagged arclength");
    for (int k = 0; k < opt.samples; ++k) {
        const double u = sigma.domain().sample(k, opt.samples);
        const double sp = sigma.speed(u);
        if (std::abs(sp - 1.0) > 1e-8) {
            throw Error(ErrorCode::NotArclength, "speed " + std::to_string(sp) + " at u = " + std::to_string(u));
        }
    }
    auto fn = [src = sigma.jet_function()](Complex z, int order) {
        const PlanarJet p = src(z, order);
        CurveJet j;
        j.order = order;
        j.d[0] = {z, p.d[0][0], p.d[0][1]};
        for (int k = 1; k <= order; ++k) {
            const auto& dk = p.d[static_cast<std::size_t>(k)];
            j.d[static_cast<std::size_t>(k)] = {k == 1 ? Complex(1.0) : Complex(0.0), dk[0], dk[1]};
        }
        return j;
    };
    return validate_curve(AnalyticNullCurve(std::move(fn), sigma.domain(), sigma.strip_radius()), opt);
}

/// Reparametrizes sigma by arclength: cumulative Gauss-Legendre arclength, a
/// monotone (panel-interpolated, Newton-polished) inverse at Chebyshev nodes,
/// and Chebyshev fits of x(s), y(s) on [0, L]. n_nodes is the starting
/// Chebyshev degree; it is doubled while the fit misses unit speed.
inline PlanarCurve arclength_reparametrize(const PlanarCurve& sigma, int n_nodes)
{
    if (n_nodes < 16) throw Error(ErrorCode::InvalidArgument, "arclength_reparametrize needs n_nodes >= 16");
    const Interval dom = sigma.domain();
    const int panels = std::max(64, n_nodes / 2);
    const auto& rule = gl10();
    std::vector<double> knots(static_cast<std::size_t>(panels + 1));
    std::vector<double> cumulative(static_cast<std::size_t>(panels + 1), 0.0);
    double min_speed = INFINITY;
    auto speed = [&](double t) {
        const double s = sigma.speed(t);
        if (!(s > 1e-12)) {
            throw Error(ErrorCode::DegenerateCurve, "|sigma'| vanishes at t = " + std::to_string(t));
        }
        min_speed = std::min(min_speed, s);
        return s;
    };
    for (int i = 0; i <= panels; ++i) knots[static_cast<std::size_t>(i)] = dom.a + dom.length() * i / panels;
    for (int i = 0; i < panels; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        cumulative[ui + 1] = cumulative[ui] + gauss_legendre_fixed<double>(speed, knots[ui], knots[ui + 1], rule);
    }
    const double total = cumulative.back();

    auto arclength_at = [&](double t) {
        auto it = std::upper_bound(knots.begin(), knots.end(), t);
        std::size_t i = (it == knots.begin()) ? 0 : static_cast<std::size_t>(it - knots.begin()) - 1;
        i = std::min<std::size_t>(i, static_cast<std::size_t>(panels - 1));
        return cumulative[i] + gauss_legendre_fixed<double>(speed, knots[i], t, rule);
    };

    auto build = [&](int n) {
        std::vector<double> xs(static_cast<std::size_t>(n + 1)), ys(static_cast<std::size_t>(n + 1));
        for (int j = 0; j <= n; ++j) {
            const double s = ChebyshevSeries::node(0.0, total, n, j);
            auto it = std::upper_bound(cumulative.begin(), cumulative.end(), s);
            std::size_t i = (it == cumulative.begin()) ? 0 : static_cast<std::size_t>(it - cumulative.begin()) - 1;
            i = std::min<std::size_t>(i, static_cast<std::size_t>(panels - 1));
            const double frac = (s - cumulative[i]) / (cumulative[i + 1] - cumulative[i]);
            double t = knots[i] + frac * (knots[i + 1] - knots[i]);
            for (int iter = 0; iter < 50; ++iter) {
                const double dt = (arclength_at(t) - s) / speed(t);
                t -= dt;
                if (std::abs(dt) <= 1e-15 * (1.0 + std::abs(t))) break;
            }
            const auto p = sigma.point(t);
            xs[static_cast<std::size_t>(j)] = p[0];
            ys[static_cast<std::size_t>(j)] = p[1];
        }
        std::array<ChebyshevSeries, 2> fit{ChebyshevSeries::from_values(xs, 0.0, total),
                                           ChebyshevSeries::from_values(ys, 0.0, total)};
        auto fn = [fit](Complex z, int order) {
            PlanarJet jet;
            jet.order = order;
            for (int k = 0; k <= order; ++k) {
                jet.d[static_cast<std::size_t>(k)] = {fit[0].evaluate(z, k), fit[1].evaluate(z, k)};
            }
            return jet;
        };
        // The arclength map has branch points where the complexified speed
        // vanishes; the fit's coefficient decay bounds the usable strip.
        const double strip = std::min({sigma.strip_radius() * min_speed, fit[0].reliable_half_width(),
                                       fit[1].reliable_half_width()});
        return PlanarCurve(std::move(fn), Interval{0.0, total}, true, strip);
    };
    auto worst_speed_error = [](const PlanarCurve& c) {
        double worst = 0.0;
        for (int k = 0; k < 64; ++k) worst = std::max(worst, std::abs(c.speed(c.domain().sample(k, 64)) - 1.0));
        return worst;
    };

    // Double the node count until the speed error is well inside the nullity
    // tolerance of the lift, up to 16 n_nodes.
    for (int n = n_nodes;; n *= 2) {
        PlanarCurve out = build(n);
        const double err = worst_speed_error(out);
        if (err <= 5e-11) return out;
        if (n >= 16 * n_nodes) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "arclength fit did not reach unit speed with %d nodes (speed error %.3g)", n,
                          err);
            throw Error(ErrorCode::InvalidArgument, buf);
        }
    }
}

} // namespace zmc
