#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "jet.hpp"

namespace zmc {

struct Rect {
    double x0 = -1.0;
    double y0 = -1.0;
    double x1 = 1.0;
    double y1 = 1.0;

    [[nodiscard]] bool contains(double x, double y) const noexcept { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
    [[nodiscard]] double width() const noexcept { return x1 - x0; }
    [[nodiscard]] double height() const noexcept { return y1 - y0; }
};

/// Value, gradient and Hessian of a graph t = f(x, y).
struct GraphJet {
    double f = 0.0;
    double fx = 0.0;
    double fy = 0.0;
    double fxx = 0.0;
    double fxy = 0.0;
    double fyy = 0.0;
};

enum class DerivativeMode { Analytic, FiniteDifference };

class GraphFunction {
public:
    using JetFn = std::function<GraphJet(double, double)>;
    using ValueFn = std::function<double(double, double)>;

    /// Derivatives supplied exactly by `jet`.
    static GraphFunction analytic(JetFn jet, Rect domain)
    {
        GraphFunction g;
        g.jet_ = std::move(jet);
        g.domain_ = domain;
        g.mode_ = DerivativeMode::Analytic;
        return g;
    }

    /// Derivatives from central differences of `value` with step h and
    /// `richardson` extrapolation levels (0 = plain second-order stencils).
    static GraphFunction finite_difference(ValueFn value, Rect domain, double h = 1e-4, int richardson = 1)
    {
        if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "finite-difference step must be positive");
        if (richardson < 0) throw Error(ErrorCode::InvalidArgument, "richardson levels must be >= 0");
        GraphFunction g;
        g.domain_ = domain;
        g.mode_ = DerivativeMode::FiniteDifference;
        g.h_ = h;
        g.levels_ = richardson;
        g.jet_ = [value = std::move(value), h, richardson](double x, double y) {
            return fd_jet(value, x, y, h, richardson);
        };
        return g;
    }

    [[nodiscard]] GraphJet jet(double x, double y) const { return jet_(x, y); }
    [[nodiscard]] double value(double x, double y) const { return jet_(x, y).f; }

    [[nodiscard]] const Rect& domain() const noexcept { return domain_; }
    [[nodiscard]] DerivativeMode mode() const noexcept { return mode_; }
    [[nodiscard]] double step() const noexcept { return h_; }
    [[nodiscard]] int richardson_levels() const noexcept { return levels_; }

    /// Same function, derivatives re-derived by finite differences.
    [[nodiscard]] GraphFunction as_finite_difference(double h = 1e-4, int richardson = 1) const
    {
        return finite_difference([j = jet_](double x, double y) { return j(x, y).f; }, domain_, h, richardson);
    }

private:
    static GraphJet fd_jet(const ValueFn& f, double x, double y, double h, int levels)
    {
        auto stencil = [&](double s) {
            const double f0 = f(x, y);
            const double fe = f(x + s, y), fw = f(x - s, y);
            const double fn = f(x, y + s), fs = f(x, y - s);
            const double fne = f(x + s, y + s), fnw = f(x - s, y + s);
            const double fse = f(x + s, y - s), fsw = f(x - s, y - s);
            return std::array<double, 5>{(fe - fw) / (2 * s), (fn - fs) / (2 * s), (fe - 2 * f0 + fw) / (s * s),
                                         (fne - fnw - fse + fsw) / (4 * s * s), (fn - 2 * f0 + fs) / (s * s)};
        };
        // Richardson tableau on the stencil step sequence h, h/2, h/4, ...
        std::vector<std::array<double, 5>> row;
        for (int k = 0; k <= levels; ++k) row.push_back(stencil(h / std::pow(2.0, k)));
        double factor = 4.0;
        for (int lvl = 1; lvl <= levels; ++lvl) {
            for (int k = levels; k >= lvl; --k) {
                for (int c = 0; c < 5; ++c) {
                    const auto uk = static_cast<std::size_t>(k);
                    row[uk][static_cast<std::size_t>(c)] =
                        (factor * row[uk][static_cast<std::size_t>(c)] - row[uk - 1][static_cast<std::size_t>(c)]) /
                        (factor - 1.0);
                }
            }
            factor *= 4.0;
        }
        const auto& best = row.back();
        return {f(x, y), best[0], best[1], best[2], best[3], best[4]};
    }

    JetFn jet_;
    Rect domain_;
    DerivativeMode mode_ = DerivativeMode::Analytic;
    double h_ = 0.0;
    int levels_ = 0;
};

/// Analytic graph from a generic closed form `[](auto x, auto y) { ... }`.
/// Second derivatives come from three directional second-order jets.
template <typename F>
GraphFunction make_closed_form_graph(F f, Rect domain)
{
    auto jet = [f = std::move(f)](double x, double y) {
        using J = Jet<double, 2>;
        const J jx = f(J::variable(x), J(y));
        const J jy = f(J(x), J::variable(y));
        const J jd = f(J::variable(x), J::variable(y));
        GraphJet g;
        g.f = jx.c[0];
        g.fx = jx.c[1];
        g.fy = jy.c[1];
        g.fxx = 2.0 * jx.c[2];
        g.fyy = 2.0 * jy.c[2];
        g.fxy = 0.5 * (2.0 * jd.c[2] - g.fxx - g.fyy);
        return g;
    };
    return GraphFunction::analytic(std::move(jet), domain);
}

// ---------------------------------------------------------------------------
// Pointwise graph analysis.

/// (1 - f_y^2) f_xx + 2 f_x f_y f_xy + (1 - f_x^2) f_yy.
inline double zmc_residual(const GraphJet& g) noexcept
{
    return (1.0 - g.fy * g.fy) * g.fxx + 2.0 * g.fx * g.fy * g.fxy + (1.0 - g.fx * g.fx) * g.fyy;
}

inline double zmc_residual(const GraphFunction& f, double x, double y) { return zmc_residual(f.jet(x, y)); }

struct BGrad {
    double B = 0.0;
    std::array<double, 2> grad{};

    [[nodiscard]] double grad_norm() const noexcept { return std::hypot(grad[0], grad[1]); }
};

/// B = 1 - |grad f|^2 and grad B = -2 Hess(f) grad f.
inline BGrad B_and_gradB(const GraphJet& g) noexcept
{
    BGrad r;
    r.B = 1.0 - g.fx * g.fx - g.fy * g.fy;
    r.grad = {-2.0 * (g.fxx * g.fx + g.fxy * g.fy), -2.0 * (g.fxy * g.fx + g.fyy * g.fy)};
    return r;
}

inline BGrad B_and_gradB(const GraphFunction& f, double x, double y) { return B_and_gradB(f.jet(x, y)); }

struct ClassifyTolerances {
    double on_curve = 1e-10;
    double nondegenerate = 1e-6;
};

struct TypeChangePoint {
    double x = 0.0;
    double y = 0.0;
    double B = 0.0;
    std::array<double, 2> gradB{};
    double hessian_det = 0.0;
    bool on_curve = false;
    bool nondegenerate = false;
};

/// Both non-degeneracy criteria at a point. On a ZMC graph with B = 0 the
/// Hessian has a null direction along grad f and det Hess = -|grad B|^2 / 4,
/// so the determinant criterion uses 2 sqrt|det| at the gradient tolerance.
inline TypeChangePoint classify_point(const GraphJet& g, double x, double y, const ClassifyTolerances& tol = {})
{
    const BGrad b = B_and_gradB(g);
    TypeChangePoint p;
    p.x = x;
    p.y = y;
    p.B = b.B;
    p.gradB = b.grad;
    // Kahan's 2x2 determinant: one rounding, not a cancellation of two products.
    const double w = g.fxy * g.fxy;
    p.hessian_det = std::fma(g.fxx, g.fyy, -w) - std::fma(g.fxy, g.fxy, -w);
    p.on_curve = std::abs(b.B) <= tol.on_curve;
    const bool by_gradient = b.grad_norm() > tol.nondegenerate;
    // A determinant below the rounding bound of its entries counts as zero.
    const double det_floor = 8.0 * std::numeric_limits<double>::epsilon() * (std::abs(g.fxx * g.fyy) + w);
    const bool by_hessian =
        std::abs(p.hessian_det) > det_floor && 2.0 * std::sqrt(std::abs(p.hessian_det)) > tol.nondegenerate;
    p.nondegenerate = p.on_curve && by_gradient;
    if (p.on_curve && by_gradient != by_hessian) {
        throw Error(ErrorCode::CriteriaDisagree,
                    "|grad B| = " + std::to_string(b.grad_norm()) + " but det Hess = " + std::to_string(p.hessian_det));
    }
    return p;
}

inline TypeChangePoint classify_point(const GraphFunction& f, double x, double y, const ClassifyTolerances& tol = {})
{
    return classify_point(f.jet(x, y), x, y, tol);
}

} // namespace zmc
