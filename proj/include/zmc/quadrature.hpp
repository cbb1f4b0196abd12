#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "error.hpp"

namespace zmc {

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline GaussLegendreRule gauss_legendre(int n)
{
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

/// Cached 10-point rule used by all adaptive integrators.
inline const GaussLegendreRule& gl10()
{
    static const GaussLegendreRule rule = gauss_legendre(10);
    return rule;
}

/// Fixed-order Gauss-Legendre of f over [a, b]; V only needs +, scalar *.
template <typename V, typename F>
V gauss_legendre_fixed(F&& f, double a, double b, const GaussLegendreRule& rule = gl10())
{
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    V sum{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        sum = sum + (rule.weights[i] * half) * f(mid + half * rule.nodes[i]);
    }
    return sum;
}

struct AdaptiveOptions {
    double abs_tol = 1e-12;
    int max_depth = 20;
};

namespace detail {

template <typename V, typename F, typename Norm>
V adaptive_step(F& f, double a, double b, const V& whole, double tol, int depth, const AdaptiveOptions& opt,
                Norm& norm)
{
    const double m = 0.5 * (a + b);
    const V left = gauss_legendre_fixed<V>(f, a, m);
    const V right = gauss_legendre_fixed<V>(f, m, b);
    const V refined = left + right;
    if (norm(refined + (-1.0) * whole) <= tol) return refined;
    if (depth >= opt.max_depth) {
        throw Error(ErrorCode::QuadratureNotConverged, "adaptive Gauss-Legendre exceeded max depth");
    }
    return adaptive_step(f, a, m, left, 0.5 * tol, depth + 1, opt, norm) +
           adaptive_step(f, m, b, right, 0.5 * tol, depth + 1, opt, norm);
}

} // namespace detail

/// Adaptive bisection with 10-point panels: a panel is accepted when its
/// halves agree with it to the (halved per level) absolute tolerance.
template <typename V, typename F, typename Norm>
V integrate_adaptive(F&& f, double a, double b, Norm&& norm, const AdaptiveOptions& opt = {})
{
    if (a == b) return V{};
    const V whole = gauss_legendre_fixed<V>(f, a, b);
    return detail::adaptive_step<V>(f, a, b, whole, opt.abs_tol, 0, opt, norm);
}

template <typename F>
double integrate_adaptive(F&& f, double a, double b, const AdaptiveOptions& opt = {})
{
    auto norm = [](double v) { return std::abs(v); };
    return integrate_adaptive<double>(std::forward<F>(f), a, b, norm, opt);
}

} // namespace zmc
