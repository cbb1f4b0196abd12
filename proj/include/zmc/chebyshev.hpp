#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

#include "error.hpp"

namespace zmc {

/// Chebyshev expansion of one scalar component on [a, b]. Being a polynomial it
/// extends to complex arguments; accuracy off the real segment is governed by
/// the decay of the coefficients (Bernstein ellipse of the underlying function).
class ChebyshevSeries {
public:
    ChebyshevSeries() = default;
    ChebyshevSeries(double a, double b, std::vector<double> coeffs) : a_(a), b_(b)
    {
        if (!(b > a)) throw Error(ErrorCode::InvalidArgument, "Chebyshev interval must satisfy a < b");
        derivs_.push_back(std::move(coeffs));
        for (int k = 1; k <= kMaxOrder; ++k) push_derivative();
    }

    static constexpr int kMaxOrder = 4;

    /// Interpolates f at n+1 Chebyshev-Lobatto points and trims the tail below
    /// chop_tol relative to the largest coefficient.
    static ChebyshevSeries fit(const std::function<double(double)>& f, double a, double b, int n,
                               double chop_tol = 1e-15)
    {
        std::vector<double> values(static_cast<std::size_t>(n + 1));
        for (int j = 0; j <= n; ++j) values[static_cast<std::size_t>(j)] = f(node(a, b, n, j));
        return from_values(values, a, b, chop_tol);
    }

    /// values[j] = f(node(a, b, n, j)), j = 0..n.
    static ChebyshevSeries from_values(const std::vector<double>& values, double a, double b,
                                       double chop_tol = 1e-15)
    {
        const int n = static_cast<int>(values.size()) - 1;
        if (n < 1) throw Error(ErrorCode::InvalidArgument, "Chebyshev fit needs at least two nodes");
        std::vector<double> c(static_cast<std::size_t>(n + 1), 0.0);
        for (int k = 0; k <= n; ++k) {
            double s = 0.0;
            for (int j = 0; j <= n; ++j) {
                const double w = (j == 0 || j == n) ? 0.5 : 1.0;
                // Nodes run from a to b, i.e. xi_j = cos(pi (n - j) / n).
                s += w * values[static_cast<std::size_t>(n - j)] * std::cos(std::numbers::pi * k * j / n);
            }
            c[static_cast<std::size_t>(k)] = 2.0 * s / n;
        }
        c.front() *= 0.5;
        c.back() *= 0.5;
        double cmax = 0.0;
        for (double v : c) cmax = std::max(cmax, std::abs(v));
        std::size_t keep = c.size();
        // A resolved fit ends in a rounding plateau. Drop it: off the real
        // axis those coefficients are amplified like rho^k.
        if (n >= 16) {
            double plateau = 0.0;
            for (std::size_t k = 3 * c.size() / 4; k < c.size(); ++k) plateau = std::max(plateau, std::abs(c[k]));
            if (plateau <= 1e-10 * cmax) {
                while (keep > 1 && std::abs(c[keep - 1]) <= 8.0 * plateau) --keep;
            }
        }
        while (keep > 1 && std::abs(c[keep - 1]) <= chop_tol * cmax) --keep;
        c.resize(keep);
        return ChebyshevSeries(a, b, std::move(c));
    }

    /// Lobatto node j of n on [a, b], ordered from a to b.
    static double node(double a, double b, int n, int j)
    {
        const double xi = -std::cos(std::numbers::pi * j / n);
        return 0.5 * (a + b) + 0.5 * (b - a) * xi;
    }

    [[nodiscard]] double lower() const noexcept { return a_; }
    [[nodiscard]] double upper() const noexcept { return b_; }
    [[nodiscard]] std::size_t size() const noexcept { return derivs_.empty() ? 0 : derivs_.front().size(); }
    [[nodiscard]] const std::vector<double>& coefficients() const { return derivs_.front(); }

    /// Half-width of the Bernstein ellipse on which the truncation error,
    /// estimated from the last coefficient, stays below rel_tol * max |c_k|.
    [[nodiscard]] double reliable_half_width(double rel_tol = 1e-10) const
    {
        const auto& c = derivs_.front();
        double cmax = 0.0;
        for (double v : c) cmax = std::max(cmax, std::abs(v));
        const std::size_t K = c.size() - 1;
        const double last = std::abs(c.back()) / cmax;
        if (K < 2 || !(cmax > 0.0) || last == 0.0) return std::numeric_limits<double>::infinity();
        if (last >= rel_tol) return 0.0;
        const double rho = std::pow(rel_tol / last, 1.0 / static_cast<double>(K));
        return 0.25 * (b_ - a_) * (rho - 1.0 / rho);
    }

    /// order-th derivative at complex z, order <= kMaxOrder.
    [[nodiscard]] std::complex<double> evaluate(std::complex<double> z, int order = 0) const
    {
        if (order < 0 || order > kMaxOrder) {
            throw Error(ErrorCode::InvalidArgument, "Chebyshev derivative order out of range");
        }
        const std::complex<double> xi = (2.0 * z - (a_ + b_)) / (b_ - a_);
        const auto& c = derivs_[static_cast<std::size_t>(order)];
        // Clenshaw recurrence.
        std::complex<double> b1 = 0.0, b2 = 0.0;
        for (std::size_t k = c.size(); k-- > 1;) {
            const std::complex<double> b0 = 2.0 * xi * b1 - b2 + c[k];
            b2 = b1;
            b1 = b0;
        }
        return xi * b1 - b2 + c[0];
    }

private:
    void push_derivative()
    {
        const std::vector<double> c = derivs_.back();
        const std::size_t n = c.size();
        std::vector<double> d(std::max<std::size_t>(n, 2) - 1, 0.0);
        if (n >= 2) {
            // d_{k-1} = d_{k+1} + 2 k c_k, then halve d_0.
            for (std::size_t k = n - 1; k >= 1; --k) {
                const double next = (k + 1 < d.size()) ? d[k + 1] : 0.0;
                d[k - 1] = next + 2.0 * static_cast<double>(k) * c[k];
            }
            d[0] *= 0.5;
        }
        const double scale = 2.0 / (b_ - a_);
        for (double& v : d) v *= scale;
        derivs_.push_back(std::move(d));
    }

    double a_ = -1.0;
    double b_ = 1.0;
    // derivs_[k] = coefficients of the k-th derivative.
    std::vector<std::vector<double>> derivs_;
};

} // namespace zmc
