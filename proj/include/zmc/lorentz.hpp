#pragma once

#include <cmath>
#include <complex>

#include "error.hpp"

namespace zmc {

using Complex = std::complex<double>;

/// Point or vector of Minkowski 3-space, coordinates ordered (t, x, y).
struct LorentzVec3 {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;

    friend constexpr LorentzVec3 operator+(const LorentzVec3& a, const LorentzVec3& b) noexcept
    {
        return {a.t + b.t, a.x + b.x, a.y + b.y};
    }
    friend constexpr LorentzVec3 operator-(const LorentzVec3& a, const LorentzVec3& b) noexcept
    {
        return {a.t - b.t, a.x - b.x, a.y - b.y};
    }
    friend constexpr LorentzVec3 operator-(const LorentzVec3& a) noexcept { return {-a.t, -a.x, -a.y}; }
    friend constexpr LorentzVec3 operator*(double s, const LorentzVec3& a) noexcept
    {
        return {s * a.t, s * a.x, s * a.y};
    }
    friend constexpr LorentzVec3 operator*(const LorentzVec3& a, double s) noexcept { return s * a; }
    friend constexpr LorentzVec3 operator/(const LorentzVec3& a, double s) noexcept
    {
        return {a.t / s, a.x / s, a.y / s};
    }
    friend constexpr bool operator==(const LorentzVec3&, const LorentzVec3&) = default;

    [[nodiscard]] bool is_finite() const noexcept
    {
        return std::isfinite(t) && std::isfinite(x) && std::isfinite(y);
    }
};

/// Checked construction: rejects NaN/Inf components.
inline LorentzVec3 make_lorentz(double t, double x, double y)
{
    LorentzVec3 v{t, x, y};
    if (!v.is_finite()) {
        throw Error(ErrorCode::InvalidArgument, "non-finite LorentzVec3 component");
    }
    return v;
}

/// Holomorphic values in C^3, same (t, x, y) slot order.
struct ComplexVec3 {
    Complex t{};
    Complex x{};
    Complex y{};

    friend ComplexVec3 operator+(const ComplexVec3& a, const ComplexVec3& b) noexcept
    {
        return {a.t + b.t, a.x + b.x, a.y + b.y};
    }
    friend ComplexVec3 operator-(const ComplexVec3& a, const ComplexVec3& b) noexcept
    {
        return {a.t - b.t, a.x - b.x, a.y - b.y};
    }
    friend ComplexVec3 operator*(Complex s, const ComplexVec3& a) noexcept
    {
        return {s * a.t, s * a.x, s * a.y};
    }
    friend ComplexVec3 operator*(double s, const ComplexVec3& a) noexcept
    {
        return {s * a.t, s * a.x, s * a.y};
    }

    [[nodiscard]] LorentzVec3 real() const noexcept { return {t.real(), x.real(), y.real()}; }
    [[nodiscard]] LorentzVec3 imag() const noexcept { return {t.imag(), x.imag(), y.imag()}; }
    [[nodiscard]] ComplexVec3 conj() const noexcept { return {std::conj(t), std::conj(x), std::conj(y)}; }
    [[nodiscard]] bool is_finite() const noexcept { return real().is_finite() && imag().is_finite(); }
};

enum class CausalClass { Spacelike, Timelike, Lightlike };

constexpr const char* to_string(CausalClass c) noexcept
{
    switch (c) {
    case CausalClass::Spacelike: return "spacelike";
    case CausalClass::Timelike: return "timelike";
    case CausalClass::Lightlike: return "lightlike";
    }
    return "?";
}

/// Signature (-,+,+).
constexpr double minkowski_inner(const LorentzVec3& a, const LorentzVec3& b) noexcept
{
    return -a.t * b.t + a.x * b.x + a.y * b.y;
}

/// Complex-bilinear (not sesquilinear) extension; a holomorphic null map has
/// complex_inner(dF, dF) == 0.
inline Complex complex_inner(const ComplexVec3& a, const ComplexVec3& b) noexcept
{
    return -a.t * b.t + a.x * b.x + a.y * b.y;
}

constexpr double euclid_dot(const LorentzVec3& a, const LorentzVec3& b) noexcept
{
    return a.t * b.t + a.x * b.x + a.y * b.y;
}

inline double euclid_norm(const LorentzVec3& a) noexcept { return std::sqrt(euclid_dot(a, a)); }

inline double euclid_norm(const ComplexVec3& a) noexcept
{
    return std::sqrt(std::norm(a.t) + std::norm(a.x) + std::norm(a.y));
}

/// Lightlike when |<v,v>| <= tol * (1 + |v|^2); the relative scale keeps the
/// classification invariant under rescaling of large vectors.
inline CausalClass causal_character(const LorentzVec3& v, double tol)
{
    if (!(tol > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "causal_character requires tol > 0");
    }
    const double q = minkowski_inner(v, v);
    const double threshold = tol * (1.0 + euclid_dot(v, v));
    if (std::abs(q) <= threshold) return CausalClass::Lightlike;
    return q > 0.0 ? CausalClass::Spacelike : CausalClass::Timelike;
}

/// Determinant of the first fundamental form of the plane spanned by a, b.
/// Positive: spacelike plane; negative: timelike; zero: degenerate.
inline double first_form_det(const LorentzVec3& a, const LorentzVec3& b) noexcept
{
    const double e = minkowski_inner(a, a);
    const double f = minkowski_inner(a, b);
    const double g = minkowski_inner(b, b);
    return e * g - f * f;
}

} // namespace zmc
