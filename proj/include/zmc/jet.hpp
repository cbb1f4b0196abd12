#pragma once

// Truncated Taylor arithmetic. A Jet<T, N> holds the normalized coefficients
// c[k] = f^(k)(z0) / k! of a function at a fixed expansion point, so any
// closed-form expression written once as a generic lambda can be evaluated
// together with its first N derivatives (exactly, up to rounding).

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <type_traits>

namespace zmc {

template <typename T, int N>
struct Jet {
    static_assert(N >= 0);
    std::array<T, N + 1> c{};

    constexpr Jet() = default;
    constexpr Jet(T value) { c[0] = value; } // NOLINT(google-explicit-constructor)

    /// Independent variable seeded at z0.
    static constexpr Jet variable(T z0)
    {
        Jet j(z0);
        if constexpr (N >= 1) j.c[1] = T(1);
        return j;
    }

    [[nodiscard]] constexpr const T& value() const noexcept { return c[0]; }

    /// k-th derivative (k! * c[k]).
    [[nodiscard]] T derivative(int k) const
    {
        double factorial = 1.0;
        for (int i = 2; i <= k; ++i) factorial *= i;
        return c[static_cast<std::size_t>(k)] * factorial;
    }

    Jet& operator+=(const Jet& o)
    {
        for (int k = 0; k <= N; ++k) c[k] += o.c[k];
        return *this;
    }
    Jet& operator-=(const Jet& o)
    {
        for (int k = 0; k <= N; ++k) c[k] -= o.c[k];
        return *this;
    }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }
    Jet& operator/=(const Jet& o) { return *this = *this / o; }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator-(const Jet& a)
    {
        Jet r;
        for (int k = 0; k <= N; ++k) r.c[k] = -a.c[k];
        return r;
    }
    friend Jet operator*(const Jet& a, const Jet& b)
    {
        Jet r;
        for (int k = 0; k <= N; ++k) {
            T s{};
            for (int i = 0; i <= k; ++i) s += a.c[i] * b.c[k - i];
            r.c[k] = s;
        }
        return r;
    }
    friend Jet operator/(const Jet& a, const Jet& b)
    {
        Jet q;
        for (int k = 0; k <= N; ++k) {
            T s = a.c[k];
            for (int i = 1; i <= k; ++i) s -= b.c[i] * q.c[k - i];
            q.c[k] = s / b.c[0];
        }
        return q;
    }

    // Mixed operations with plain scalars (and with double when T is complex).
    template <typename S>
        requires std::is_convertible_v<S, T>
    friend Jet operator+(Jet a, const S& s)
    {
        a.c[0] += T(s);
        return a;
    }
    template <typename S>
        requires std::is_convertible_v<S, T>
    friend Jet operator+(const S& s, Jet a)
    {
        a.c[0] += T(s);
        return a;
    }
    template <typename S>
        requires std::is_convertible_v<S, T>
    friend Jet operator-(Jet a, const S& s)
    {
        a.c[0] -= T(s);
        return a;
    }
    template <typename S>
        requires std::is_convertible_v<S, T>
    friend Jet operator-(const S& s, const Jet& a)
    {
        Jet r = -a;
        r.c[0] += T(s);
        return r;
    }
    template <typename S>
        requires std::is_convertible_v<S, T>
    friend Jet operator*(Jet a, const S& s)
    {
        for (auto& v : a.c) v *= T(s);
        return a;
    }
    template <typename S>
        requires std::is_convertible_v<S, T>
    friend Jet operator*(const S& s, Jet a)
    {
        for (auto& v : a.c) v *= T(s);
        return a;
    }
    template <typename S>
        requires std::is_convertible_v<S, T>
    friend Jet operator/(Jet a, const S& s)
    {
        for (auto& v : a.c) v /= T(s);
        return a;
    }
    template <typename S>
        requires std::is_convertible_v<S, T>
    friend Jet operator/(const S& s, const Jet& a)
    {
        return Jet(T(s)) / a;
    }
};

namespace detail {

// sin/cos and sinh/cosh share one recurrence; sign = -1 for the circular pair.
template <typename T, int N>
void sincos_family(const Jet<T, N>& a, Jet<T, N>& s, Jet<T, N>& c, double sign)
{
    for (int k = 1; k <= N; ++k) {
        T ss{}, cc{};
        for (int j = 1; j <= k; ++j) {
            ss += T(j) * a.c[j] * c.c[k - j];
            cc += T(j) * a.c[j] * s.c[k - j];
        }
        s.c[k] = ss / T(k);
        c.c[k] = T(sign) * cc / T(k);
    }
}

} // namespace detail

template <typename T, int N>
Jet<T, N> exp(const Jet<T, N>& a)
{
    using std::exp;
    Jet<T, N> e;
    e.c[0] = exp(a.c[0]);
    for (int k = 1; k <= N; ++k) {
        T s{};
        for (int j = 1; j <= k; ++j) s += T(j) * a.c[j] * e.c[k - j];
        e.c[k] = s / T(k);
    }
    return e;
}

template <typename T, int N>
Jet<T, N> log(const Jet<T, N>& a)
{
    using std::log;
    Jet<T, N> l;
    l.c[0] = log(a.c[0]);
    for (int k = 1; k <= N; ++k) {
        T s{};
        for (int j = 1; j < k; ++j) s += T(j) * l.c[j] * a.c[k - j];
        l.c[k] = (a.c[k] - s / T(k)) / a.c[0];
    }
    return l;
}

template <typename T, int N>
Jet<T, N> sqrt(const Jet<T, N>& a)
{
    using std::sqrt;
    Jet<T, N> r;
    r.c[0] = sqrt(a.c[0]);
    for (int k = 1; k <= N; ++k) {
        T s{};
        for (int j = 1; j < k; ++j) s += r.c[j] * r.c[k - j];
        r.c[k] = (a.c[k] - s) / (T(2) * r.c[0]);
    }
    return r;
}

template <typename T, int N>
Jet<T, N> sin(const Jet<T, N>& a)
{
    using std::cos;
    using std::sin;
    Jet<T, N> s(sin(a.c[0])), c(cos(a.c[0]));
    detail::sincos_family(a, s, c, -1.0);
    return s;
}

template <typename T, int N>
Jet<T, N> cos(const Jet<T, N>& a)
{
    using std::cos;
    using std::sin;
    Jet<T, N> s(sin(a.c[0])), c(cos(a.c[0]));
    detail::sincos_family(a, s, c, -1.0);
    return c;
}

template <typename T, int N>
Jet<T, N> sinh(const Jet<T, N>& a)
{
    using std::cosh;
    using std::sinh;
    Jet<T, N> s(sinh(a.c[0])), c(cosh(a.c[0]));
    detail::sincos_family(a, s, c, 1.0);
    return s;
}

template <typename T, int N>
Jet<T, N> cosh(const Jet<T, N>& a)
{
    using std::cosh;
    using std::sinh;
    Jet<T, N> s(sinh(a.c[0])), c(cosh(a.c[0]));
    detail::sincos_family(a, s, c, 1.0);
    return c;
}

template <typename T, int N>
Jet<T, N> tan(const Jet<T, N>& a)
{
    return sin(a) / cos(a);
}

template <typename T, int N>
Jet<T, N> tanh(const Jet<T, N>& a)
{
    return sinh(a) / cosh(a);
}

template <typename T, int N>
Jet<T, N> asinh(const Jet<T, N>& a)
{
    return log(a + sqrt(a * a + T(1)));
}

/// Integer power by repeated squaring.
template <typename T, int N>
Jet<T, N> ipow(Jet<T, N> base, int n)
{
    if (n < 0) return Jet<T, N>(T(1)) / ipow(base, -n);
    Jet<T, N> r(T(1));
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

template <typename T>
T ipow(T base, int n)
{
    if (n < 0) return T(1) / ipow(base, -n);
    T r(1);
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

using CJet4 = Jet<std::complex<double>, 4>;

} // namespace zmc
