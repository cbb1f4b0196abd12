#pragma once

// JSON descriptors for curves, graphs and Weierstrass data.
//
// Curve:       {"kind": "builtin", "name": "circle", "domain": [a, b], "strip_radius": r}
//              {"kind": "taylor", "segments": [{"center", "radius", "coeffs": [[t, x, y], ...]}], "domain", "strip_radius"}
//              {"kind": "expression", "t": "...", "x": "...", "y": "...", "domain", "strip_radius"}
// Planar:      {"kind": "planar", "x": "...", "y": "...", "domain", "strip_radius", "arclength": true}
//              {"kind": "builtin", "name": "unit_circle"}
// Graph:       {"kind": "builtin", "name": "C_zero", "domain": [x0, y0, x1, y1]}
//              {"kind": "expression", "f": "...", "domain": [x0, y0, x1, y1]}
// Weierstrass: {"G": "...", "w": "...", "base_point": [re, im], "base_value": [[re, im] x 3], "domain": [x0, y0, x1, y1]}
//
// Expressions use the variable z for curves and Weierstrass data and x, y for graphs.
// Domain and strip_radius are optional for builtins.

#include <array>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "catalog.hpp"
#include "error.hpp"
#include "expression.hpp"
#include "graph.hpp"
#include "null_curve.hpp"
#include "weierstrass.hpp"

namespace zmc {

using Json = nlohmann::json;

inline Json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
}

namespace detail {

inline const Json& require(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing key '") + key + "'");
    return j.at(key);
}

inline double number(const Json& j, const char* what)
{
    if (!j.is_number()) throw Error(ErrorCode::ParseError, std::string(what) + " must be a number");
    return j.get<double>();
}

inline std::string text(const Json& j, const char* key)
{
    const Json& v = require(j, key);
    if (!v.is_string()) throw Error(ErrorCode::ParseError, std::string("'") + key + "' must be a string");
    return v.get<std::string>();
}

template <std::size_t N>
std::array<double, N> numbers(const Json& j, const char* what)
{
    if (!j.is_array() || j.size() != N) {
        throw Error(ErrorCode::ParseError, std::string(what) + " must be an array of " + std::to_string(N) + " numbers");
    }
    std::array<double, N> out{};
    for (std::size_t k = 0; k < N; ++k) out[k] = number(j[k], what);
    return out;
}

inline Complex complex_number(const Json& j, const char* what)
{
    if (j.is_number()) return {j.get<double>(), 0.0};
    const auto a = numbers<2>(j, what);
    return {a[0], a[1]};
}

inline Interval interval_or(const Json& j, Interval fallback)
{
    if (!j.contains("domain")) return fallback;
    const auto d = numbers<2>(j.at("domain"), "domain");
    return {d[0], d[1]};
}

inline double strip_or(const Json& j, double fallback)
{
    return j.contains("strip_radius") ? number(j.at("strip_radius"), "strip_radius") : fallback;
}

inline Rect rect_or(const Json& j, Rect fallback)
{
    if (!j.contains("domain")) return fallback;
    const auto d = numbers<4>(j.at("domain"), "domain");
    return {d[0], d[1], d[2], d[3]};
}

inline AnalyticNullCurve builtin_curve(const std::string& name)
{
    if (name == "circle") return circle_null_curve();
    if (name == "alpha") return alpha_curve();
    if (name == "beta") return beta_curve();
    if (name == "scherk") return scherk_null_curve();
    if (name == "parabolic_directrix") return parabolic_directrix();
    if (name == "degenerate_line") return degenerate_line();
    throw Error(ErrorCode::UnknownName, "no builtin curve named '" + name + "'");
}

} // namespace detail

inline const std::vector<std::string>& builtin_curve_names()
{
    static const std::vector<std::string> names{"circle", "alpha", "beta", "scherk", "parabolic_directrix",
                                                "degenerate_line"};
    return names;
}

inline AnalyticNullCurve parse_curve(const Json& j, const CurveValidation& opt = {})
{
    const std::string kind = detail::text(j, "kind");
    if (kind == "builtin") {
        const AnalyticNullCurve base = detail::builtin_curve(detail::text(j, "name"));
        if (!j.contains("domain") && !j.contains("strip_radius")) return base;
        return validate_curve(AnalyticNullCurve(base.jet_function(), detail::interval_or(j, base.domain()),
                                                detail::strip_or(j, base.strip_radius())),
                              opt);
    }
    if (kind == "taylor") {
        const Json& segs = detail::require(j, "segments");
        if (!segs.is_array()) throw Error(ErrorCode::ParseError, "'segments' must be an array");
        std::vector<TaylorSegment> out;
        for (const Json& s : segs) {
            TaylorSegment seg;
            seg.center = detail::number(detail::require(s, "center"), "center");
            seg.radius = detail::number(detail::require(s, "radius"), "radius");
            const Json& coeffs = detail::require(s, "coeffs");
            if (!coeffs.is_array()) throw Error(ErrorCode::ParseError, "'coeffs' must be an array");
            for (const Json& c : coeffs) seg.coeffs.push_back(detail::numbers<3>(c, "coefficient"));
            out.push_back(std::move(seg));
        }
        const auto d = detail::numbers<2>(detail::require(j, "domain"), "domain");
        return make_taylor_curve(std::move(out), Interval{d[0], d[1]},
                                 detail::number(detail::require(j, "strip_radius"), "strip_radius"), opt);
    }
    if (kind == "expression") {
        const std::vector<std::string> vars{"z"};
        const Expression et = Expression::parse(detail::text(j, "t"), vars);
        const Expression ex = Expression::parse(detail::text(j, "x"), vars);
        const Expression ey = Expression::parse(detail::text(j, "y"), vars);
        const auto d = detail::numbers<2>(detail::require(j, "domain"), "domain");
        return make_closed_form_curve(
            [et, ex, ey](auto z) {
                using T = decltype(z);
                return std::array<T, 3>{et.eval<T>({z}), ex.eval<T>({z}), ey.eval<T>({z})};
            },
            Interval{d[0], d[1]}, detail::number(detail::require(j, "strip_radius"), "strip_radius"), opt);
    }
    throw Error(ErrorCode::ParseError, "unknown curve kind '" + kind + "'");
}

/// Planar curve descriptor. A curve not flagged arclength is reparametrized
/// by arclength before use.
inline PlanarCurve parse_planar_curve(const Json& j)
{
    const std::string kind = detail::text(j, "kind");
    if (kind == "builtin") {
        const std::string name = detail::text(j, "name");
        if (name != "unit_circle") throw Error(ErrorCode::UnknownName, "no builtin planar curve named '" + name + "'");
        return make_planar_curve(
            [](auto z) {
                using std::cos;
                using std::sin;
                return std::array{cos(z), sin(z)};
            },
            detail::interval_or(j, Interval{0.0, 2.0 * std::numbers::pi}), true, detail::strip_or(j, 1.0));
    }
    if (kind == "planar") {
        const std::vector<std::string> vars{"z"};
        const Expression ex = Expression::parse(detail::text(j, "x"), vars);
        const Expression ey = Expression::parse(detail::text(j, "y"), vars);
        const auto d = detail::numbers<2>(detail::require(j, "domain"), "domain");
        const bool arclength = j.value("arclength", false);
        PlanarCurve sigma = make_planar_curve(
            [ex, ey](auto z) {
                using T = decltype(z);
                return std::array<T, 2>{ex.eval<T>({z}), ey.eval<T>({z})};
            },
            Interval{d[0], d[1]}, arclength, detail::strip_or(j, 1.0));
        return arclength ? sigma : arclength_reparametrize(sigma, j.value("nodes", 128));
    }
    throw Error(ErrorCode::ParseError, "unknown planar curve kind '" + kind + "'");
}

inline GraphFunction builtin_graph(const std::string& name)
{
    if (name == "C_zero") return c_zero_graph();
    if (name == "S_zero") return s_zero_graph();
    if (name == "helicoid") return helicoid_graph();
    throw Error(ErrorCode::UnknownName, "no builtin graph named '" + name + "'");
}

inline GraphFunction parse_graph(const Json& j)
{
    const std::string kind = detail::text(j, "kind");
    if (kind == "builtin") {
        const std::string name = detail::text(j, "name");
        const GraphFunction base = builtin_graph(name);
        if (!j.contains("domain")) return base;
        const Rect r = detail::rect_or(j, base.domain());
        if (name == "C_zero") return c_zero_graph(r);
        if (name == "S_zero") return s_zero_graph(r);
        return helicoid_graph(r);
    }
    if (kind == "expression") {
        const Expression f = Expression::parse(detail::text(j, "f"), {"x", "y"});
        const auto d = detail::numbers<4>(detail::require(j, "domain"), "domain");
        return make_closed_form_graph(
            [f](auto x, auto y) {
                using T = decltype(x);
                return f.eval<T>({x, y});
            },
            Rect{d[0], d[1], d[2], d[3]});
    }
    throw Error(ErrorCode::ParseError, "unknown graph kind '" + kind + "'");
}

inline WeierstrassData parse_weierstrass(const Json& j)
{
    const std::vector<std::string> vars{"z"};
    const Expression G = Expression::parse(detail::text(j, "G"), vars);
    const Expression w = Expression::parse(detail::text(j, "w"), vars);
    const Complex z0 = j.contains("base_point") ? detail::complex_number(j.at("base_point"), "base_point") : Complex{};
    ComplexVec3 base{};
    if (j.contains("base_value")) {
        const Json& b = j.at("base_value");
        if (!b.is_array() || b.size() != 3) throw Error(ErrorCode::ParseError, "base_value must have three entries");
        base = {detail::complex_number(b[0], "base_value"), detail::complex_number(b[1], "base_value"),
                detail::complex_number(b[2], "base_value")};
    }
    const auto d = detail::numbers<4>(detail::require(j, "domain"), "domain");
    return make_weierstrass_data(G, w, z0, base, ComplexRect{d[0], d[2], d[1], d[3]});
}

} // namespace zmc
