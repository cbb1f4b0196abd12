#pragma once

// Verification suites behind `zmc-forge verify`. Each check records the
// largest residual it saw against a tolerance; "identity" checks are exact
// analytic identities whose tolerance can be overridden from the command line.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bjorling.hpp"
#include "catalog.hpp"
#include "error.hpp"
#include "fluid.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "null_curve.hpp"
#include "typechange.hpp"
#include "weierstrass.hpp"

namespace zmc {

struct CheckResult {
    std::string name;
    std::string paper_ref;
    double max_residual = 0.0;
    double tol = 0.0;
    bool identity = false;
    bool pass = false;
    /// Set when the check threw instead of producing a residual.
    std::string error;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    [[nodiscard]] bool pass() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
    }
};

struct VerifyOptions {
    /// Replaces the tolerance of identity checks when set.
    std::optional<double> identity_tol;
};

inline const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"catalog", "weierstrass", "fluid", "roundtrip"};
    return names;
}

namespace detail {

class SuiteBuilder {
public:
    SuiteBuilder(std::string prefix, const VerifyOptions& opt) : prefix_(std::move(prefix)), opt_(opt) {}

    /// body returns the max residual; extra_ok can veto a pass.
    void run(const std::string& name, const std::string& ref, double tol, bool identity,
             const std::function<double()>& body, const std::function<bool(double)>& extra_ok = {})
    {
        CheckResult c;
        c.name = prefix_ + "/" + name;
        c.paper_ref = ref;
        c.identity = identity;
        c.tol = identity && opt_.identity_tol ? *opt_.identity_tol : tol;
        try {
            c.max_residual = body();
            c.pass = std::isfinite(c.max_residual) && c.max_residual <= c.tol;
            if (c.pass && extra_ok) c.pass = extra_ok(c.max_residual);
        } catch (const Error& e) {
            c.max_residual = std::numeric_limits<double>::infinity();
            c.error = e.what();
        } catch (const std::exception& e) {
            c.max_residual = std::numeric_limits<double>::infinity();
            c.error = e.what();
        }
        checks.push_back(std::move(c));
    }

    std::vector<CheckResult> checks;

private:
    std::string prefix_;
    VerifyOptions opt_;
};

inline double max_over_grid(const Rect& r, int n, const std::function<double(double, double)>& f)
{
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double x = r.x0 + r.width() * i / (n - 1);
            const double y = r.y0 + r.height() * j / (n - 1);
            worst = std::max(worst, std::abs(f(x, y)));
        }
    }
    return worst;
}

/// Euclidean distance from (px, py) to the segment ab.
inline double segment_distance(double px, double py, double ax, double ay, double bx, double by)
{
    const double dx = bx - ax, dy = by - ay;
    const double len2 = dx * dx + dy * dy;
    double s = len2 > 0.0 ? ((px - ax) * dx + (py - ay) * dy) / len2 : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    return std::hypot(px - (ax + s * dx), py - (ay + s * dy));
}

/// Distance from (px, py) to the curve y = sign cosh x (foot point by Newton).
inline double cosh_curve_distance(double px, double py, double sign)
{
    double x = px;
    for (int it = 0; it < 50; ++it) {
        const double c = std::cosh(x), s = std::sinh(x);
        const double g = (x - px) + (sign * c - py) * sign * s;
        const double dg = 1.0 + s * s + (sign * c - py) * sign * c;
        const double step = g / dg;
        x -= step;
        if (std::abs(step) < 1e-16) break;
    }
    return std::hypot(x - px, sign * std::cosh(x) - py);
}

/// Two-sided Hausdorff distance between a traced polyline and the branch
/// y = sign cosh x inside rect.
inline double cosh_branch_hausdorff(const Polyline& line, double sign, const Rect& rect)
{
    double worst = 0.0;
    for (const auto& p : line.points) worst = std::max(worst, cosh_curve_distance(p.x, p.y, sign));
    const double xmax = std::min(std::acosh(sign > 0 ? rect.y1 : -rect.y0), std::max(-rect.x0, rect.x1));
    constexpr int n = 1000;
    for (int k = 0; k <= n; ++k) {
        const double x = -xmax + 2.0 * xmax * k / n;
        const double y = sign * std::cosh(x);
        double best = INFINITY;
        for (std::size_t i = 0; i + 1 < line.points.size(); ++i) {
            const auto& a = line.points[i];
            const auto& b = line.points[i + 1];
            best = std::min(best, segment_distance(x, y, a.x, a.y, b.x, b.y));
        }
        worst = std::max(worst, best);
    }
    return worst;
}

/// Max |f_lift - f_exact| at points offset from B = 0 along grad B, over the
/// middle part of the lifted curve.
inline double null_lift_round_trip(const GraphFunction& exact, const Polyline& line, double offset)
{
    const AnalyticNullCurve curve = null_lift_of_typechange(exact, line);
    const double u0 = curve.domain().mid();
    const GraphFunction lifted = graph_around_curve(curve, u0, 0.3, 21);
    double worst = 0.0;
    for (int k = 0; k <= 20; ++k) {
        const double u = u0 - 0.2 + 0.4 * k / 20.0;
        const LorentzVec3 p = curve.point(u);
        const BGrad b = B_and_gradB(exact, p.x, p.y);
        const double gn = b.grad_norm();
        for (double s : {-offset, -0.5 * offset, 0.0, 0.5 * offset, offset}) {
            const double x = p.x + s * b.grad[0] / gn, y = p.y + s * b.grad[1] / gn;
            worst = std::max(worst, std::abs(lifted.value(x, y) - exact.value(x, y)));
        }
    }
    return worst;
}

inline const std::vector<std::pair<std::string, AnalyticNullCurve>>& fold_curves()
{
    static const std::vector<std::pair<std::string, AnalyticNullCurve>> curves{
        {"circle", circle_null_curve()},
        {"alpha", alpha_curve()},
        {"beta", beta_curve()},
        {"scherk", scherk_null_curve()},
        {"parabolic_directrix", parabolic_directrix()}};
    return curves;
}

inline std::vector<CheckResult> catalog_suite(const VerifyOptions& opt)
{
    SuiteBuilder b("catalog", opt);
    for (const auto& s : catalog_list()) {
        for (const auto& c : s.charts) {
            b.run("chart/" + s.name + "/" + c.name, "implicit equation " + s.equation + " on chart " + c.name, 1e-10,
                  true, [&] { return chart_max_residual(s, c, 1000); });
        }
    }
    const ConjugateIdentityReport conj = conjugate_identities_check(1000);
    b.run("conjugate/minus_phi1_star_in_C_zero", "-(conjugate of the space-like catenoid) lies on t = y tanh x", 1e-9,
          true, [&] { return conj.minus_phi1_star_in_C_zero; });
    b.run("conjugate/phi2_star_in_C_zero", "conjugate (alpha(u) - beta(v))/2 lies on t = y tanh x", 1e-9, true,
          [&] { return conj.phi2_star_in_C_zero; });
    b.run("conjugate/psi1_star_in_S_zero", "log-modulus conjugate of Scherk lies on e^t cosh x = cosh y", 1e-9, true,
          [&] { return conj.psi1_star_in_S_zero; });
    b.run("conjugate/psi2_in_S_minus", "(gamma(u) - gamma(v))/2 lies on cosh t = cosh x cosh y", 1e-9, true,
          [&] { return conj.psi2_in_S_minus; });
    b.run("conjugate/cosh_chain", "cosh t = sin(u+v)/sqrt(sin 2u sin 2v)", 1e-10, true,
          [&] { return conj.cosh_chain; });

    const std::pair<const char*, GraphFunction> graphs[] = {
        {"C_zero", c_zero_graph()}, {"S_zero", s_zero_graph()}, {"helicoid", helicoid_graph()}};
    for (const auto& [name, g] : graphs) {
        b.run(std::string("zmc_residual/") + name, "zero mean curvature equation on a 101x101 grid (analytic)", 1e-12,
              true, [&] { return max_over_grid(g.domain(), 101, [&](double x, double y) { return zmc_residual(g, x, y); }); });
    }

    double mean = 0.0;
    b.run(
        "alpha0_II/q_times_c_constant",
        "quadratic contact q(c) of the completed parabolic catenoid satisfies q(c) c = const != 0", 1e-6, false,
        [&] {
            std::vector<double> qc;
            for (double c : {0.5, 1.0, 2.0, 5.0}) qc.push_back(alpha0_II_contact(c) * c);
            for (double v : qc) mean += v / static_cast<double>(qc.size());
            double spread = 0.0;
            for (double v : qc) spread = std::max(spread, std::abs(v - mean));
            return spread;
        },
        [&](double) { return std::abs(mean) > 1e-3; });
    return b.checks;
}

inline std::vector<CheckResult> weierstrass_suite(const VerifyOptions& opt)
{
    SuiteBuilder b("weierstrass", opt);
    for (const auto& [name, curve] : fold_curves()) {
        const WeierstrassData d = weierstrass_from_null_curve(curve);
        const Interval dom = curve.domain();
        const double r = curve.strip_radius();
        constexpr int n = 256;
        b.run("fold_criterion/" + name, "Re(dG/(G^2 eta)) vanishes along the fold", 1e-10, true, [&] {
            double worst = 0.0;
            for (int k = 0; k < n; ++k) worst = std::max(worst, std::abs(fold_criterion(d, Complex(dom.sample(k, n), 0.0))));
            return worst;
        });
        b.run("unit_G/" + name, "|G| = 1 on the singular curve", 1e-10, true, [&] {
            double worst = 0.0;
            for (int k = 0; k < n; ++k) worst = std::max(worst, std::abs(singular_residual(d, Complex(dom.sample(k, n), 0.0))));
            return worst;
        });
        b.run("nondegenerate_singular/" + name, "dG does not vanish on the singular curve (count of failures)", 0.0,
              false, [&] {
                  double failures = 0.0;
                  for (int k = 0; k < n; ++k) {
                      if (!is_nondegenerate_singular(d, Complex(dom.sample(k, n), 0.0), 1e-8)) failures += 1.0;
                  }
                  return failures;
              });
        b.run("lift_nullity/" + name, "-(dPhi_0)^2 + (dPhi_1)^2 + (dPhi_2)^2 = 0 (relative to |dPhi|^2)", 1e-12, true,
              [&] {
                  double worst = 0.0;
                  for (int k = 1; k <= n; ++k) {
                      const auto q = halton2(k);
                      const Complex z(dom.a + dom.length() * q[0], r * (2.0 * q[1] - 1.0));
                      const ComplexVec3 v = d.integrand(z);
                      const double scale = 1.0 + euclid_norm(v) * euclid_norm(v);
                      worst = std::max(worst, std::abs(complex_inner(v, v)) / scale);
                  }
                  return worst;
              });
        b.run("round_trip/" + name, "Re of the Weierstrass lift equals Re gamma(u + i v)", 1e-9, false, [&] {
            double worst = 0.0;
            for (int k = 1; k <= 64; ++k) {
                const auto q = halton2(k);
                const double u = dom.a + dom.length() * (0.05 + 0.9 * q[0]);
                const double v = 0.9 * r * (2.0 * q[1] - 1.0);
                const LorentzVec3 a = maxface_eval(d, Complex(u, v));
                worst = std::max(worst, euclid_norm(a - maximal_extension(curve, u, v)));
            }
            return worst;
        });
        b.run("path_independence/" + name, "lift along two polylines from z0 to z agrees", 1e-10, false, [&] {
            double worst = 0.0;
            for (int k = 1; k <= 16; ++k) {
                const auto q = halton2(k);
                const Complex z(dom.a + dom.length() * (0.05 + 0.9 * q[0]), 0.9 * r * (2.0 * q[1] - 1.0));
                const Complex corner1(z.real(), d.base_point.imag());
                const Complex corner2(d.base_point.real(), z.imag());
                const ComplexVec3 p1 = holomorphic_lift_along(d, {corner1, z});
                const ComplexVec3 p2 = holomorphic_lift_along(d, {corner2, z});
                worst = std::max(worst, euclid_norm(p1 - p2));
            }
            return worst;
        });
        b.run("conjugate_cone/" + name, "the conjugate is constant along the fold (|d/du conjugate|)", 1e-8, false,
              [&] {
                  double worst = 0.0;
                  const double h = 1e-4 * dom.length();
                  for (int k = 0; k < 32; ++k) {
                      const double u = dom.a + dom.length() * (0.1 + 0.8 * (k + 0.5) / 32.0);
                      const LorentzVec3 a = conjugate_eval(d, Complex(u + h, 0.0));
                      const LorentzVec3 c = conjugate_eval(d, Complex(u - h, 0.0));
                      worst = std::max(worst, euclid_norm(a - c) / (2.0 * h));
                  }
                  return worst;
              });
    }
    return b.checks;
}

inline std::vector<CheckResult> fluid_suite(const VerifyOptions& opt)
{
    SuiteBuilder b("fluid", opt);
    const VirtualGas gas;
    const GraphFunction heli = helicoid_graph({0.2, -3.5, 3.5, 3.5});
    b.run("bernoulli/helicoid_annulus", "-1/rho^2 + q^2 = k on the subsonic annulus 1.5 <= r <= 3 (k = -1)", 1e-8,
          true, [&] {
              double worst = 0.0;
              for (int i = 0; i <= 40; ++i) {
                  for (int j = 0; j <= 40; ++j) {
                      const double r = 1.5 + 1.5 * i / 40.0;
                      const double th = -1.4 + 2.8 * j / 40.0;
                      const FlowState s = flow_state(heli, gas, r * std::cos(th), r * std::sin(th));
                      worst = std::max(worst, std::abs(-1.0 / (s.rho * s.rho) + s.q * s.q - gas.bernoulli_k(s.B)));
                  }
              }
              return worst;
          });
    const GraphFunction c0 = c_zero_graph();
    b.run("bernoulli/C_zero_supersonic", "-1/rho^2 + q^2 = k on a supersonic rect of t = y tanh x (k = +1)", 1e-8,
          true, [&] {
              return max_over_grid({-1.0, 2.0, 1.0, 2.9}, 41, [&](double x, double y) {
                  const FlowState s = flow_state(c0, gas, x, y);
                  return -1.0 / (s.rho * s.rho) + s.q * s.q - gas.bernoulli_k(s.B);
              });
          });
    const Rect annulus_box{1.6, -1.0, 2.8, 1.0};
    const ConservationReport coarse = verify_conservation(heli, gas, annulus_box, 1e-3);
    const ConservationReport fine = verify_conservation(heli, gas, annulus_box, 5e-4);
    b.run("continuity/order", "div(rho v) = 0: observed order of the central-difference residual (|order - 2|)", 0.2,
          false, [&] { return std::abs(std::log2(coarse.continuity_max / fine.continuity_max) - 2.0); });
    b.run("irrotational/order", "v_x - u_y = 0: observed order of the central-difference residual (|order - 2|)",
          0.2, false, [&] { return std::abs(std::log2(coarse.irrotational_max / fine.irrotational_max) - 2.0); });
    b.run("irrotational/h_1e-5", "v_x - u_y = 0 at h = 1e-5", 1e-8, false,
          [&] { return verify_conservation(heli, gas, annulus_box, 1e-5).irrotational_max; });
    b.run("continuity/h_1e-5", "div(rho v) = 0 at h = 1e-5", 1e-8, false,
          [&] { return verify_conservation(heli, gas, annulus_box, 1e-5).continuity_max; });
    b.run("stream_equation/helicoid", "stream-function equation with rho c = 1 (ZMC residual)", 1e-12, true, [&] {
        return max_over_grid(annulus_box, 41, [&](double x, double y) { return verify_stream_equation(heli, x, y); });
    });

    // Transonic flow through the unit circle.
    const PlanarCurve circle = make_planar_curve(
        [](auto z) {
            using std::cos;
            using std::sin;
            return std::array{cos(z), sin(z)};
        },
        Interval{0.0, 2.0 * std::numbers::pi}, true, 1.0);
    std::optional<TransonicFlow> flow;
    b.run("transonic/construct", "flow from the null lift of the unit circle (max |B| on the sonic line)", 1e-8,
          false, [&] {
              flow = transonic_flow_from_convex_curve(circle, gas, 0.3, 21);
              return flow->report.max_sonic_B;
          });
    if (!flow) return b.checks;
    const TransonicReport& rep = flow->report;
    b.run("transonic/regime_boundary", "bisection on rays finds the sonic line at r = 1 (|r - 1|)", 1e-8, false,
          [&] {
              double worst = 0.0;
              for (int k = 0; k < 9; ++k) {
                  const double th = std::numbers::pi - 0.12 + 0.24 * k / 8.0;
                  auto B = [&](double r) { return B_and_gradB(flow->psi, r * std::cos(th), r * std::sin(th)).B; };
                  double lo = 0.95, hi = 1.05;
                  const double blo = B(lo);
                  if (blo * B(hi) >= 0.0) return std::numeric_limits<double>::infinity();
                  for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
                      const double mid = 0.5 * (lo + hi);
                      ((B(mid) < 0.0) == (blo < 0.0) ? lo : hi) = mid;
                  }
                  worst = std::max(worst, std::abs(0.5 * (lo + hi) - 1.0));
              }
              return worst;
          });
    b.run("transonic/supersonic_inside", "regime flips across the sonic line, supersonic on the inside (failures)",
          0.0, false, [&] { return rep.regime_flips ? 0.0 : 1.0; });
    b.run("transonic/acceleration_supersonic", "sigma'' points into the supersonic region (failures)", 0.0, false,
          [&] { return rep.acceleration_points_supersonic ? 0.0 : 1.0; });
    b.run("transonic/exponent_supersonic", "q ~ d^(-1/2) near the sonic line, supersonic side (|p + 1/2|)", 0.1,
          false, [&] { return std::abs(rep.exponent_supersonic + 0.5); });
    b.run("transonic/exponent_subsonic", "q ~ d^(-1/2) near the sonic line, subsonic side (|p + 1/2|)", 0.1, false,
          [&] { return std::abs(rep.exponent_subsonic + 0.5); });
    return b.checks;
}

inline std::vector<CheckResult> roundtrip_suite(const VerifyOptions& opt)
{
    SuiteBuilder b("roundtrip", opt);
    const AnalyticNullCurve circle = circle_null_curve();
    auto helicoid_residual = [&](double w_sign) {
        double worst = 0.0;
        for (int i = 0; i <= 40; ++i) {
            const double u = 1.0 + 4.0 * i / 40.0;
            for (int j = 1; j <= 20; ++j) {
                const double w = w_sign * 0.8 * j / 20.0;
                const LorentzVec3 p = unified_extension(circle, u, w);
                worst = std::max(worst, std::abs(p.x * std::sin(p.t) - p.y * std::cos(p.t)));
            }
        }
        return worst;
    };
    b.run("unified_helicoid/spacelike", "unified extension of the circle lift on x sin t = y cos t, w < 0", 1e-9,
          true, [&] { return helicoid_residual(-1.0); });
    b.run("unified_helicoid/timelike", "unified extension of the circle lift on x sin t = y cos t, w > 0", 1e-9,
          true, [&] { return helicoid_residual(1.0); });

    const GraphFunction c0 = c_zero_graph();
    std::optional<Polyline> upper;
    b.run("trace/C_zero_upper", "traced B = 0 of t = y tanh x against y = cosh x (Hausdorff)", 1e-6, false, [&] {
        upper = trace_typechange_curve(c0, {0.0, 1.0}, 1e-3, 20000);
        return cosh_branch_hausdorff(*upper, 1.0, c0.domain());
    });
    b.run("trace/C_zero_lower", "traced B = 0 of t = y tanh x against y = -cosh x (Hausdorff)", 1e-6, false, [&] {
        return cosh_branch_hausdorff(trace_typechange_curve(c0, {0.0, -1.0}, 1e-3, 20000), -1.0, c0.domain());
    });
    b.run("null_lift/C_zero", "graph of the Bjorling surface of the lifted sonic curve reproduces t = y tanh x", 1e-6,
          false, [&] {
              const Polyline line = upper ? *upper : trace_typechange_curve(c0, {0.0, 1.0}, 1e-3, 20000);
              return null_lift_round_trip(c0, line, 0.002);
          });
    const GraphFunction s0 = s_zero_graph();
    b.run("null_lift/S_zero", "graph of the Bjorling surface of the lifted sonic curve reproduces e^t cosh x = cosh y",
          1e-6, false, [&] {
              const double a = std::atanh(std::sqrt(0.5));
              return null_lift_round_trip(s0, trace_typechange_curve(s0, {a, a}, 1e-3, 20000), 0.002);
          });
    b.run("reparametrization", "graphs from gamma and gamma(s + 0.1 s^2) agree", 1e-8, false, [&] {
        const double smax = (-1.0 + std::sqrt(1.0 + 0.4 * 2.0 * std::numbers::pi)) / 0.2;
        const AnalyticNullCurve re = make_closed_form_curve(
            [](auto s) {
                using std::cos;
                using std::sin;
                const auto u = s + 0.1 * s * s;
                return std::array{u, cos(u), sin(u)};
            },
            Interval{0.0, smax}, 0.5);
        const double pi = std::numbers::pi;
        const double s0 = (-1.0 + std::sqrt(1.0 + 0.4 * pi)) / 0.2;
        const GraphFunction g1 = graph_around_curve(circle, pi, 0.3, 21);
        const GraphFunction g2 = graph_around_curve(re, s0, 0.3, 21);
        double worst = 0.0;
        for (int i = 0; i <= 10; ++i) {
            for (int j = 0; j <= 10; ++j) {
                const double r = 0.99 + 0.02 * i / 10.0;
                const double th = pi - 0.15 + 0.3 * j / 10.0;
                const double x = r * std::cos(th), y = r * std::sin(th);
                worst = std::max(worst, std::abs(g1.value(x, y) - g2.value(x, y)));
            }
        }
        return worst;
    });
    return b.checks;
}

} // namespace detail

/// Runs one suite, or every suite for "all".
inline SuiteReport run_suite(const std::string& suite, const VerifyOptions& opt = {})
{
    SuiteReport r;
    r.suite = suite;
    auto append = [&](std::vector<CheckResult> c) { r.checks.insert(r.checks.end(), c.begin(), c.end()); };
    if (suite == "catalog" || suite == "all") append(detail::catalog_suite(opt));
    if (suite == "weierstrass" || suite == "all") append(detail::weierstrass_suite(opt));
    if (suite == "fluid" || suite == "all") append(detail::fluid_suite(opt));
    if (suite == "roundtrip" || suite == "all") append(detail::roundtrip_suite(opt));
    if (r.checks.empty()) throw Error(ErrorCode::UnknownName, "no verification suite named '" + suite + "'");
    return r;
}

inline void write_report(std::ostream& os, const SuiteReport& r)
{
    os << "{\n  \"suite\": " << json_string(r.suite) << ",\n  \"pass\": " << (r.pass() ? "true" : "false")
       << ",\n  \"checks\": [";
    for (std::size_t k = 0; k < r.checks.size(); ++k) {
        const CheckResult& c = r.checks[k];
        os << (k ? "," : "") << "\n    {\"name\": " << json_string(c.name) << ", \"paper_ref\": " << json_string(c.paper_ref)
           << ", \"max_residual\": " << json_number(c.max_residual) << ", \"tol\": " << json_number(c.tol)
           << ", \"pass\": " << (c.pass ? "true" : "false");
        if (!c.error.empty()) os << ", \"error\": " << json_string(c.error);
        os << '}';
    }
    os << "\n  ]\n}\n";
}

} // namespace zmc
