#pragma once

// The zmc-forge command line. Exit codes: 0 success, 1 verification failure
// (report still written), 2 usage, input or numerical error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bjorling.hpp"
#include "catalog.hpp"
#include "descriptors.hpp"
#include "error.hpp"
#include "fluid.hpp"
#include "io.hpp"
#include "typechange.hpp"
#include "verify.hpp"

namespace zmc {

namespace cli {

inline std::array<int, 2> parse_resolution(const std::string& s)
{
    const auto x = s.find_first_of("xX");
    int n = 0, m = 0;
    try {
        if (x == std::string::npos) throw std::invalid_argument(s);
        std::size_t used = 0;
        n = std::stoi(s.substr(0, x), &used);
        if (used != x) throw std::invalid_argument(s);
        m = std::stoi(s.substr(x + 1), &used);
        if (used != s.size() - x - 1) throw std::invalid_argument(s);
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidArgument, "resolution must look like 64x64, got '" + s + "'");
    }
    if (n < 2 || m < 2) throw Error(ErrorCode::InvalidArgument, "resolution must be at least 2x2");
    return {n, m};
}

inline std::vector<double> parse_numbers(const std::string& s, std::size_t count, const char* what)
{
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidArgument, std::string(what) + ": bad number '" + item + "'");
        }
    }
    if (out.size() != count) {
        throw Error(ErrorCode::InvalidArgument,
                    std::string(what) + " needs " + std::to_string(count) + " comma-separated numbers");
    }
    return out;
}

inline std::ofstream open_output(const std::string& path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
    return os;
}

inline void finish(std::ofstream& os, const std::string& path)
{
    os.close();
    if (!os) throw Error(ErrorCode::InvalidArgument, "error while writing '" + path + "'");
}

/// "mesh.obj" -> "mesh.meta.json".
inline std::string sidecar_path(const std::string& out)
{
    const auto slash = out.find_last_of('/');
    const auto dot = out.find_last_of('.');
    const std::string stem = dot != std::string::npos && (slash == std::string::npos || dot > slash) ? out.substr(0, dot) : out;
    return stem + ".meta.json";
}

struct Sidecar {
    std::vector<std::pair<std::string, std::string>> fields;

    void text(const std::string& k, const std::string& v) { fields.emplace_back(k, json_string(v)); }
    void number(const std::string& k, double v) { fields.emplace_back(k, json_number(v)); }
    void integer(const std::string& k, long long v) { fields.emplace_back(k, std::to_string(v)); }
    void boolean(const std::string& k, bool v) { fields.emplace_back(k, v ? "true" : "false"); }

    void write(const std::string& path) const
    {
        std::ofstream os = open_output(path);
        os << "{\n";
        for (std::size_t i = 0; i < fields.size(); ++i) {
            os << "  " << json_string(fields[i].first) << ": " << fields[i].second << (i + 1 < fields.size() ? ",\n" : "\n");
        }
        os << "}\n";
        finish(os, path);
    }
};

inline void write_grid_file(const SampleGrid& g, const std::string& out, std::initializer_list<const char*> allowed)
{
    const std::string ext = file_extension(out);
    bool ok = false;
    for (const char* a : allowed) ok = ok || ext == a;
    if (!ok) throw Error(ErrorCode::InvalidArgument, "unsupported output extension for '" + out + "'");
    std::ofstream os = open_output(out);
    write_grid(os, g, ext);
    finish(os, out);
}

// ---------------------------------------------------------------------------

inline int catalog_list_cmd()
{
    for (const auto& s : catalog_list()) {
        std::cout << s.name << "  [" << s.equation << "]  charts:";
        for (const auto& c : s.charts) std::cout << ' ' << c.name;
        std::cout << '\n';
    }
    return 0;
}

inline int catalog_sample_cmd(const std::string& name, const std::string& chart_name, const std::string& res,
                              const std::string& out)
{
    const CatalogSurface& s = catalog_get(name);
    const Chart& c = chart_get(s, chart_name);
    const auto [nu, nv] = parse_resolution(res);
    SampleGrid g = sample_grid(c.map, c.u0, c.u1, c.v0, c.v1, nu, nv);
    auto& residual = g.scalar("implicit_residual");
    double max_implicit = 0.0;
    for (std::size_t k = 0; k < g.vertices.size(); ++k) {
        residual.values[k] = s.implicit_residual(g.vertices[k]);
        max_implicit = std::max(max_implicit, std::abs(residual.values[k]));
    }
    double max_zmc = std::numeric_limits<double>::quiet_NaN();
    if (c.kind == ChartKind::Graph && s.graph) {
        max_zmc = 0.0;
        std::vector<double> b(g.vertices.size()), z(g.vertices.size()), sing(g.vertices.size());
        for (std::size_t k = 0; k < g.vertices.size(); ++k) {
            const GraphJet j = s.graph->jet(g.vertices[k].x, g.vertices[k].y);
            b[k] = B_and_gradB(j).B;
            z[k] = zmc_residual(j);
            sing[k] = std::abs(b[k]) <= 1e-10 ? 1.0 : 0.0;
            max_zmc = std::max(max_zmc, std::abs(z[k]));
        }
        g.scalar("B").values = b;
        g.scalar("zmc_residual").values = z;
        g.scalar("singular").values = sing;
    }
    std::cout << s.name << '/' << c.name << ": " << nu << 'x' << nv << " samples, max implicit residual "
              << format_double(max_implicit);
    if (!std::isnan(max_zmc)) std::cout << ", max zmc residual " << format_double(max_zmc);
    std::cout << '\n';
    if (out.empty()) return 0;
    write_grid_file(g, out, {"obj", "ply", "csv", "json", "vtk"});
    Sidecar meta;
    meta.text("surface", s.name);
    meta.text("chart", c.name);
    meta.text("equation", s.equation);
    meta.integer("nu", nu);
    meta.integer("nv", nv);
    meta.number("u0", c.u0);
    meta.number("u1", c.u1);
    meta.number("v0", c.v0);
    meta.number("v1", c.v1);
    meta.number("max_implicit_residual", max_implicit);
    meta.number("max_zmc_residual", max_zmc);
    meta.text("causal_note", s.causal_note);
    if (!c.note.empty()) meta.text("chart_note", c.note);
    meta.write(sidecar_path(out));
    return 0;
}

inline int bjorling_cmd(const std::string& curve_path, const std::string& side_name, const std::string& res,
                        const std::string& out, double extent)
{
    const AnalyticNullCurve curve = parse_curve(load_json_file(curve_path));
    ExtensionSide side{};
    if (side_name == "max") {
        side = ExtensionSide::Maximal;
    } else if (side_name == "timelike") {
        side = ExtensionSide::Timelike;
    } else if (side_name == "unified") {
        side = ExtensionSide::Unified;
    } else {
        throw Error(ErrorCode::InvalidArgument, "--side must be max, timelike or unified");
    }
    if (!(extent > 0.0 && extent < 1.0)) throw Error(ErrorCode::InvalidArgument, "--extent must lie in (0, 1)");
    const auto [nu, nv] = parse_resolution(res);
    const Interval d = curve.domain();
    const double r = curve.strip_radius();
    double u0 = d.a, u1 = d.b, v0 = -extent * r, v1 = extent * r;
    if (side == ExtensionSide::Timelike) {
        u0 = d.a + v1;
        u1 = d.b - v1;
    } else if (side == ExtensionSide::Unified) {
        v0 = -extent * r * r;
        v1 = extent * r * r;
        u0 = d.a + std::sqrt(v1);
        u1 = d.b - std::sqrt(v1);
    }
    if (!(u1 > u0)) throw Error(ErrorCode::InvalidArgument, "curve domain too short for the requested extent");
    const ExtensionSurface surf(curve, side);
    SampleGrid g = sample_grid([&](double u, double v) { return surf(u, v); }, u0, u1, v0, v1, nu, nv);
    auto& causal = g.scalar("causal");
    auto& wv = g.scalar(side == ExtensionSide::Unified ? "w" : "v");
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nv; ++j) {
            const double v = g.v_at(j);
            const std::size_t k = g.index(i, j);
            wv.values[k] = v;
            // +1 space-like, -1 time-like, 0 on the null curve (singular).
            double c = side == ExtensionSide::Maximal ? 1.0 : side == ExtensionSide::Timelike ? -1.0 : (v < 0.0 ? 1.0 : -1.0);
            if (v == 0.0) c = 0.0;
            causal.values[k] = c;
        }
    }
    MarkedPolyline line{"null_curve", {}};
    for (int i = 0; i < nu; ++i) line.points.push_back(curve.point(g.u_at(i)));
    g.polylines.push_back(std::move(line));
    std::cout << "bjorling " << to_string(side) << ": " << nu << 'x' << nv << " samples over u in ["
              << format_double(u0) << ", " << format_double(u1) << "], " << (side == ExtensionSide::Unified ? "w" : "v")
              << " in [" << format_double(v0) << ", " << format_double(v1) << "]"
              << (curve.nondegenerate() ? "" : " (curve is degenerate)") << '\n';
    if (out.empty()) return 0;
    write_grid_file(g, out, {"obj", "ply", "csv", "json", "vtk"});
    Sidecar meta;
    meta.text("curve", curve_path);
    meta.text("side", to_string(side));
    meta.integer("nu", nu);
    meta.integer("nv", nv);
    meta.number("u0", u0);
    meta.number("u1", u1);
    meta.number("v0", v0);
    meta.number("v1", v1);
    meta.number("strip_radius", r);
    meta.boolean("nondegenerate", curve.nondegenerate());
    meta.write(sidecar_path(out));
    return 0;
}

inline GraphFunction graph_from_arg(const std::string& arg)
{
    const std::string prefix = "builtin:";
    if (arg.rfind(prefix, 0) == 0) return builtin_graph(arg.substr(prefix.size()));
    return parse_graph(load_json_file(arg));
}

inline int typechange_cmd(const std::string& graph_arg, const std::string& seed_arg, const std::string& out,
                          double step, int max_points)
{
    const GraphFunction f = graph_from_arg(graph_arg);
    const auto seed = parse_numbers(seed_arg, 2, "--seed");
    const Polyline line = trace_typechange_curve(f, {seed[0], seed[1]}, step, max_points);
    std::cout << "traced " << line.points.size() << " points" << (line.closed ? " (closed)" : "") << '\n';
    if (out.empty()) return 0;
    std::ofstream os = open_output(out);
    os << "x,y,B,grad_B_norm\n";
    for (const auto& p : line.points) {
        os << format_double(p.x) << ',' << format_double(p.y) << ',' << format_double(p.B) << ','
           << format_double(p.grad_B_norm) << '\n';
    }
    finish(os, out);
    return 0;
}

inline int fluid_field_cmd(const std::vector<std::string>& stream, const std::string& rect_arg, const std::string& res,
                           const std::string& out, double rho0, double half_width)
{
    if (stream.empty() || stream.size() > 2) {
        throw Error(ErrorCode::InvalidArgument, "--stream takes builtin:<name> or from-curve <file>");
    }
    std::string kind = stream[0], arg = stream.size() == 2 ? stream[1] : std::string();
    if (const auto colon = kind.find(':'); colon != std::string::npos && arg.empty()) {
        arg = kind.substr(colon + 1);
        kind = kind.substr(0, colon);
    }
    if (kind == "builtin" && arg.empty()) arg = "helicoid";
    const VirtualGas gas{rho0, 1.0};
    std::optional<GraphFunction> psi;
    std::vector<std::array<double, 2>> sonic;
    if (kind == "builtin") {
        psi = builtin_graph(arg);
    } else if (kind == "from-curve") {
        const PlanarCurve sigma = parse_planar_curve(load_json_file(arg));
        TransonicFlow flow = transonic_flow_from_convex_curve(sigma, gas, half_width, 21);
        psi = flow.psi;
        sonic = flow.sonic_line;
    } else {
        throw Error(ErrorCode::InvalidArgument, "--stream takes builtin:<name> or from-curve <file>");
    }
    const auto rect = parse_numbers(rect_arg, 4, "--rect");
    const auto [nx, ny] = parse_resolution(res);
    const std::string ext = file_extension(out);
    if (!out.empty() && ext != "csv" && ext != "vtk") {
        throw Error(ErrorCode::InvalidArgument, "fluid field output must be .csv or .vtk");
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<FlowState> states(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
    std::vector<char> valid(states.size(), 0);
    auto xs = [&](int i) { return rect[0] + (rect[2] - rect[0]) * i / (nx - 1); };
    auto ys = [&](int j) { return rect[1] + (rect[3] - rect[1]) * j / (ny - 1); };
    parallel_rows(nx, [&](int i) {
        for (int j = 0; j < ny; ++j) {
            const std::size_t k = static_cast<std::size_t>(i) * static_cast<std::size_t>(ny) + static_cast<std::size_t>(j);
            try {
                states[k] = flow_state(*psi, gas, xs(i), ys(j));
                valid[k] = 1;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::InversionFailed) throw;
            }
        }
    });
    int counts[4] = {0, 0, 0, 0};
    for (std::size_t k = 0; k < states.size(); ++k) counts[valid[k] ? static_cast<int>(states[k].regime) : 3]++;
    std::cout << "fluid field " << nx << 'x' << ny << ": " << counts[0] << " subsonic, " << counts[1] << " supersonic, "
              << counts[2] << " sonic, " << counts[3] << " outside\n";
    if (out.empty()) return 0;
    std::ofstream os = open_output(out);
    if (ext == "csv") {
        os << "x,y,psi,rho,u,v,q,B,regime\n";
        for (int i = 0; i < nx; ++i) {
            for (int j = 0; j < ny; ++j) {
                const std::size_t k = static_cast<std::size_t>(i) * static_cast<std::size_t>(ny) + static_cast<std::size_t>(j);
                const FlowState& s = states[k];
                const bool ok = valid[k] != 0;
                os << format_double(xs(i)) << ',' << format_double(ys(j)) << ',' << format_double(ok ? s.psi : nan)
                   << ',' << format_double(ok ? s.rho : nan) << ',' << format_double(ok ? s.velocity[0] : nan) << ','
                   << format_double(ok ? s.velocity[1] : nan) << ',' << format_double(ok ? s.q : nan) << ','
                   << format_double(ok ? s.B : nan) << ',' << (ok ? to_string(s.regime) : "outside") << '\n';
            }
        }
    } else {
        // Structured grid over (x, y) with psi as height; regime coded 0/1/2, -1 outside.
        SampleGrid g;
        g.nu = nx;
        g.nv = ny;
        g.u0 = rect[0];
        g.u1 = rect[2];
        g.v0 = rect[1];
        g.v1 = rect[3];
        g.vertices.resize(states.size());
        std::vector<double> rho(states.size()), u(states.size()), v(states.size()), q(states.size()),
            b(states.size()), regime(states.size());
        for (int i = 0; i < nx; ++i) {
            for (int j = 0; j < ny; ++j) {
                const std::size_t k = g.index(i, j);
                const FlowState& s = states[k];
                const bool ok = valid[k] != 0;
                g.vertices[k] = {ok ? s.psi : nan, xs(i), ys(j)};
                rho[k] = ok ? s.rho : nan;
                u[k] = ok ? s.velocity[0] : nan;
                v[k] = ok ? s.velocity[1] : nan;
                q[k] = ok ? s.q : nan;
                b[k] = ok ? s.B : nan;
                regime[k] = ok ? static_cast<double>(static_cast<int>(s.regime)) : -1.0;
            }
        }
        g.scalar("rho").values = rho;
        g.scalar("u").values = u;
        g.scalar("v").values = v;
        g.scalar("q").values = q;
        g.scalar("B").values = b;
        g.scalar("regime").values = regime;
        write_vtk(os, g, "zmc-forge fluid field");
    }
    finish(os, out);
    return 0;
}

inline int verify_cmd(const std::string& suite, std::optional<double> tol, const std::string& report_path)
{
    VerifyOptions opt;
    opt.identity_tol = tol;
    const SuiteReport r = run_suite(suite, opt);
    int failed = 0;
    for (const auto& c : r.checks) {
        if (!c.pass) {
            ++failed;
            std::cout << "FAIL " << c.name << "  max_residual " << format_double(c.max_residual) << " > tol "
                      << format_double(c.tol) << (c.error.empty() ? "" : "  (" + c.error + ")") << '\n';
        }
    }
    std::cout << "verify " << suite << ": " << r.checks.size() - static_cast<std::size_t>(failed) << '/' << r.checks.size()
              << " checks passed\n";
    if (!report_path.empty()) {
        std::ofstream os = open_output(report_path);
        write_report(os, r);
        finish(os, report_path);
    }
    return failed == 0 ? 0 : 1;
}

} // namespace cli

inline int cli_main(int argc, char** argv)
{
    CLI::App app{"zmc-forge: zero mean curvature surfaces in Lorentz-Minkowski 3-space"};
    app.require_subcommand(1);

    auto* catalog = app.add_subcommand("catalog", "Catalog surfaces");
    catalog->require_subcommand(1);
    catalog->add_subcommand("list", "List catalog surfaces and charts");
    auto* sample = catalog->add_subcommand("sample", "Sample a catalog chart");
    std::string name, chart, res = "64x64", out;
    sample->add_option("name", name, "Surface name")->required();
    sample->add_option("--chart", chart, "Chart name (default: first chart)");
    sample->add_option("--res", res, "Resolution NxM");
    sample->add_option("--out", out, "Output file (.obj .ply .csv .json .vtk)");

    auto* bj = app.add_subcommand("bjorling", "Singular Bjorling extension of a null curve");
    std::string curve_path, side = "unified", bj_res = "64x64", bj_out;
    double extent = 0.9;
    bj->add_option("--curve", curve_path, "Curve descriptor JSON")->required();
    bj->add_option("--side", side, "max, timelike or unified");
    bj->add_option("--res", bj_res, "Resolution NxM");
    bj->add_option("--out", bj_out, "Output file (.obj .ply .csv .json .vtk)");
    bj->add_option("--extent", extent, "Fraction of the strip to sample (0, 1)");

    auto* tc = app.add_subcommand("typechange", "Trace the type-change curve B = 0 of a graph");
    std::string graph_arg, seed, tc_out;
    double step = 1e-3;
    int max_points = 100000;
    tc->add_option("--graph", graph_arg, "builtin:<name> or graph descriptor JSON")->required();
    tc->add_option("--seed", seed, "Seed point X,Y")->required();
    tc->add_option("--out", tc_out, "Polyline CSV");
    tc->add_option("--step", step, "Arclength step");
    tc->add_option("--max-points", max_points, "Point budget");

    auto* fluid = app.add_subcommand("fluid", "Flow fields of the virtual gas");
    fluid->require_subcommand(1);
    auto* field = fluid->add_subcommand("field", "Sample a stream function and its flow");
    std::vector<std::string> stream;
    std::string rect, fl_res = "64x64", fl_out;
    double rho0 = 1.0, half_width = 0.3;
    field->add_option("--stream", stream, "builtin:<name> or from-curve <planar.json>")->required()->expected(1, 2);
    field->add_option("--rect", rect, "x0,y0,x1,y1")->required();
    field->add_option("--res", fl_res, "Resolution NxM");
    field->add_option("--out", fl_out, "Output file (.csv or .vtk)");
    field->add_option("--rho0", rho0, "Stagnation density");
    field->add_option("--half-width", half_width, "Parameter half width around the curve for from-curve flows");

    auto* verify = app.add_subcommand("verify", "Run verification suites");
    std::string suite = "all", report;
    std::optional<double> tol;
    verify->add_option("--suite", suite, "catalog, weierstrass, fluid, roundtrip or all");
    verify->add_option("--tol", tol, "Tolerance for identity checks");
    verify->add_option("--report", report, "JSON report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        if (catalog->parsed()) {
            if (catalog->got_subcommand("list")) return cli::catalog_list_cmd();
            return cli::catalog_sample_cmd(name, chart, res, out);
        }
        if (bj->parsed()) return cli::bjorling_cmd(curve_path, side, bj_res, bj_out, extent);
        if (tc->parsed()) return cli::typechange_cmd(graph_arg, seed, tc_out, step, max_points);
        if (field->parsed()) return cli::fluid_field_cmd(stream, rect, fl_res, fl_out, rho0, half_width);
        if (verify->parsed()) return cli::verify_cmd(suite, tol, report);
    } catch (const std::exception& e) {
        std::cerr << "zmc-forge: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

} // namespace zmc
