#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "error.hpp"
#include "lorentz.hpp"

namespace zmc {

/// 17 significant digits; "nan", "inf", "-inf" for non-finite values.
inline std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// JSON number: like format_double, with null for non-finite values.
inline std::string json_number(double v) { return std::isfinite(v) ? format_double(v) : "null"; }

inline std::string json_string(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out + "\"";
}

// ---------------------------------------------------------------------------
// Parallel row loops.

/// Worker count: ZMC_THREADS if set (>= 1), else the hardware concurrency.
inline int thread_count()
{
    if (const char* env = std::getenv("ZMC_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs body(row) for row in [0, rows). Rows are interleaved across workers;
/// results must go to per-row slots. If rows throw, the lowest failing row's
/// exception is rethrown, so failures are reproducible.
inline void parallel_rows(int rows, const std::function<void(int)>& body)
{
    const int workers = std::max(1, std::min(thread_count(), rows));
    if (workers == 1) {
        for (int r = 0; r < rows; ++r) body(r);
        return;
    }
    std::mutex m;
    int failed_row = rows;
    std::exception_ptr failure;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int r = w; r < rows; r += workers) {
                try {
                    body(r);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(m);
                    if (r < failed_row) {
                        failed_row = r;
                        failure = std::current_exception();
                    }
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

// ---------------------------------------------------------------------------
// Structured sample grids and their exporters.

struct ScalarField {
    std::string name;
    std::vector<double> values;
};

struct MarkedPolyline {
    std::string name;
    std::vector<LorentzVec3> points;
};

/// nu x nv vertices over a parameter rectangle, row-major in u.
struct SampleGrid {
    int nu = 0;
    int nv = 0;
    double u0 = 0.0;
    double u1 = 1.0;
    double v0 = 0.0;
    double v1 = 1.0;
    std::vector<LorentzVec3> vertices;
    std::vector<ScalarField> scalars;
    std::vector<MarkedPolyline> polylines;

    [[nodiscard]] double u_at(int i) const { return nu == 1 ? u0 : u0 + (u1 - u0) * i / (nu - 1); }
    [[nodiscard]] double v_at(int j) const { return nv == 1 ? v0 : v0 + (v1 - v0) * j / (nv - 1); }
    [[nodiscard]] std::size_t index(int i, int j) const
    {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(nv) + static_cast<std::size_t>(j);
    }

    ScalarField& scalar(const std::string& name)
    {
        for (auto& s : scalars) {
            if (s.name == name) return s;
        }
        scalars.push_back({name, std::vector<double>(vertices.size(), 0.0)});
        return scalars.back();
    }

    void check() const
    {
        if (vertices.size() != static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv)) {
            throw Error(ErrorCode::InvalidArgument, "vertex count differs from nu * nv");
        }
        for (const auto& s : scalars) {
            if (s.values.size() != vertices.size()) {
                throw Error(ErrorCode::InvalidArgument, "scalar '" + s.name + "' has the wrong length");
            }
        }
    }
};

/// Samples map(u, v) on the grid, one row of constant u per task.
inline SampleGrid sample_grid(const std::function<LorentzVec3(double, double)>& map, double u0, double u1, double v0,
                              double v1, int nu, int nv)
{
    if (nu < 2 || nv < 2) throw Error(ErrorCode::InvalidArgument, "grid resolution must be at least 2x2");
    SampleGrid g;
    g.nu = nu;
    g.nv = nv;
    g.u0 = u0;
    g.u1 = u1;
    g.v0 = v0;
    g.v1 = v1;
    g.vertices.resize(static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv));
    parallel_rows(nu, [&](int i) {
        for (int j = 0; j < nv; ++j) g.vertices[g.index(i, j)] = map(g.u_at(i), g.v_at(j));
    });
    return g;
}

/// OBJ vertices are (x, y, t): time is the height axis. Quads, no normals.
inline void write_obj(std::ostream& os, const SampleGrid& g)
{
    g.check();
    os << "# zmc-forge structured grid " << g.nu << "x" << g.nv << "\n";
    for (const auto& p : g.vertices) {
        os << "v " << format_double(p.x) << ' ' << format_double(p.y) << ' ' << format_double(p.t) << '\n';
    }
    for (int i = 0; i + 1 < g.nu; ++i) {
        for (int j = 0; j + 1 < g.nv; ++j) {
            os << "f " << g.index(i, j) + 1 << ' ' << g.index(i + 1, j) + 1 << ' ' << g.index(i + 1, j + 1) + 1 << ' '
               << g.index(i, j + 1) + 1 << '\n';
        }
    }
}

inline void write_ply(std::ostream& os, const SampleGrid& g)
{
    g.check();
    const std::size_t faces = static_cast<std::size_t>(g.nu - 1) * static_cast<std::size_t>(g.nv - 1);
    os << "ply\nformat ascii 1.0\ncomment zmc-forge structured grid\n";
    os << "element vertex " << g.vertices.size() << "\n";
    os << "property double x\nproperty double y\nproperty double z\n";
    for (const auto& s : g.scalars) os << "property double " << s.name << "\n";
    os << "element face " << faces << "\nproperty list uchar int vertex_indices\nend_header\n";
    for (std::size_t k = 0; k < g.vertices.size(); ++k) {
        const auto& p = g.vertices[k];
        os << format_double(p.x) << ' ' << format_double(p.y) << ' ' << format_double(p.t);
        for (const auto& s : g.scalars) os << ' ' << format_double(s.values[k]);
        os << '\n';
    }
    for (int i = 0; i + 1 < g.nu; ++i) {
        for (int j = 0; j + 1 < g.nv; ++j) {
            os << "4 " << g.index(i, j) << ' ' << g.index(i + 1, j) << ' ' << g.index(i + 1, j + 1) << ' '
               << g.index(i, j + 1) << '\n';
        }
    }
}

inline void write_csv(std::ostream& os, const SampleGrid& g)
{
    g.check();
    os << "u,v,t,x,y";
    for (const auto& s : g.scalars) os << ',' << s.name;
    os << '\n';
    for (int i = 0; i < g.nu; ++i) {
        for (int j = 0; j < g.nv; ++j) {
            const std::size_t k = g.index(i, j);
            const auto& p = g.vertices[k];
            os << format_double(g.u_at(i)) << ',' << format_double(g.v_at(j)) << ',' << format_double(p.t) << ','
               << format_double(p.x) << ',' << format_double(p.y);
            for (const auto& s : g.scalars) os << ',' << format_double(s.values[k]);
            os << '\n';
        }
    }
}

inline void write_json(std::ostream& os, const SampleGrid& g)
{
    g.check();
    os << "{\n  \"nu\": " << g.nu << ",\n  \"nv\": " << g.nv << ",\n";
    os << "  \"u_range\": [" << json_number(g.u0) << ", " << json_number(g.u1) << "],\n";
    os << "  \"v_range\": [" << json_number(g.v0) << ", " << json_number(g.v1) << "],\n";
    os << "  \"vertices\": [";
    for (std::size_t k = 0; k < g.vertices.size(); ++k) {
        const auto& p = g.vertices[k];
        os << (k ? ", " : "") << '[' << json_number(p.t) << ", " << json_number(p.x) << ", " << json_number(p.y) << ']';
    }
    os << "],\n  \"scalars\": {";
    for (std::size_t s = 0; s < g.scalars.size(); ++s) {
        os << (s ? ", " : "") << json_string(g.scalars[s].name) << ": [";
        const auto& vals = g.scalars[s].values;
        for (std::size_t k = 0; k < vals.size(); ++k) os << (k ? ", " : "") << json_number(vals[k]);
        os << ']';
    }
    os << "},\n  \"polylines\": {";
    for (std::size_t s = 0; s < g.polylines.size(); ++s) {
        os << (s ? ", " : "") << json_string(g.polylines[s].name) << ": [";
        const auto& pts = g.polylines[s].points;
        for (std::size_t k = 0; k < pts.size(); ++k) {
            os << (k ? ", " : "") << '[' << json_number(pts[k].t) << ", " << json_number(pts[k].x) << ", "
               << json_number(pts[k].y) << ']';
        }
        os << ']';
    }
    os << "}\n}\n";
}

/// Legacy VTK structured grid; points are (x, y, t).
inline void write_vtk(std::ostream& os, const SampleGrid& g, const std::string& title = "zmc-forge")
{
    g.check();
    os << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET STRUCTURED_GRID\n";
    // VTK's fastest index is the first dimension: emit points with v varying fastest.
    os << "DIMENSIONS " << g.nv << ' ' << g.nu << " 1\n";
    os << "POINTS " << g.vertices.size() << " double\n";
    for (const auto& p : g.vertices) {
        os << format_double(p.x) << ' ' << format_double(p.y) << ' ' << format_double(p.t) << '\n';
    }
    if (!g.scalars.empty()) {
        os << "POINT_DATA " << g.vertices.size() << '\n';
        for (const auto& s : g.scalars) {
            os << "SCALARS " << s.name << " double 1\nLOOKUP_TABLE default\n";
            for (double v : s.values) os << format_double(v) << '\n';
        }
    }
}

/// Export by file extension: .obj, .ply, .csv, .json or .vtk.
inline std::string file_extension(const std::string& path)
{
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return {};
    std::string ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

inline void write_grid(std::ostream& os, const SampleGrid& g, const std::string& ext)
{
    if (ext == "obj") {
        write_obj(os, g);
    } else if (ext == "ply") {
        write_ply(os, g);
    } else if (ext == "csv") {
        write_csv(os, g);
    } else if (ext == "json") {
        write_json(os, g);
    } else if (ext == "vtk") {
        write_vtk(os, g);
    } else {
        throw Error(ErrorCode::InvalidArgument, "unsupported output format '" + ext + "'");
    }
}

} // namespace zmc
