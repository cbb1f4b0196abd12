#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <zmc/io.hpp>

using namespace zmc;

namespace {

SampleGrid small_grid()
{
    SampleGrid g = sample_grid([](double u, double v) { return LorentzVec3{u * v, std::sin(u), std::cos(v) / 3}; },
                               0.0, 1.0, -1.0, 1.0, 3, 4);
    auto& s = g.scalar("w");
    for (std::size_t k = 0; k < s.values.size(); ++k) s.values[k] = 0.1 * static_cast<double>(k);
    g.polylines.push_back({"curve", {{0, 1, 2}, {3, 4, 5}}});
    return g;
}

std::vector<std::string> lines(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

} // namespace

TEST(Io, FormatDoubleRoundTripsExactly)
{
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, std::nextafter(1.0, 2.0)}) {
        EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
    }
    EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
    EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
    EXPECT_EQ(json_number(std::numeric_limits<double>::infinity()), "null");
    EXPECT_EQ(json_string("a\"b\\c\n"), "\"a\\\"b\\\\c\\n\"");
}

TEST(Io, ObjAndPlyLayouts)
{
    const SampleGrid g = small_grid();
    std::ostringstream obj, ply;
    write_obj(obj, g);
    write_ply(ply, g);
    const auto o = lines(obj.str());
    int v = 0, f = 0;
    for (const auto& l : o) {
        v += l.rfind("v ", 0) == 0;
        f += l.rfind("f ", 0) == 0;
    }
    EXPECT_EQ(v, 12);
    EXPECT_EQ(f, 6);
    EXPECT_EQ(o.back(), "f 7 11 12 8");
    const std::string p = ply.str();
    EXPECT_NE(p.find("element vertex 12\n"), std::string::npos);
    EXPECT_NE(p.find("element face 6\n"), std::string::npos);
    EXPECT_NE(p.find("property double w\n"), std::string::npos);
    EXPECT_EQ(lines(p).back(), "4 6 10 11 7");
}

TEST(Io, CsvRoundTripIsBitExact)
{
    const SampleGrid g = small_grid();
    std::ostringstream os;
    write_csv(os, g);
    const auto rows = lines(os.str());
    ASSERT_EQ(rows.size(), 13u);
    EXPECT_EQ(rows[0], "u,v,t,x,y,w");
    for (int i = 0; i < g.nu; ++i) {
        for (int j = 0; j < g.nv; ++j) {
            const std::size_t k = g.index(i, j);
            std::istringstream in(rows[k + 1]);
            std::vector<double> vals;
            for (std::string cell; std::getline(in, cell, ',');) vals.push_back(std::strtod(cell.c_str(), nullptr));
            ASSERT_EQ(vals.size(), 6u);
            EXPECT_EQ(vals[0], g.u_at(i));
            EXPECT_EQ(vals[1], g.v_at(j));
            EXPECT_EQ(vals[2], g.vertices[k].t);
            EXPECT_EQ(vals[3], g.vertices[k].x);
            EXPECT_EQ(vals[4], g.vertices[k].y);
            EXPECT_EQ(vals[5], g.scalars[0].values[k]);
        }
    }
}

TEST(Io, JsonIsValidAndComplete)
{
    SampleGrid g = small_grid();
    g.scalars[0].values[2] = std::numeric_limits<double>::quiet_NaN();
    std::ostringstream os;
    write_json(os, g);
    const auto j = nlohmann::json::parse(os.str());
    EXPECT_EQ(j["nu"], 3);
    EXPECT_EQ(j["nv"], 4);
    EXPECT_EQ(j["vertices"].size(), 12u);
    EXPECT_EQ(j["vertices"][5][0].get<double>(), g.vertices[5].t);
    EXPECT_TRUE(j["scalars"]["w"][2].is_null());
    EXPECT_EQ(j["polylines"]["curve"][1][2], 5.0);
}

TEST(Io, VtkHeader)
{
    const SampleGrid g = small_grid();
    std::ostringstream os;
    write_vtk(os, g);
    const auto l = lines(os.str());
    EXPECT_EQ(l[0], "# vtk DataFile Version 3.0");
    EXPECT_EQ(l[3], "DATASET STRUCTURED_GRID");
    EXPECT_EQ(l[4], "DIMENSIONS 4 3 1");
    EXPECT_EQ(l[5], "POINTS 12 double");
    EXPECT_NE(os.str().find("SCALARS w double 1\nLOOKUP_TABLE default\n"), std::string::npos);
}

TEST(Io, WriteGridDispatchAndErrors)
{
    EXPECT_EQ(file_extension("a/b.c/surf.PLY"), "ply");
    EXPECT_EQ(file_extension("noext"), "");
    std::ostringstream os;
    EXPECT_THROW(write_grid(os, small_grid(), "stl"), Error);
    SampleGrid bad = small_grid();
    bad.vertices.pop_back();
    EXPECT_THROW(write_obj(os, bad), Error);
    EXPECT_THROW(sample_grid([](double, double) { return LorentzVec3{}; }, 0, 1, 0, 1, 1, 5), Error);
}

TEST(Io, OutputIndependentOfThreadCount)
{
    auto render = [] {
        const SampleGrid g = sample_grid(
            [](double u, double v) { return LorentzVec3{std::sinh(u) * v, std::cos(u + v), std::exp(-u * v)}; }, -1, 1,
            -2, 2, 57, 31);
        std::ostringstream os;
        write_ply(os, g);
        return os.str();
    };
    setenv("ZMC_THREADS", "1", 1);
    EXPECT_EQ(thread_count(), 1);
    const std::string one = render();
    setenv("ZMC_THREADS", "4", 1);
    EXPECT_EQ(thread_count(), 4);
    const std::string four = render();
    unsetenv("ZMC_THREADS");
    EXPECT_EQ(one, four);
}

TEST(Io, ParallelRowsRethrowsLowestFailingRow)
{
    setenv("ZMC_THREADS", "3", 1);
    try {
        parallel_rows(20, [](int r) {
            if (r == 7 || r == 11) throw Error(ErrorCode::InvalidArgument, "row " + std::to_string(r));
        });
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("row 7"), std::string::npos);
    }
    unsetenv("ZMC_THREADS");
}
