#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code = -1;
    std::string out;
};

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() /
               ("zmc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    [[nodiscard]] std::string path(const std::string& name) const { return (dir_ / name).string(); }

    Result run(const std::string& args) const
    {
        const std::string log = path("stdout.txt");
        const std::string cmd = std::string("\"") + ZMC_FORGE_PATH + "\" " + args + " > \"" + log + "\" 2>&1";
        const int status = std::system(cmd.c_str());
        Result r;
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.out = slurp(log);
        return r;
    }

    static std::string slurp(const std::string& p)
    {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    static std::string sample(const std::string& name) { return std::string(ZMC_SAMPLES_DIR) + "/" + name; }

    fs::path dir_;
};

} // namespace

TEST_F(Cli, UsageErrorsExitTwo)
{
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("no-such-command").code, 2);
    EXPECT_EQ(run("catalog sample no_such_surface").code, 2);
    EXPECT_EQ(run("catalog sample C_zero --res 64by64").code, 2);
    EXPECT_EQ(run("bjorling --curve " + path("missing.json") + " --side max").code, 2);
    EXPECT_EQ(run("verify --suite nonsense").code, 2);
    EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, CatalogListNamesAllSurfaces)
{
    const Result r = run("catalog list");
    ASSERT_EQ(r.code, 0) << r.out;
    for (const char* name : {"C_plus", "C_minus", "S_plus", "S_minus", "C_zero", "S_zero", "helicoid",
                             "elliptic_catenoid_spacelike", "elliptic_catenoid_timelike", "parabolic_completion_plus",
                             "parabolic_completion_minus", "parabolic_helicoid"}) {
        EXPECT_NE(r.out.find(name), std::string::npos) << name;
    }
}

TEST_F(Cli, CatalogSampleWritesMeshAndSidecar)
{
    const Result r = run("catalog sample helicoid --res 16x12 --out " + path("h.ply"));
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(Cli::slurp(path("h.ply")).find("element vertex 192\n"), std::string::npos);
    const auto meta = nlohmann::json::parse(Cli::slurp(path("h.meta.json")));
    EXPECT_EQ(meta["surface"], "helicoid");
    EXPECT_EQ(meta["nu"], 16);
    EXPECT_LE(meta["max_implicit_residual"].get<double>(), 1e-10);
    EXPECT_LE(meta["max_zmc_residual"].get<double>(), 1e-10);
    EXPECT_EQ(run("catalog sample helicoid --out " + path("h.stl")).code, 2);
}

TEST_F(Cli, BjorlingUnifiedCircleIsHelicoid)
{
    const Result r = run("bjorling --curve " + sample("circle.json") + " --side unified --res 40x21 --out " + path("u.json"));
    ASSERT_EQ(r.code, 0) << r.out;
    const auto j = nlohmann::json::parse(Cli::slurp(path("u.json")));
    const auto& verts = j["vertices"];
    const auto& w = j["scalars"]["w"];
    const auto& causal = j["scalars"]["causal"];
    ASSERT_EQ(verts.size(), 40u * 21u);
    double worst = 0.0;
    int spacelike = 0;
    for (std::size_t k = 0; k < verts.size(); ++k) {
        const double t = verts[k][0], x = verts[k][1], y = verts[k][2];
        worst = std::max(worst, std::abs(x * std::sin(t) - y * std::cos(t)));
        if (w[k].get<double>() < 0) {
            ++spacelike;
            EXPECT_EQ(causal[k].get<double>(), 1.0);
        }
    }
    EXPECT_EQ(spacelike, 40 * 10);
    EXPECT_LE(worst, 1e-9);
    EXPECT_EQ(j["polylines"]["null_curve"].size(), 40u);
    EXPECT_EQ(run("bjorling --curve " + sample("circle.json") + " --side sideways").code, 2);
}

TEST_F(Cli, BjorlingAcceptsEveryDescriptorKind)
{
    for (const char* f : {"helix_expression.json", "alpha_taylor.json"}) {
        for (const char* side : {"max", "timelike"}) {
            const Result r = run(std::string("bjorling --curve ") + sample(f) + " --side " + side + " --res 8x8 --out " +
                              path("b.obj"));
            EXPECT_EQ(r.code, 0) << f << ' ' << side << ": " << r.out;
        }
    }
}

TEST_F(Cli, TypechangeTracesHelicoidSonicArc)
{
    const Result r = run("typechange --graph builtin:helicoid --seed 1,0 --out " + path("tc.csv") + " --step 1e-2");
    ASSERT_EQ(r.code, 0) << r.out;
    // The builtin chart stops at x = 0.2, so the sonic circle is an open arc.
    EXPECT_EQ(r.out.find("(closed)"), std::string::npos) << r.out;
    std::istringstream in(Cli::slurp(path("tc.csv")));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "x,y,B,grad_B_norm");
    int n = 0;
    while (std::getline(in, line)) {
        double x = 0, y = 0;
        ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf", &x, &y), 2);
        EXPECT_NEAR(std::hypot(x, y), 1.0, 1e-8);
        ++n;
    }
    EXPECT_NEAR(n, 2.0 * std::acos(0.2) / 1e-2, 3.0);
    EXPECT_EQ(run("typechange --graph " + sample("c_zero_graph.json") + " --seed 0,1").code, 0);
}

TEST_F(Cli, FluidFieldFormats)
{
    Result r = run("fluid field --stream builtin:helicoid --rect 0.5,-1,2,1 --res 9x7 --out " + path("f.csv"));
    ASSERT_EQ(r.code, 0) << r.out;
    const std::string csv = Cli::slurp(path("f.csv"));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "x,y,psi,rho,u,v,q,B,regime");
    EXPECT_NE(csv.find("supersonic"), std::string::npos);
    EXPECT_NE(csv.find(",subsonic"), std::string::npos);
    r = run("fluid field --stream builtin helicoid --rect 0.5,-1,2,1 --res 9x7 --out " + path("f.vtk"));
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(Cli::slurp(path("f.vtk")).find("SCALARS regime double 1"), std::string::npos);
    r = run("fluid field --stream from-curve " + sample("unit_circle.json") + " --rect -1.003,-0.002,-0.997,0.002 --res 5x5");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(run("fluid field --stream builtin:helicoid --rect 0,1 --res 9x7").code, 2);
    EXPECT_EQ(run("fluid field --stream builtin:helicoid --rect 0.5,-1,2,1 --out " + path("f.obj")).code, 2);
}

TEST_F(Cli, VerifyReportIsDeterministic)
{
    Result a = run("verify --suite catalog --report " + path("a.json"));
    ASSERT_EQ(a.code, 0) << a.out;
    Result b = run("verify --suite catalog --report " + path("b.json"));
    ASSERT_EQ(b.code, 0) << b.out;
    EXPECT_EQ(Cli::slurp(path("a.json")), Cli::slurp(path("b.json")));
    const auto j = nlohmann::json::parse(Cli::slurp(path("a.json")));
    EXPECT_EQ(j["suite"], "catalog");
    EXPECT_TRUE(j["pass"].get<bool>());
    // An absurd identity tolerance turns identity checks red: exit 1, report still written.
    const Result c = run("verify --suite catalog --tol 1e-30 --report " + path("c.json"));
    EXPECT_EQ(c.code, 1) << c.out;
    EXPECT_NE(c.out.find("FAIL"), std::string::npos);
    EXPECT_FALSE(nlohmann::json::parse(Cli::slurp(path("c.json")))["pass"].get<bool>());
}
