// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <zmc/zmc.hpp>

using namespace zmc;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double grid_max(const Rect& r, int n, const std::function<double(double, double)>& f)
{
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double v = f(r.x0 + r.width() * i / (n - 1), r.y0 + r.height() * j / (n - 1));
            worst = std::max(worst, std::isfinite(v) ? std::abs(v) : INFINITY);
        }
    }
    return worst;
}

/// Pass iff every check whose name starts with one of the prefixes passes.
Outcome from_suite(const SuiteReport& r, std::initializer_list<const char*> prefixes)
{
    Outcome o{true, {}};
    int n = 0;
    for (const auto& c : r.checks) {
        bool match = false;
        for (const char* p : prefixes) match = match || c.name.rfind(p, 0) == 0;
        if (!match) continue;
        ++n;
        if (!c.pass) {
            o.pass = false;
            o.detail += " " + c.name + "=" + fmt(c.max_residual) + ">" + fmt(c.tol);
        }
    }
    if (n == 0) return {false, " no matching checks"};
    o.detail = std::to_string(n) + " checks" + (o.detail.empty() ? " within tolerance" : ";" + o.detail);
    return o;
}

Outcome pde_residuals()
{
    struct Case {
        const char* name;
        GraphFunction g;
    };
    const std::vector<Case> cases{{"C_zero", c_zero_graph()}, {"S_zero", s_zero_graph()}, {"helicoid", helicoid_graph()}};
    bool ok = true;
    std::string d;
    for (const auto& c : cases) {
        const Rect r = c.g.domain();
        const double analytic = grid_max(r, 101, [&](double x, double y) { return zmc_residual(c.g, x, y); });
        const GraphFunction fd = c.g.as_finite_difference();
        const double fd_res = grid_max(r, 101, [&](double x, double y) { return zmc_residual(fd, x, y); });
        // Plain central differences: the residual should drop 4x when h halves.
        const GraphFunction c1 = c.g.as_finite_difference(2e-3, 0), c2 = c.g.as_finite_difference(1e-3, 0);
        const double e1 = grid_max(r, 21, [&](double x, double y) { return zmc_residual(c1, x, y); });
        const double e2 = grid_max(r, 21, [&](double x, double y) { return zmc_residual(c2, x, y); });
        const double order = std::log2(e1 / e2);
        ok = ok && analytic <= 1e-12 && fd_res <= 1e-6 && std::abs(order - 2.0) <= 0.2;
        d += std::string(c.name) + " analytic " + fmt(analytic) + " fd " + fmt(fd_res) + " order " + fmt(order) + "; ";
    }
    return {ok, d};
}

Outcome criteria_agreement()
{
    int total = 0, agree = 0, nondeg = 0;
    const ClassifyTolerances tol{1e-10, 1e-8};
    auto tally = [&](const GraphJet& j, bool expect_nondegenerate) {
        ++total;
        try {
            const TypeChangePoint p = classify_point(j, 0, 0, tol);
            if (p.on_curve && p.nondegenerate == expect_nondegenerate) ++agree;
            nondeg += p.nondegenerate;
        } catch (const Error&) {
        }
    };
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    // Synthetic jets on B = 0: grad f = e unit, H = a (e n + n e) + c n n, det H = -a^2.
    for (int k = 0; k < 5000; ++k) {
        const double phi = 2 * std::numbers::pi * uni(rng);
        const double a = uni(rng) < 0.3 ? 0.0 : std::pow(10.0, -6.0 + 7.0 * uni(rng)) * (uni(rng) < 0.5 ? -1 : 1);
        const double c = 2.0 * uni(rng) - 1.0;
        const double ex = std::cos(phi), ey = std::sin(phi), nx = -ey, ny = ex;
        tally({0.0, ex, ey, 2 * a * ex * nx + c * nx * nx, a * (ex * ny + ey * nx) + c * nx * ny,
               2 * a * ey * ny + c * ny * ny},
              a != 0.0);
    }
    // Points on the type-change curves of catalog graphs, all non-degenerate.
    const GraphFunction c0 = c_zero_graph(), s0 = s_zero_graph(), hel = helicoid_graph();
    for (int k = 0; k < 5000; ++k) {
        const double s = 3.0 * uni(rng) - 1.5;
        const double sign = uni(rng) < 0.5 ? -1.0 : 1.0;
        switch (k % 3) {
        case 0: tally(c0.jet(s, sign * std::cosh(s)), true); break;
        case 1: {
            const double th = std::tanh(s);
            tally(s0.jet(s, sign * std::atanh(std::sqrt(1.0 - th * th))), true);
            break;
        }
        default: tally(hel.jet(std::cos(0.9 * s), std::sin(0.9 * s)), true); break;
        }
    }
    return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " agree (" +
                                std::to_string(nondeg) + " non-degenerate)"};
}

double contact_oracle(double c_in)
{
    using F = boost::multiprecision::cpp_bin_float_50;
    const F c = c_in, y = F("1e-12"), x = c;
    F t = -c;
    for (int it = 0; it < 200; ++it) {
        const F a = x + t;
        const F g = a * (12 * (x - t) - a * a * a) + 12 * y * y;
        const F dg = 12 * (x - t) - a * a * a - a * (12 + 3 * a * a);
        const F step = g / dg;
        t -= step;
        if (abs(step) < F("1e-45")) break;
    }
    return static_cast<double>((t + c) / (y * y));
}

Outcome contact_constant()
{
    std::vector<double> qc;
    double oracle_err = 0.0;
    for (double c : {0.5, 1.0, 2.0, 5.0}) {
        const double q = alpha0_II_contact(c);
        const double o = contact_oracle(c);
        oracle_err = std::max(oracle_err, std::abs(q - o) / std::abs(o));
        qc.push_back(q * c);
    }
    double spread = 0.0;
    for (double v : qc) spread = std::max(spread, std::abs(v - qc[0]));
    const bool ok = spread <= 1e-6 && std::abs(qc[0]) > 1e-3 && oracle_err <= 1e-6;
    return {ok, "q*c = " + format_double(qc[0]) + ", spread " + fmt(spread) + ", relative error vs oracle " + fmt(oracle_err)};
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism()
{
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "zmc_acceptance";
    fs::create_directories(dir);
    std::vector<std::string> reports;
    for (int run = 0; run < 2; ++run) {
        const fs::path rep = dir / ("report" + std::to_string(run) + ".json");
        fs::remove(rep);
        const std::string cmd = std::string("\"") + ZMC_FORGE_PATH + "\" verify --suite all --report \"" + rep.string() +
                                "\" > /dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        if (!WIFEXITED(status) || WEXITSTATUS(status) > 1) return {false, "zmc-forge verify did not run"};
        reports.push_back(slurp(rep));
    }
    fs::remove_all(dir);
    const bool ok = !reports[0].empty() && reports[0] == reports[1];
    return {ok, std::to_string(reports[0].size()) + " bytes, " + (ok ? "identical" : "different")};
}

} // namespace

int main()
{
    const SuiteReport catalog = run_suite("catalog");
    const SuiteReport weier = run_suite("weierstrass");
    const SuiteReport fluid = run_suite("fluid");
    const SuiteReport round = run_suite("roundtrip");

    struct Item {
        const char* title;
        std::function<Outcome()> run;
    };
    const std::vector<Item> items{
        {"PDE residuals", pde_residuals},
        {"catalog consistency", [&] { return from_suite(catalog, {"catalog/chart/"}); }},
        {"conjugate identities", [&] { return from_suite(catalog, {"catalog/conjugate/"}); }},
        {"Bjorling round trips", [&] { return from_suite(round, {"roundtrip/"}); }},
        {"Weierstrass suite", [&] { return from_suite(weier, {"weierstrass/"}); }},
        {"type-change criteria agreement", criteria_agreement},
        {"alpha0_II contact", contact_constant},
        {"fluid suite", [&] { return from_suite(fluid, {"fluid/"}); }},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t k = 0; k < items.size(); ++k) {
        Outcome o;
        try {
            o = items[k].run();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, items[k].title, o.detail.c_str());
    }
    return failed == 0 ? 0 : 1;
}
