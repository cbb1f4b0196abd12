// Lifts Weierstrass data from a descriptor and compares the maximal surface
// with Re gamma(u + i v) of the circle lift (t, cos t, sin t).
//
//   ./weierstrass_lift samples/weierstrass_circle.json

#include <cstdio>
#include <iostream>

#include <zmc/zmc.hpp>

int main(int argc, char** argv)
{
    if (argc != 2) {
        std::cerr << "usage: weierstrass_lift descriptor.json\n";
        return 2;
    }
    try {
        const zmc::WeierstrassData d = zmc::parse_weierstrass(zmc::load_json_file(argv[1]));
        const zmc::AnalyticNullCurve circle = zmc::circle_null_curve();
        for (double v : {-0.5, -0.1, 0.0, 0.1, 0.5}) {
            const double u = 2.0;
            const zmc::LorentzVec3 p = zmc::maxface_eval(d, {u, v});
            const zmc::LorentzVec3 q = zmc::maximal_extension(circle, u, v);
            std::printf("v = %5.2f  phi = (%.12f, %.12f, %.12f)  |phi - Re gamma| = %.3g  fold = %.3g\n", v, p.t, p.x,
                        p.y, zmc::euclid_norm(p - q), zmc::fold_criterion(d, {u, 0.0}));
        }
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    return 0;
}
