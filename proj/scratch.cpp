// temporary engine smoke test, removed before delivery
#include <cstdio>
#include <numbers>

#include "sympl/index.hpp"
#include "sympl/path.hpp"

using namespace sympl;
constexpr double PI = std::numbers::pi;

int main() {
    setvbuf(stdout, nullptr, _IONBF, 0);
    // rotation path R(t*pi/2)
    auto rot = rotation_path(PI / 2.0);
    std::printf("end residual %g\n", sympl_residual(rot.end()));
    std::printf("i_1(R(t pi/2))       = %d (expect 1)\n", index_omega(rot, Cx(1, 0)));
    std::printf("i_-1(R(t pi/2))      = %d (expect 0)\n", index_omega(rot, Cx(-1, 0)));
    IndexDiagnostics dg;
    std::printf("i_i(R(t pi/2))       = %d (expect 0, sides", index_omega(rot, Cx(0, 1), &dg));
    std::printf(" %d/%d)\n", dg.index_plus, dg.index_minus);
    std::printf("i_-i(R(t pi/2))      = %d (expect 0)\n", index_omega(rot, Cx(0, -1)));

    // constant path at the identity, n = 1
    std::vector<PathSample> cs{{0.0, Mat::Identity(2, 2)}, {1.0, Mat::Identity(2, 2)}};
    auto cpath = SymplecticPath::from_samples(1, cs);
    std::printf("i_1(const I, n=1)    = %d (expect -1)\n", index_omega(cpath, Cx(1, 0), &dg));
    std::printf("   sides %d/%d\n", dg.index_plus, dg.index_minus);

    // full rotation R(t*2pi): degenerate end at I
    auto full = rotation_path(2.0 * PI);
    std::printf("i_1(R(t 2pi))        = %d (expect 1, sides", index_omega(full, Cx(1, 0), &dg));
    std::printf(" %d/%d)\n", dg.index_plus, dg.index_minus);

    // iterate of quarter rotation: gamma^4 ends at R(2pi) = I
    auto it4 = rot.iterate(4);
    std::printf("i_1(R(t pi/2)^4)     = %d (expect 1)\n", index_omega(it4, Cx(1, 0)));

    // negative rotation R(-t pi/2): i_1 = -1
    auto noz = rotation_path(-PI / 2.0);
    std::printf("i_1(R(-t pi/2))      = %d (expect -1)\n", index_omega(noz, Cx(1, 0)));

    // hyperbolic path exp(t J diag(1,-1)): i_1 = 0 expected (no crossings on path half)
    Mat B(2, 2);
    B << 1, 0, 0, -1;
    auto hyp = SymplecticPath::from_hamiltonian(1, {{1.0, B}});
    std::printf("i_1(hyperbolic)      = %d (expect 0)\n", index_omega(hyp, Cx(1, 0)));

    // mean-ish scan: i_omega profile values for R(t pi/2)
    std::printf("i at angle 0.3pi     = %d (expect 1)\n",
                index_omega(rot, std::polar(1.0, 0.3 * PI)));
    std::printf("i at angle 0.7pi     = %d (expect 0)\n",
                index_omega(rot, std::polar(1.0, 0.7 * PI)));
    std::printf("i at angle 1.7pi     = %d (expect 1)\n",
                index_omega(rot, std::polar(1.0, 1.7 * PI)));

    // diamond additivity spot check: rot <> hyp pointwise, omega = 1
    // build the pointwise diamond product path by sampling
    {
        std::vector<PathSample> ds;
        for (double t = 0.0; t <= 1.0 + 1e-12; t += 1.0 / 64) {
            ds.push_back({t, diamond(rot.eval(t), hyp.eval(t))});
        }
        auto dpath = SymplecticPath::from_samples(2, ds);
        std::printf("i_1(rot <> hyp)      = %d (expect 1+0)\n", index_omega(dpath, Cx(1, 0)));
        std::printf("i_1(const<>const n=2)");
        std::vector<PathSample> cs2{{0.0, Mat::Identity(4, 4)}, {1.0, Mat::Identity(4, 4)}};
        auto cpath2 = SymplecticPath::from_samples(2, cs2);
        std::printf(" = %d (expect -2)\n", index_omega(cpath2, Cx(1, 0)));
    }
    return 0;
}
