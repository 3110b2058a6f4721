// temporary debug probe
#include <cmath>
#include <cstdio>
#include <numbers>

#include "sympl/matrix.hpp"
#include "sympl/path.hpp"

using namespace sympl;
constexpr double PI = std::numbers::pi;

int main() {
    auto rot = rotation_path(PI / 2.0);
    double delta = 1e-6;
    auto feval = [&](double w) {
        Mat m;
        if (w <= 1.0) {
            double a = 2.0 - w;
            m = Mat::Identity(2, 2);
            m(0, 0) = a;
            m(1, 1) = 1.0 / a;
        } else {
            m = rot.eval(w - 1.0);
        }
        double bump = delta * std::pow(std::sin(PI * w / 2.0), 2);
        m = m * exp_aJ(1, bump);
        return d_omega_raw(m, Cx(1, 0)).real();
    };
    for (double w : {0.9, 0.97, 0.99, 0.999, 0.99999, 1.0 - 1e-7, 1.0, 1.0 + 1e-7, 1.00001,
                     1.001, 1.01, 1.05, 1.1, 1.2})
        std::printf("w=%.9f  f=%.6e\n", w, feval(w));
    return 0;
}
