#include "sympl/index.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <cstdlib>
#include <cstdio>
#include <sstream>

namespace sympl {

namespace {

constexpr double kPi = std::numbers::pi;

int sgn(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

// A deterministic bump direction in sp(2n): J itself first, then J S with
// seeded random symmetric S.
Mat bump_direction(int n, int which) {
    if (which == 0) return standard_J(n);
    std::mt19937_64 rng(0x5eedBa5eULL + 1000ULL * which + static_cast<unsigned>(n));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Mat S(2 * n, 2 * n);
    for (int i = 0; i < 2 * n; ++i)
        for (int j = i; j < 2 * n; ++j) {
            double v = u(rng);
            S(i, j) = v;
            S(j, i) = v;
        }
    Mat K = standard_J(n) * S;
    return K / K.cwiseAbs().maxCoeff();
}

// Concatenated-and-perturbed route gamma * xi_n on w in [0, 2]:
// w in [0,1] runs the reference arc (exact diagonal formula), w in [1,2]
// runs the path. Right-multiplied perturbation factors:
//   exp(delta_end * (w/2) J)            endpoint ramp (degenerate branch)
//   exp(delta_bump * sin^2(pi w/2) K)   interior bump (tangency resolution)
struct Route {
    const SymplecticPath* path;
    int n;
    Cx omega;
    double delta_end = 0.0;
    double delta_bump = 0.0;
    const Mat* K = nullptr;
    bool bump_is_rotation = true;

    Mat base_eval(double w) const {
        if (w <= 1.0) {
            double a = 2.0 - std::clamp(w, 0.0, 1.0);
            Mat m = Mat::Identity(2 * n, 2 * n);
            for (int i = 0; i < n; ++i) {
                m(i, i) = a;
                m(n + i, n + i) = 1.0 / a;
            }
            return m;
        }
        return path->eval((w - 1.0) * path->tau());
    }

    bool perturbed() const { return delta_end != 0.0 || delta_bump != 0.0; }

    Mat eval(double w) const {
        Mat m = base_eval(w);
        double bump = delta_bump == 0.0 ? 0.0 : delta_bump * std::pow(std::sin(kPi * w / 2.0), 2);
        if (bump_is_rotation) {
            double a = delta_end * (w / 2.0) + bump;
            if (a != 0.0) m = m * exp_aJ(n, a);
        } else {
            if (delta_end != 0.0) m = m * exp_aJ(n, delta_end * (w / 2.0));
            if (bump != 0.0) m = m * (bump * (*K)).exp();
        }
        return m;
    }
};

double d_from_eigs(const std::vector<Cx>& eigs, Cx omega, int n) {
    Cx prod(1.0, 0.0);
    for (const Cx& lam : eigs) prod *= (lam - omega);
    double sign = (n % 2 == 1) ? 1.0 : -1.0;
    return (sign * std::pow(std::conj(omega), n) * prod).real();
}

struct Evaluator {
    const Route* route;
    SpectrumCache* cache;  // used only when the route is unperturbed

    double operator()(double w) const {
        if (cache != nullptr && !route->perturbed()) {
            if (const auto* eigs = cache->find(w))
                return d_from_eigs(*eigs, route->omega, route->n);
            Eigen::EigenSolver<Mat> es(route->base_eval(w), false);
            std::vector<Cx> eigs(es.eigenvalues().data(),
                                 es.eigenvalues().data() + es.eigenvalues().size());
            double v = d_from_eigs(eigs, route->omega, route->n);
            cache->insert(w, std::move(eigs));
            return v;
        }
        return d_omega_raw(route->eval(w), route->omega).real();
    }
};

struct AttemptOutcome {
    bool clean = false;
    int count = 0;
    std::string dirt;              // reason the attempt was rejected
    double dirt_where = 0.0;
    std::vector<CrossingRecord> crossings;
};

// Orientation of the hypersurface at a crossing point: the sign D_omega takes
// along the positive rotation M e^{sJ}. Crossings produced by a magnitude-
// delta perturbation live at distance ~delta from the strata, so the probe
// step shrinks until two consecutive scales agree on a transversal sign.
int coorientation_sign(const Mat& m0, Cx omega, int n, double h0) {
    int last = 0;
    double h = h0;
    for (int k = 0; k < 5; ++k, h /= 10.0) {
        double gp = d_omega_raw(m0 * exp_aJ(n, h), omega).real();
        double gm = d_omega_raw(m0 * exp_aJ(n, -h), omega).real();
        if (sgn(gp) != 0 && sgn(gp) * sgn(gm) < 0) {
            if (sgn(gp) == last) return last;
            last = sgn(gp);
        } else {
            last = 0;
        }
    }
    return 0;
}

// minimize |f| by golden section inside [lo, hi]
double golden_min_abs(const Evaluator& f, double lo, double hi) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = std::abs(f(c)), fd = std::abs(f(d));
    for (int it = 0; it < 80 && (hi - lo) > 1e-13; ++it) {
        if (fc < fd) {
            hi = d; d = c; fd = fc;
            c = hi - gr * (hi - lo);
            fc = std::abs(f(c));
        } else {
            lo = c; c = d; fc = fd;
            d = lo + gr * (hi - lo);
            fd = std::abs(f(d));
        }
    }
    return std::min(fc, fd);
}

AttemptOutcome try_count(const Route& route, const std::vector<double>& grid,
                         const Tolerances& tol, SpectrumCache* cache) {
    Evaluator f{&route, cache};
    const size_t N = grid.size();
    std::vector<double> fs(N);
    for (size_t i = 0; i < N; ++i) fs[i] = f(grid[i]);

    AttemptOutcome out;
    auto dirty = [&](const std::string& why, double where) {
        out.clean = false;
        out.dirt = why;
        out.dirt_where = where;
        return out;
    };

    // grid values exactly on the hypersurface cannot be signed
    for (size_t i = 0; i < N; ++i)
        if (fs[i] == 0.0) return dirty("grid point on the hypersurface", grid[i]);
    if (!std::isfinite(fs.front()) || !std::isfinite(fs.back()))
        return dirty("non-finite hypersurface value", 0.0);

    int total = 0;
    for (size_t i = 0; i + 1 < N; ++i) {
        if (!std::isfinite(fs[i]) || !std::isfinite(fs[i + 1]))
            return dirty("non-finite hypersurface value", grid[i]);
        if (fs[i] * fs[i + 1] < 0.0) {
            // bisect the bracket
            double a = grid[i], b = grid[i + 1];
            double fa = fs[i];
            while (b - a > tol.bisect_width) {
                double mid = 0.5 * (a + b);
                double fm = f(mid);
                if (fm == 0.0) {
                    mid = a + 0.75 * (b - a);
                    fm = f(mid);
                    if (fm == 0.0) return dirty("unresolvable zero in bracket", mid);
                }
                if (sgn(fm) == sgn(fa)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            double wstar = 0.5 * (a + b);
            // co-orientation probe along the rotation direction
            Mat m0 = route.eval(wstar);
            int orient = coorientation_sign(m0, route.omega, route.n, tol.coorient_step);
            if (orient == 0)
                return dirty("co-orientation tangency at crossing", wstar);
            int after = sgn(fs[i + 1]);
            int contribution = (after == orient) ? +1 : -1;
            total += contribution;
            out.crossings.push_back({wstar, contribution});
        }
    }

    // touches: pronounced dips of |f| that reach the hypersurface without a
    // sign change carry hidden crossing pairs and must be resolved by a
    // different perturbation
    for (size_t i = 1; i + 1 < N; ++i) {
        double lo = std::abs(fs[i - 1]), mi = std::abs(fs[i]), hi = std::abs(fs[i + 1]);
        if (mi <= lo && mi <= hi && fs[i - 1] * fs[i] > 0.0 && fs[i] * fs[i + 1] > 0.0) {
            double local = std::max(lo, hi);
            if (mi <= 1e-3 * local) {
                double refined = golden_min_abs(f, grid[i - 1], grid[i + 1]);
                if (refined <= 1e-9 * local)
                    return dirty("tangential touch of the hypersurface", grid[i]);
            }
        }
    }

    out.clean = true;
    out.count = total;
    return out;
}

std::vector<double> build_grid(const SymplecticPath& path, const Tolerances& tol, int attempt) {
    // jitter interior subdivision points per attempt so repeated grid zeros
    // cannot pin every retry
    const double jitter = attempt == 0 ? 0.0 : 0.1 * static_cast<double>(attempt % 3);
    std::vector<double> grid;
    const int xi_steps = 48;
    grid.reserve(xi_steps + 1);
    for (int k = 0; k <= xi_steps; ++k)
        grid.push_back(static_cast<double>(k) / xi_steps);

    const double T = path.tau();
    std::vector<double> times = path.scan_times();
    const int sub = std::max(1, tol.scan_subdiv);
    for (size_t k = 0; k + 1 < times.size(); ++k) {
        for (int s = 0; s < sub; ++s) {
            double u = (static_cast<double>(s) + (s > 0 ? jitter : 0.0)) / sub;
            double t = times[k] + u * (times[k + 1] - times[k]);
            grid.push_back(1.0 + t / T);
        }
    }
    grid.push_back(2.0);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-15; }),
               grid.end());
    return grid;
}

// Count crossings with the retry ladder of interior perturbations.
AttemptOutcome robust_count(const SymplecticPath& path, Cx omega, double delta_end,
                            const Tolerances& tol, SpectrumCache* cache, int* attempts_used,
                            double* bump_used) {
    const int n = path.half_dim();
    Route route{&path, n, omega};
    route.delta_end = delta_end;

    std::vector<Mat> directions;  // materialized lazily per direction index
    AttemptOutcome last;
    int attempt = 0;
    for (int dir = -1; dir < 3; ++dir) {
        const int deltas = (dir == -1) ? 1 : 3;
        for (int d = 0; d < deltas; ++d, ++attempt) {
            route.delta_bump = (dir == -1) ? 0.0 : tol.perturb_delta * std::pow(10.0, d);
            if (dir >= 1) {
                while (static_cast<int>(directions.size()) < dir)
                    directions.push_back(bump_direction(n, static_cast<int>(directions.size()) + 1));
                route.K = &directions[static_cast<size_t>(dir - 1)];
                route.bump_is_rotation = false;
            } else {
                route.K = nullptr;
                route.bump_is_rotation = true;
            }
            std::vector<double> grid = build_grid(path, tol, attempt);
            last = try_count(route, grid, tol, cache);
            if (std::getenv("SYMPL_ENGINE_TRACE") && !last.clean)
                std::fprintf(stderr, "[engine] attempt %d (bump %g dir %d): %s at w=%.12g\n",
                             attempt, route.delta_bump, dir, last.dirt.c_str(), last.dirt_where);
            if (attempts_used) *attempts_used += 1;
            if (last.clean) {
                if (bump_used) *bump_used = route.delta_bump;
                return last;
            }
        }
    }
    std::ostringstream msg;
    msg << "index engine: crossing not resolved after " << attempt
        << " perturbation attempts (" << last.dirt << " near concatenated parameter w="
        << last.dirt_where << ", omega angle " << std::arg(omega) << ")";
    throw DegeneracyError(msg.str());
}

} // namespace

int index_omega(const SymplecticPath& gamma, Cx omega, IndexDiagnostics* diag,
                SpectrumCache* cache) {
    if (std::abs(std::abs(omega) - 1.0) > 1e-9)
        throw ParameterError("index_omega: omega must lie on the unit circle");
    omega /= std::abs(omega);
    const Tolerances& tol = gamma.tol();

    IndexDiagnostics local;
    IndexDiagnostics& dg = diag ? *diag : local;
    dg = IndexDiagnostics{};

    const int nu_end = gamma.nullity(omega);
    if (nu_end == 0) {
        AttemptOutcome out =
            robust_count(gamma, omega, 0.0, tol, cache, &dg.attempts, &dg.bump_delta);
        for (const auto& c : out.crossings)
            dg.crossings.push_back({c.t >= 1.0 ? (c.t - 1.0) * gamma.tau() : c.t - 1.0, c.sign});
        return out.count;
    }

    // Degenerate endpoint: realize the neighborhood infimum by the two
    // one-sided endpoint rotations and take the minimum; each side must be
    // stable under shrinking the rotation.
    dg.degenerate_end = true;
    auto one_side = [&](int side) {
        double eps = tol.endpoint_eps * side;
        AttemptOutcome a = robust_count(gamma, omega, eps, tol, cache, &dg.attempts, &dg.bump_delta);
        AttemptOutcome b =
            robust_count(gamma, omega, eps / 10.0, tol, cache, &dg.attempts, &dg.bump_delta);
        if (a.count != b.count) {
            AttemptOutcome c =
                robust_count(gamma, omega, eps / 100.0, tol, cache, &dg.attempts, &dg.bump_delta);
            if (b.count != c.count)
                throw DegeneracyError(
                    "index engine: endpoint rotation did not stabilize (side " +
                    std::to_string(side) + ")");
            return std::make_pair(b, eps / 10.0);
        }
        return std::make_pair(a, eps);
    };
    auto [plus, eps_p] = one_side(+1);
    auto [minus, eps_m] = one_side(-1);
    dg.index_plus = plus.count;
    dg.index_minus = minus.count;
    const AttemptOutcome& chosen = plus.count <= minus.count ? plus : minus;
    dg.endpoint_delta = plus.count <= minus.count ? eps_p : eps_m;
    for (const auto& c : chosen.crossings)
        dg.crossings.push_back({c.t >= 1.0 ? (c.t - 1.0) * gamma.tau() : c.t - 1.0, c.sign});
    return std::min(plus.count, minus.count);
}

} // namespace sympl
