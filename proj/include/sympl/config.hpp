#pragma once

#include <cstdint>
#include <string>

namespace sympl {

// All tolerance knobs in one place. The underlying theory works with exact
// matrices; every tolerance here is an artifact of finite precision, chosen
// for desk-scale well-conditioned inputs (2n <= ~40).
struct Tolerances {
    // max |M^T J M - J| entry for symplectic membership
    double sympl_tol = 1e-9;
    // | |lambda| - 1 | below which an eigenvalue counts as on the unit circle
    double circle_tol = 1e-9;
    // nu_omega counts singular values of (M - omega I) below rank_tol_factor * |M|
    double rank_tol_factor = 1e-8;
    // allowed imaginary residue of D_omega, relative to max(1, |value|)
    double d_omega_imag_tol = 1e-9;
    // sup-norm increment bound between adjacent path samples
    double step_bound = 0.1;
    // crossing times are bisected until the bracket is narrower than this
    double bisect_width = 1e-12;
    // interior path perturbation magnitude; escalated x10 at most twice
    double perturb_delta = 1e-6;
    // endpoint rotation magnitude for degenerate ends (the two-sided minimum)
    double endpoint_eps = 1e-3;
    // angle matching tolerance for breakpoints vs roots of unity
    double angle_tol = 1e-10;
    // continued-fraction denominator cutoff for rational angle recognition
    std::int64_t rational_den_cutoff = 1000000;
    // |ihat/L| agreement tolerance in the sigma-ratio check
    double ratio_tol = 1e-9;
    // finite-difference step for the co-orientation probe
    double coorient_step = 1e-5;
    // scan subdivisions per sample segment when hunting sign changes
    int scan_subdiv = 6;
    // horizon for the all-m gap certification in jump verification
    int gap_horizon = 256;
};

// Certificate search limits.
struct SearchConfig {
    double eps = 0.05;          // fractional-part acceptance window
    std::int64_t n_max = 10000000;
    int count = 1;              // certificates to emit
    bool bumpy = false;
};

struct RunConfig {
    Tolerances tol;
    SearchConfig search;
    int threads = 1;
    std::string format = "table";   // "table" | "json"
};

} // namespace sympl
