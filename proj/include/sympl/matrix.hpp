#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "sympl/config.hpp"
#include "sympl/errors.hpp"

namespace sympl {

using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using Cx = std::complex<double>;

// Standard symplectic form for half-dimension n:  J = [0 -I; I 0].
// The diamond product interleaves consistently with this block layout,
// i.e. J_{2(m+k)} = J_{2m} <> J_{2k}.
Mat standard_J(int n);

// max-entry residual |M^T J M - J|
double sympl_residual(const Mat& M);

// Membership predicate. Throws ContractError on odd-dimensional input.
bool is_symplectic(const Mat& M, double tol = Tolerances{}.sympl_tol);

// Validates and returns the half-dimension of M.
int half_dim_checked(const Mat& M, double tol, const char* who);

// The <>-product of two square even-dimensional blocks. Both inputs must be
// symplectic.
Mat diamond(const Mat& M1, const Mat& M2, double tol = Tolerances{}.sympl_tol);

// k-fold <>-power
Mat diamond_pow(const Mat& M, int k, double tol = Tolerances{}.sympl_tol);

// ---------------------------------------------------------------------------
// Basic normal forms

struct NormalFormFactor {
    enum class Kind { D, N1, R, N2 };

    Kind kind = Kind::D;
    double lambda = 2.0;          // D: +-2, N1: +-1
    double b = 0.0;               // N1 shear parameter, in {-1, 0, 1}
    double theta = 0.0;           // R, N2 angle in (0,pi) u (pi,2pi)
    Eigen::Matrix2d block = Eigen::Matrix2d::Zero();  // N2 coupling block, b2 != b3

    static NormalFormFactor D(double lambda);
    static NormalFormFactor N1(double lambda, double b);
    static NormalFormFactor R(double theta);
    static NormalFormFactor N2(double theta, const Eigen::Matrix2d& block);
    // Representative N2 block with prescribed sign of b2 - b3, symplectic by
    // construction for the given angle.
    static NormalFormFactor N2(double theta, int sign_b2_minus_b3);

    int dim() const { return kind == Kind::N2 ? 4 : 2; }
    std::string str() const;
};

// Returns exactly the displayed matrix of the factor. Parameter errors throw.
Mat make_normal_form(const NormalFormFactor& f);

// ---------------------------------------------------------------------------
// Unit spectrum

struct UnitEigenvalue {
    double angle = 0.0;      // in [0, 2pi)
    int algebraic = 0;
    int geometric = 0;       // nu_omega
    bool ambiguous = false;  // raw eigenvalue fell in the warning band
};

struct UnitSpectrum {
    std::vector<UnitEigenvalue> eigenvalues;  // sorted by angle
    int elliptic_height = 0;                  // e(M)
    bool warning = false;
};

// Eigenvalues of M on the unit circle with algebraic and geometric
// multiplicities. Raw eigenvalues with | |lam|-1 | in (circle_tol,
// 10*circle_tol) that do not confirm as on-circle set the warning flag.
UnitSpectrum unit_spectrum(const Mat& M, const Tolerances& tol = Tolerances{});

// Geometric multiplicity nu_omega(M) = dim ker(M - omega I), via singular
// values below rank_tol_factor * |M|.
int nullity_at(const Mat& M, Cx omega, const Tolerances& tol = Tolerances{});

// Elliptic height alone (sum of algebraic multiplicities on the circle).
int elliptic_height(const Mat& M, const Tolerances& tol = Tolerances{});

// ---------------------------------------------------------------------------
// Hypersurface function

// D_omega(M) = (-1)^(n-1) conj(omega)^n det(M - omega I), real for symplectic
// M and unit omega. Throws NumericalError when the imaginary residue exceeds
// tolerance (relative to max(1, |value|)).
double d_omega(const Mat& M, Cx omega, const Tolerances& tol = Tolerances{});

// Raw complex evaluation without the residue check (engine internals).
Cx d_omega_raw(const Mat& M, Cx omega);

// ---------------------------------------------------------------------------
// Polar factorization (canonical generator support)

struct SymplecticPolar {
    Mat P;  // symmetric positive definite symplectic
    Mat O;  // orthogonal symplectic
};

// M = P O with P = (M M^T)^(1/2).
SymplecticPolar symplectic_polar(const Mat& M, double tol = Tolerances{}.sympl_tol);

// P^t for symmetric positive definite symplectic P, symplectic for every t.
Mat spd_power(const Mat& P, double t);

// Geodesic from I to O inside the orthogonal symplectic subgroup,
// via the principal logarithm of the corresponding unitary.
Mat ortho_symplectic_interp(const Mat& O, double t);

// ---------------------------------------------------------------------------
// Small utilities shared by the engine

// exp(a J), closed form cos(a) I + sin(a) J.
Mat exp_aJ(int n, double a);

// canonicalize an angle into [0, 2pi)
double canonical_angle(double theta);

} // namespace sympl
