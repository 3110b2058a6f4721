#include "sympl/matrix.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace sympl {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
} // namespace

Mat standard_J(int n) {
    if (n <= 0) throw ParameterError("standard_J: half-dimension must be positive");
    Mat J = Mat::Zero(2 * n, 2 * n);
    J.topRightCorner(n, n) = -Mat::Identity(n, n);
    J.bottomLeftCorner(n, n) = Mat::Identity(n, n);
    return J;
}

double sympl_residual(const Mat& M) {
    const int n = static_cast<int>(M.rows()) / 2;
    Mat J = standard_J(n);
    return (M.transpose() * J * M - J).cwiseAbs().maxCoeff();
}

bool is_symplectic(const Mat& M, double tol) {
    if (M.rows() != M.cols())
        throw ContractError("is_symplectic: matrix must be square");
    if (M.rows() % 2 != 0)
        throw ContractError("is_symplectic: matrix dimension must be even");
    return sympl_residual(M) <= tol;
}

int half_dim_checked(const Mat& M, double tol, const char* who) {
    if (!is_symplectic(M, tol))
        throw ContractError(std::string(who) + ": input is not symplectic (residual " +
                            std::to_string(sympl_residual(M)) + ")");
    return static_cast<int>(M.rows()) / 2;
}

Mat diamond(const Mat& M1, const Mat& M2, double tol) {
    const int m1 = half_dim_checked(M1, tol, "diamond");
    const int m2 = half_dim_checked(M2, tol, "diamond");
    const int m = m1 + m2;
    Mat out = Mat::Zero(2 * m, 2 * m);
    // interleave [A B; C D] quadrants
    out.block(0, 0, m1, m1) = M1.block(0, 0, m1, m1);
    out.block(0, m, m1, m1) = M1.block(0, m1, m1, m1);
    out.block(m, 0, m1, m1) = M1.block(m1, 0, m1, m1);
    out.block(m, m, m1, m1) = M1.block(m1, m1, m1, m1);
    out.block(m1, m1, m2, m2) = M2.block(0, 0, m2, m2);
    out.block(m1, m + m1, m2, m2) = M2.block(0, m2, m2, m2);
    out.block(m + m1, m1, m2, m2) = M2.block(m2, 0, m2, m2);
    out.block(m + m1, m + m1, m2, m2) = M2.block(m2, m2, m2, m2);
    return out;
}

Mat diamond_pow(const Mat& M, int k, double tol) {
    if (k <= 0) throw ParameterError("diamond_pow: k must be positive");
    Mat out = M;
    for (int i = 1; i < k; ++i) out = diamond(out, M, tol);
    return out;
}

// ---------------------------------------------------------------------------

NormalFormFactor NormalFormFactor::D(double lambda) {
    if (lambda != 2.0 && lambda != -2.0)
        throw ParameterError("D(lambda): lambda must be +-2");
    NormalFormFactor f;
    f.kind = Kind::D;
    f.lambda = lambda;
    return f;
}

NormalFormFactor NormalFormFactor::N1(double lambda, double b) {
    if (lambda != 1.0 && lambda != -1.0)
        throw ParameterError("N1(lambda,b): lambda must be +-1");
    if (b != 1.0 && b != 0.0 && b != -1.0)
        throw ParameterError("N1(lambda,b): b must be in {-1, 0, 1}");
    NormalFormFactor f;
    f.kind = Kind::N1;
    f.lambda = lambda;
    f.b = b;
    return f;
}

NormalFormFactor NormalFormFactor::R(double theta) {
    theta = canonical_angle(theta);
    if (theta == 0.0 || theta == kPi)
        throw ParameterError("R(theta): theta must avoid {0, pi}");
    NormalFormFactor f;
    f.kind = Kind::R;
    f.theta = theta;
    return f;
}

NormalFormFactor NormalFormFactor::N2(double theta, const Eigen::Matrix2d& block) {
    theta = canonical_angle(theta);
    if (theta == 0.0 || theta == kPi)
        throw ParameterError("N2(theta,b): theta must avoid {0, pi}");
    if (block(0, 1) == block(1, 0))
        throw ParameterError("N2(theta,b): block requires b2 != b3");
    NormalFormFactor f;
    f.kind = Kind::N2;
    f.theta = theta;
    f.block = block;
    return f;
}

NormalFormFactor NormalFormFactor::N2(double theta, int sign_b2_minus_b3) {
    if (sign_b2_minus_b3 == 0)
        throw ParameterError("N2 representative: sign must be +-1");
    const double d = sign_b2_minus_b3 > 0 ? 1.0 : -1.0;
    const double c = std::cos(theta), s = std::sin(theta);
    // R(theta)^T b must be symmetric; with b2 = d/2, b3 = -d/2 this pins
    // b1 = b4 = -d c / (2 s).
    Eigen::Matrix2d blk;
    const double diag = -d * c / (2.0 * s);
    blk << diag, d / 2.0, -d / 2.0, diag;
    return N2(theta, blk);
}

std::string NormalFormFactor::str() const {
    char buf[96];
    switch (kind) {
        case Kind::D:
            std::snprintf(buf, sizeof(buf), "D(%g)", lambda);
            break;
        case Kind::N1:
            std::snprintf(buf, sizeof(buf), "N1(%g,%g)", lambda, b);
            break;
        case Kind::R:
            std::snprintf(buf, sizeof(buf), "R(%.12g)", theta);
            break;
        case Kind::N2:
            std::snprintf(buf, sizeof(buf), "N2(%.12g,%+g)", theta,
                          block(0, 1) > block(1, 0) ? 1.0 : -1.0);
            break;
    }
    return buf;
}

Mat make_normal_form(const NormalFormFactor& f) {
    switch (f.kind) {
        case NormalFormFactor::Kind::D: {
            NormalFormFactor::D(f.lambda);  // re-validate
            Mat m(2, 2);
            m << f.lambda, 0.0, 0.0, 1.0 / f.lambda;
            return m;
        }
        case NormalFormFactor::Kind::N1: {
            NormalFormFactor::N1(f.lambda, f.b);
            Mat m(2, 2);
            m << f.lambda, f.b, 0.0, f.lambda;
            return m;
        }
        case NormalFormFactor::Kind::R: {
            NormalFormFactor::R(f.theta);
            Mat m(2, 2);
            m << std::cos(f.theta), -std::sin(f.theta), std::sin(f.theta), std::cos(f.theta);
            return m;
        }
        case NormalFormFactor::Kind::N2: {
            NormalFormFactor::N2(f.theta, f.block);
            Mat r(2, 2);
            r << std::cos(f.theta), -std::sin(f.theta), std::sin(f.theta), std::cos(f.theta);
            Mat m = Mat::Zero(4, 4);
            m.block(0, 0, 2, 2) = r;
            m.block(0, 2, 2, 2) = f.block;
            m.block(2, 2, 2, 2) = r;
            if (sympl_residual(m) > 1e-12)
                throw ParameterError("N2(theta,b): block is incompatible with theta "
                                     "(R(theta)^T b must be symmetric)");
            return m;
        }
    }
    throw ParameterError("make_normal_form: unknown factor kind");
}

// ---------------------------------------------------------------------------

double canonical_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0) t += kTwoPi;
    if (t == kTwoPi) t = 0.0;
    return t;
}

Cx d_omega_raw(const Mat& M, Cx omega) {
    const int two_n = static_cast<int>(M.rows());
    const int n = two_n / 2;
    CMat A = M.cast<Cx>() - omega * CMat::Identity(two_n, two_n);
    Cx det = A.determinant();
    Cx phase = std::pow(std::conj(omega), n);
    double sign = (n % 2 == 1) ? 1.0 : -1.0;  // (-1)^(n-1)
    return sign * phase * det;
}

double d_omega(const Mat& M, Cx omega, const Tolerances& tol) {
    if (std::abs(std::abs(omega) - 1.0) > 1e-9)
        throw ParameterError("d_omega: omega must lie on the unit circle");
    half_dim_checked(M, tol.sympl_tol, "d_omega");
    Cx v = d_omega_raw(M, omega);
    if (std::abs(v.imag()) > tol.d_omega_imag_tol * std::max(1.0, std::abs(v)))
        throw NumericalError("d_omega: imaginary residue " + std::to_string(v.imag()) +
                             " exceeds tolerance");
    return v.real();
}

int nullity_at(const Mat& M, Cx omega, const Tolerances& tol) {
    const int two_n = static_cast<int>(M.rows());
    CMat A = M.cast<Cx>() - omega * CMat::Identity(two_n, two_n);
    Eigen::JacobiSVD<CMat> svd(A);
    const double cutoff = tol.rank_tol_factor * std::max(1.0, M.norm());
    int nu = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) < cutoff) ++nu;
    return nu;
}

namespace {

double sigma_min_at(const Mat& M, double angle) {
    const int two_n = static_cast<int>(M.rows());
    CMat A = M.cast<Cx>() - std::polar(1.0, angle) * CMat::Identity(two_n, two_n);
    Eigen::JacobiSVD<CMat> svd(A);
    return svd.singularValues().minCoeff();
}

// Refine a candidate on-circle angle by minimizing sigma_min(M - e^{i t} I)
// over a small bracket. Golden-section; sigma_min is continuous in t.
double refine_circle_angle(const Mat& M, double angle, double halfwidth) {
    double lo = angle - halfwidth, hi = angle + halfwidth;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo);
    double d = lo + gr * (hi - lo);
    double fc = sigma_min_at(M, c), fd = sigma_min_at(M, d);
    for (int it = 0; it < 60 && (hi - lo) > 1e-13; ++it) {
        if (fc < fd) {
            hi = d; d = c; fd = fc;
            c = hi - gr * (hi - lo);
            fc = sigma_min_at(M, c);
        } else {
            lo = c; c = d; fc = fd;
            d = lo + gr * (hi - lo);
            fd = sigma_min_at(M, d);
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

UnitSpectrum unit_spectrum(const Mat& M, const Tolerances& tol) {
    half_dim_checked(M, tol.sympl_tol, "unit_spectrum");
    Eigen::EigenSolver<Mat> es(M);
    if (es.info() != Eigen::Success)
        throw NumericalError("unit_spectrum: eigenvalue computation failed");

    // Detection band: defective on-circle eigenvalues carry O(sqrt(eps))
    // solver noise, so candidates are gathered wide and then confirmed by a
    // rank test at the snapped angle.
    const double detect_band = std::max(10.0 * tol.circle_tol, 1e-6 * std::max(1.0, M.norm()));
    const double rank_cut = tol.rank_tol_factor * std::max(1.0, M.norm());

    struct Raw { double angle; double radial; };
    std::vector<Raw> candidates;
    bool warning = false;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        Cx lam = es.eigenvalues()(i);
        double radial = std::abs(std::abs(lam) - 1.0);
        if (radial <= detect_band)
            candidates.push_back({canonical_angle(std::arg(lam)), radial});
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Raw& a, const Raw& b) { return a.angle < b.angle; });

    // group candidate angles
    const double cluster_tol = 1e-5;
    UnitSpectrum out;
    size_t i = 0;
    while (i < candidates.size()) {
        size_t j = i + 1;
        while (j < candidates.size() && candidates[j].angle - candidates[j - 1].angle < cluster_tol)
            ++j;
        // wrap-around group across 2pi handled by canonicalizing near-2pi to 0
        double mean = 0.0;
        bool band_hit = false;
        for (size_t k = i; k < j; ++k) {
            mean += candidates[k].angle;
            if (candidates[k].radial > tol.circle_tol && candidates[k].radial <= 10.0 * tol.circle_tol)
                band_hit = true;
        }
        mean /= static_cast<double>(j - i);
        double snapped = refine_circle_angle(M, mean, cluster_tol);
        if (std::abs(snapped) < 1e-11 || std::abs(snapped - kTwoPi) < 1e-11) snapped = 0.0;
        if (std::abs(snapped - kPi) < 1e-11) snapped = kPi;

        double smin = sigma_min_at(M, snapped);
        bool on_circle = smin <= rank_cut;
        // fast accept: raw eigenvalue already within circle_tol
        bool raw_on = false;
        for (size_t k = i; k < j; ++k)
            if (candidates[k].radial <= tol.circle_tol) raw_on = true;
        if (on_circle || raw_on) {
            UnitEigenvalue ue;
            ue.angle = canonical_angle(snapped);
            ue.algebraic = static_cast<int>(j - i);
            ue.geometric = nullity_at(M, std::polar(1.0, ue.angle), tol);
            ue.ambiguous = band_hit && !raw_on;
            out.eigenvalues.push_back(ue);
        } else if (band_hit) {
            warning = true;
        }
        i = j;
    }

    // merge a trailing cluster that wrapped past 2pi into the one at 0
    if (out.eigenvalues.size() >= 2) {
        auto& first = out.eigenvalues.front();
        auto& last = out.eigenvalues.back();
        if (first.angle == 0.0 && last.angle > kTwoPi - cluster_tol) {
            first.algebraic += last.algebraic;
            out.eigenvalues.pop_back();
        }
    }

    for (const auto& ue : out.eigenvalues) out.elliptic_height += ue.algebraic;
    out.warning = warning;

    if (out.elliptic_height % 2 != 0)
        throw NumericalError("unit_spectrum: elliptic height came out odd; "
                             "an eigenvalue sits ambiguously near the circle");
    return out;
}

int elliptic_height(const Mat& M, const Tolerances& tol) {
    return unit_spectrum(M, tol).elliptic_height;
}

// ---------------------------------------------------------------------------

SymplecticPolar symplectic_polar(const Mat& M, double tol) {
    half_dim_checked(M, tol, "symplectic_polar");
    Mat G = M * M.transpose();
    Eigen::SelfAdjointEigenSolver<Mat> es(G);
    if (es.info() != Eigen::Success)
        throw NumericalError("symplectic_polar: eigendecomposition failed");
    Mat sqrtD = es.eigenvalues().cwiseSqrt().asDiagonal();
    SymplecticPolar out;
    out.P = es.eigenvectors() * sqrtD * es.eigenvectors().transpose();
    out.O = out.P.llt().solve(M);  // P^{-1} M via SPD solve
    return out;
}

Mat spd_power(const Mat& P, double t) {
    Eigen::SelfAdjointEigenSolver<Mat> es(P);
    Eigen::VectorXd d = es.eigenvalues();
    Eigen::VectorXd dt(d.size());
    for (int i = 0; i < d.size(); ++i) dt(i) = std::pow(d(i), t);
    return es.eigenvectors() * dt.asDiagonal() * es.eigenvectors().transpose();
}

Mat ortho_symplectic_interp(const Mat& O, double t) {
    const int n = static_cast<int>(O.rows()) / 2;
    // O = [X -Y; Y X] corresponds to the unitary U = X + iY
    CMat U = O.topLeftCorner(n, n).cast<Cx>() + Cx(0, 1) * O.bottomLeftCorner(n, n).cast<Cx>();
    Eigen::ComplexSchur<CMat> schur(U);
    if (schur.info() != Eigen::Success)
        throw NumericalError("ortho_symplectic_interp: Schur failed");
    // U is normal, so T is diagonal to machine precision
    CMat Q = schur.matrixU();
    Eigen::VectorXcd phases(n);
    for (int i = 0; i < n; ++i) {
        Cx lam = schur.matrixT()(i, i);
        phases(i) = std::polar(1.0, t * std::arg(lam));
    }
    CMat Ut = Q * phases.asDiagonal() * Q.adjoint();
    Mat out(2 * n, 2 * n);
    out.topLeftCorner(n, n) = Ut.real();
    out.topRightCorner(n, n) = -Ut.imag();
    out.bottomLeftCorner(n, n) = Ut.imag();
    out.bottomRightCorner(n, n) = Ut.real();
    return out;
}

Mat exp_aJ(int n, double a) {
    return std::cos(a) * Mat::Identity(2 * n, 2 * n) + std::sin(a) * standard_J(n);
}

} // namespace sympl
