#include "sympl/path.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace sympl {

namespace {

double sup_dist(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

Mat checked_log(const Mat& from, const Mat& to) {
    Mat step = from.partialPivLu().solve(to);
    Mat L = step.log();
    if (!L.allFinite() || sup_dist(L.exp(), step) > 1e-9 * std::max(1.0, step.norm()))
        throw ContractError("path: samples too far apart for geodesic interpolation; "
                            "supply a denser sampling");
    return L;
}

} // namespace

Arc::Arc(int n, std::vector<PathSample> samples, const Tolerances& tol,
         std::vector<Mat> segment_logs)
    : n_(n), samples_(std::move(samples)), logs_(std::move(segment_logs)), tol_(tol) {
    if (n_ <= 0) throw ParameterError("Arc: half-dimension must be positive");
    if (samples_.size() < 2) throw ContractError("Arc: need at least two samples");
    for (size_t k = 0; k + 1 < samples_.size(); ++k)
        if (!(samples_[k].t < samples_[k + 1].t))
            throw ContractError("Arc: sample times must be strictly increasing");
    for (const auto& s : samples_) {
        if (s.m.rows() != 2 * n_ || s.m.cols() != 2 * n_)
            throw ContractError("Arc: sample dimension mismatch");
        if (sympl_residual(s.m) > tol_.sympl_tol)
            throw ContractError("Arc: sample at t=" + std::to_string(s.t) +
                                " is not symplectic (residual " +
                                std::to_string(sympl_residual(s.m)) + ")");
    }
    const bool logs_given = !logs_.empty();
    if (logs_given && logs_.size() != samples_.size() - 1)
        throw ContractError("Arc: segment log count mismatch");
    check_and_refine(logs_given);
}

void Arc::check_and_refine(bool logs_given) {
    if (!logs_given) {
        logs_.clear();
        logs_.reserve(samples_.size() - 1);
        for (size_t k = 0; k + 1 < samples_.size(); ++k)
            logs_.push_back(checked_log(samples_[k].m, samples_[k + 1].m));
    }
    // Subdivide geodesic segments until sup-norm increments obey step_bound
    // (relative to the local matrix scale); children inherit halves of the
    // parent log exactly.
    std::vector<PathSample> out_s;
    std::vector<Mat> out_l;
    out_s.reserve(samples_.size());
    for (size_t k = 0; k + 1 < samples_.size(); ++k) {
        struct Piece { PathSample a; PathSample b; Mat log; };
        std::vector<Piece> stack{{samples_[k], samples_[k + 1], logs_[k]}};
        std::vector<Piece> done;
        while (!stack.empty()) {
            Piece p = stack.back();
            stack.pop_back();
            const double scale = std::max(1.0, std::min(p.a.m.cwiseAbs().maxCoeff(),
                                                        p.b.m.cwiseAbs().maxCoeff()));
            if (sup_dist(p.a.m, p.b.m) <= tol_.step_bound * scale || (p.b.t - p.a.t) < 1e-9) {
                done.push_back(p);
                continue;
            }
            Mat half = 0.5 * p.log;
            PathSample mid{0.5 * (p.a.t + p.b.t), p.a.m * half.exp()};
            stack.push_back({mid, p.b, half});
            stack.push_back({p.a, mid, half});
        }
        std::sort(done.begin(), done.end(),
                  [](const Piece& x, const Piece& y) { return x.a.t < y.a.t; });
        for (const auto& p : done) {
            out_s.push_back(p.a);
            out_l.push_back(p.log);
        }
    }
    out_s.push_back(samples_.back());
    samples_ = std::move(out_s);
    logs_ = std::move(out_l);
}

Mat Arc::eval(double t) const {
    const double T = length();
    if (t < samples_.front().t - 1e-9 || t > T + 1e-9)
        throw ParameterError("Arc::eval: parameter outside the arc domain");
    t = std::clamp(t, samples_.front().t, T);
    auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                               [](double v, const PathSample& s) { return v < s.t; });
    size_t k = static_cast<size_t>(std::distance(samples_.begin(), it));
    if (k == 0) return samples_.front().m;
    if (k >= samples_.size()) return samples_.back().m;
    --k;
    const double t0 = samples_[k].t, t1 = samples_[k + 1].t;
    const double u = (t - t0) / (t1 - t0);
    if (u <= 0.0) return samples_[k].m;
    if (u >= 1.0) return samples_[k + 1].m;
    return samples_[k].m * (u * logs_[k]).exp();
}

Arc xi_arc(int n, double tau, const Tolerances& tol) {
    if (n <= 0) throw ParameterError("xi_arc: n must be positive");
    if (tau <= 0) throw ParameterError("xi_arc: tau must be positive");
    const int steps = 32;
    std::vector<PathSample> samples;
    samples.reserve(steps + 1);
    for (int k = 0; k <= steps; ++k) {
        double t = tau * static_cast<double>(k) / steps;
        double a = 2.0 - t / tau;
        Mat m = Mat::Identity(2 * n, 2 * n);
        for (int i = 0; i < n; ++i) {
            m(i, i) = a;
            m(n + i, n + i) = 1.0 / a;
        }
        samples.push_back({t, std::move(m)});
    }
    return Arc(n, std::move(samples), tol);
}

Arc concat(const Arc& first, const Arc& second) {
    if (first.half_dim() != second.half_dim())
        throw ContractError("concat: half-dimension mismatch");
    const double tau = first.length();
    if (std::abs(second.length() - tau) > 1e-12 * std::max(1.0, tau))
        throw ContractError("concat: arcs must share the parameter length");
    const Tolerances& tol = first.tol();
    if ((first.end() - second.start()).cwiseAbs().maxCoeff() > tol.sympl_tol)
        throw ContractError("concat: junction mismatch between first(tau) and second(0)");

    std::vector<PathSample> samples;
    samples.reserve(first.samples().size() + second.samples().size());
    for (const auto& s : first.samples()) samples.push_back({s.t / 2.0, s.m});
    for (const auto& s : second.samples()) {
        double t = (s.t + tau) / 2.0;
        if (t - samples.back().t < 1e-15) continue;  // dedupe junction
        samples.push_back({t, s.m});
    }
    return Arc(first.half_dim(), std::move(samples), tol);
}

// ---------------------------------------------------------------------------

SymplecticPath::SymplecticPath(std::shared_ptr<const Arc> base, int iterations)
    : base_(std::move(base)), iterations_(iterations) {
    const Mat& P = base_->end();
    powers_.reserve(static_cast<size_t>(iterations_) + 1);
    powers_.push_back(Mat::Identity(P.rows(), P.cols()));
    for (int j = 1; j <= iterations_; ++j) powers_.push_back(P * powers_.back());
}

SymplecticPath SymplecticPath::from_arc(Arc arc) {
    const int n = arc.half_dim();
    if (arc.samples().front().t != 0.0)
        throw ContractError("SymplecticPath: first sample must sit at t = 0");
    if (sup_dist(arc.start(), Mat::Identity(2 * n, 2 * n)) > arc.tol().sympl_tol)
        throw ContractError("SymplecticPath: gamma(0) must be the identity");
    return SymplecticPath(std::make_shared<const Arc>(std::move(arc)), 1);
}

SymplecticPath SymplecticPath::from_samples(int n, std::vector<PathSample> samples,
                                            const Tolerances& tol) {
    return from_arc(Arc(n, std::move(samples), tol));
}

SymplecticPath SymplecticPath::from_hamiltonian(int n,
                                                const std::vector<HamiltonianSegment>& segments,
                                                const Tolerances& tol) {
    if (segments.empty()) throw ParameterError("from_hamiltonian: no segments");
    const int d = 2 * n;
    Mat J = standard_J(n);

    std::vector<PathSample> samples;
    std::vector<Mat> logs;
    Mat cur = Mat::Identity(d, d);
    double t = 0.0;
    samples.push_back({t, cur});
    for (const auto& seg : segments) {
        if (seg.duration <= 0) throw ParameterError("from_hamiltonian: durations must be positive");
        if (seg.B.rows() != d || seg.B.cols() != d)
            throw ParameterError("from_hamiltonian: B dimension mismatch");
        if ((seg.B - seg.B.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, seg.B.norm()))
            throw ParameterError("from_hamiltonian: B must be symmetric");
        Mat JB = J * seg.B;
        // split the segment so each exact exponential step stays small
        const double norm = JB.cwiseAbs().maxCoeff();
        int pieces = std::max(1, static_cast<int>(std::ceil(norm * seg.duration / 0.05)));
        const double h = seg.duration / pieces;
        Mat L = h * JB;
        Mat step = L.exp();
        for (int k = 0; k < pieces; ++k) {
            // gamma(t0 + s) = exp(s J B) gamma(t0); as a right-multiplied
            // geodesic the segment log is gamma(t0)^{-1} L gamma(t0)
            logs.push_back(samples.back().m.partialPivLu().solve(L * samples.back().m));
            cur = step * cur;
            t += h;
            samples.push_back({t, cur});
        }
    }
    return from_arc(Arc(n, std::move(samples), tol, std::move(logs)));
}

SymplecticPath SymplecticPath::canonical_generator(const Mat& M, const Tolerances& tol) {
    const int n = half_dim_checked(M, tol.sympl_tol, "canonical_generator");
    SymplecticPolar polar = symplectic_polar(M, tol.sympl_tol);
    const int steps = 48;
    std::vector<PathSample> samples;
    samples.reserve(steps + 1);
    for (int k = 0; k <= steps; ++k) {
        double t = static_cast<double>(k) / steps;
        Mat m = spd_power(polar.P, t) * ortho_symplectic_interp(polar.O, t);
        samples.push_back({t, std::move(m)});
    }
    // the polar endpoint carries some factorization noise; pin it to M itself
    if (sup_dist(samples.back().m, M) > 1e-8 * std::max(1.0, M.norm()))
        throw NumericalError("canonical_generator: polar endpoint drifted from M");
    samples.back().m = M;
    (void)n;
    return from_arc(Arc(n, std::move(samples), tol));
}

SymplecticPath SymplecticPath::iterate(int m) const {
    if (m <= 0) throw ParameterError("iterate: m must be positive");
    if (m == 1) return *this;
    const long total = static_cast<long>(m) * iterations_;
    if (total > 100000)
        throw ParameterError("iterate: iteration count too large for a materialized path; "
                             "use the profile-based closed forms");
    return SymplecticPath(base_, static_cast<int>(total));
}

Mat SymplecticPath::eval(double t) const {
    const double tau_b = base_->length();
    const double T = tau();
    if (t < -1e-9 || t > T + 1e-9)
        throw ParameterError("SymplecticPath::eval: parameter outside [0, m tau]");
    t = std::clamp(t, 0.0, T);
    int j = static_cast<int>(std::floor(t / tau_b));
    if (j >= iterations_) j = iterations_ - 1;
    double s = t - j * tau_b;
    if (j == 0) return base_->eval(s);
    return base_->eval(s) * powers_[static_cast<size_t>(j)];
}

std::vector<double> SymplecticPath::scan_times() const {
    const double tau_b = base_->length();
    std::vector<double> out;
    out.reserve(base_->samples().size() * static_cast<size_t>(iterations_));
    for (int j = 0; j < iterations_; ++j) {
        for (const auto& s : base_->samples()) {
            double t = j * tau_b + s.t;
            if (!out.empty() && t - out.back() < 1e-15) continue;
            out.push_back(t);
        }
    }
    double T = tau();
    if (out.back() < T) out.push_back(T);
    return out;
}

SymplecticPath rotation_path(double theta, double tau, const Tolerances& tol) {
    Mat B = (theta / tau) * Mat::Identity(2, 2);
    return SymplecticPath::from_hamiltonian(1, {{tau, B}}, tol);
}

} // namespace sympl
