#pragma once

#include <memory>
#include <vector>

#include "sympl/matrix.hpp"

namespace sympl {

struct PathSample {
    double t;
    Mat m;
};

struct HamiltonianSegment {
    double duration;
    Mat B;  // symmetric; the flow solves gamma' = J B gamma
};

// A continuous arc in Sp(2n) stored as refined samples with geodesic
// (log/exp) interpolation between them. Immutable after construction; all
// interpolation data is precomputed, so instances can be shared across
// threads.
class Arc {
public:
    Arc(int n, std::vector<PathSample> samples, const Tolerances& tol,
        std::vector<Mat> segment_logs = {});

    int half_dim() const { return n_; }
    double length() const { return samples_.back().t; }
    const Mat& start() const { return samples_.front().m; }
    const Mat& end() const { return samples_.back().m; }
    const std::vector<PathSample>& samples() const { return samples_; }

    Mat eval(double t) const;

    const Tolerances& tol() const { return tol_; }

private:
    void check_and_refine(bool logs_given);

    int n_;
    std::vector<PathSample> samples_;
    std::vector<Mat> logs_;  // logs_[k] = log(M_k^{-1} M_{k+1})
    Tolerances tol_;
};

// The reference arc t -> diag(2 - t/tau, (2 - t/tau)^{-1})^{<> n}, running
// from D(2)^{<> n} at t = 0 to the identity at t = tau.
Arc xi_arc(int n, double tau, const Tolerances& tol = Tolerances{});

// first traversed on [0, tau/2] at doubled speed, then second on [tau/2, tau].
// Requires first.end() == second.start() and equal parameter lengths.
Arc concat(const Arc& first, const Arc& second);

// A symplectic path gamma with gamma(0) = I, held as a base arc plus an
// iteration count m. Evaluation follows gamma^m(j tau + s) = gamma(s)
// gamma(tau)^j, so iterates of hyperbolic paths never materialize their
// exponentially large samples.
class SymplecticPath {
public:
    static SymplecticPath from_samples(int n, std::vector<PathSample> samples,
                                       const Tolerances& tol = Tolerances{});
    // Piecewise-constant Hamiltonian generator, integrated by exact matrix
    // exponentials of J B.
    static SymplecticPath from_hamiltonian(int n, const std::vector<HamiltonianSegment>& segments,
                                           const Tolerances& tol = Tolerances{});
    // Canonical generator ending at M: t -> P^t O_t from the symplectic polar
    // factorization M = P O.
    static SymplecticPath canonical_generator(const Mat& M, const Tolerances& tol = Tolerances{});
    // Wrap an already-built arc starting at the identity.
    static SymplecticPath from_arc(Arc arc);

    SymplecticPath iterate(int m) const;

    int half_dim() const { return base_->half_dim(); }
    double tau() const { return iterations_ * base_->length(); }
    int iterations() const { return iterations_; }
    const Arc& base() const { return *base_; }
    const Mat& end() const { return powers_.back(); }
    const Mat& base_end() const { return base_->end(); }
    const Tolerances& tol() const { return base_->tol(); }

    Mat eval(double t) const;

    // times whose images, together with geodesic interpolation in between,
    // resolve the path at the refinement granularity
    std::vector<double> scan_times() const;

    // nu_omega(gamma) = nu_omega(gamma(tau))
    int nullity(Cx omega) const { return nullity_at(end(), omega, base_->tol()); }

private:
    SymplecticPath(std::shared_ptr<const Arc> base, int iterations);

    std::shared_ptr<const Arc> base_;
    int iterations_ = 1;
    std::vector<Mat> powers_;  // gamma(tau)^j for j = 0..iterations
};

// Convenience: the rotation path t -> R(t theta / tau) in Sp(2), built from
// its Hamiltonian generator.
SymplecticPath rotation_path(double theta, double tau = 1.0,
                             const Tolerances& tol = Tolerances{});

} // namespace sympl
