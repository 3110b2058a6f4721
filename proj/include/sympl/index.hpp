#pragma once

#include <map>
#include <vector>

#include "sympl/path.hpp"

namespace sympl {

struct CrossingRecord {
    double t;      // path parameter; negative values index into the reference arc
    int sign;      // +1 or -1
};

struct IndexDiagnostics {
    std::vector<CrossingRecord> crossings;
    int attempts = 0;             // perturbation attempts consumed
    double bump_delta = 0.0;      // interior perturbation of the accepted attempt
    double endpoint_delta = 0.0;  // endpoint rotation (degenerate branch only)
    bool degenerate_end = false;
    int index_plus = 0;           // one-sided values realizing the infimum
    int index_minus = 0;
};

// Shared eigenvalue cache for repeated scans of one concatenated path at many
// omegas. Only consulted for unperturbed evaluations; confined to a single
// computation, never shared across threads.
class SpectrumCache {
public:
    const std::vector<Cx>* find(double w) const {
        auto it = data_.find(w);
        return it == data_.end() ? nullptr : &it->second;
    }
    void insert(double w, std::vector<Cx> eigs) { data_.emplace(w, std::move(eigs)); }

private:
    std::map<double, std::vector<Cx>> data_;
};

// The omega-index of a symplectic path: the signed count of crossings of the
// concatenated path gamma * xi_n through the hypersurface {D_omega = 0}, each
// crossing signed against the rotation co-orientation. Degenerate endpoints
// take the minimum over the two one-sided endpoint rotations.
int index_omega(const SymplecticPath& gamma, Cx omega, IndexDiagnostics* diag = nullptr,
                SpectrumCache* cache = nullptr);

} // namespace sympl
