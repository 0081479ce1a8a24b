#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dls/geometry.hpp"

namespace dls {

// centroid: continuous centers via per-block means; exact only for squared
//           euclidean. discrete: centers restricted to data points; valid
//           for every supported metric, overestimates the continuous
//           optimum by at most 2^ell.
enum class CenterMode { centroid, discrete };

std::string to_string(CenterMode mode);
CenterMode center_mode_from_string(const std::string& name);

struct OptimalClustering {
    std::vector<std::size_t> labels;  // per-point cluster id, 0..k-1
    double phi_star = 0.0;
    CenterSet centers;
    CenterMode mode = CenterMode::centroid;
    std::vector<double> cluster_phi_star;
    std::vector<std::size_t> cluster_size;
};

// Globally optimal k-clustering within the declared mode, by exhaustive
// enumeration: restricted-growth strings over set partitions (centroid
// mode, n <= 14) or lexicographic k-subsets of the points (discrete mode,
// C(n, k) <= 10^7). Deterministic: the first optimum in enumeration order
// wins ties. Instances beyond the guards raise an error rather than
// falling back to a heuristic.
OptimalClustering optimal_k_clustering(const Dataset& ds, std::size_t k, const MetricSpec& m,
                                       CenterMode mode);

struct ExpectationReport {
    double expected_phi = 0.0;
    std::uint64_t branch_count = 0;   // enumerated leaves
    std::size_t max_depth = 0;
    double probability_mass = 0.0;    // sums to 1 within 1e-10
};

// Exact expected final potential of the seeding procedure, by depth-first
// enumeration of every center sequence weighted by its selection
// probability. With an empty initial set the first level is the uniform
// pick and t-1 weighted picks follow; otherwise all t picks are
// cost-weighted on top of the initial centers. Zero-probability branches
// (zero-cost points) are pruned, which is exact; once the total cost hits
// zero the branch terminates with final potential zero. Requires
// n^t <= 10^7.
ExpectationReport exhaustive_expected_phi(const Dataset& ds, std::size_t t, const MetricSpec& m,
                                          const CenterSet& initial = CenterSet{});

struct CoverBoundReport {
    double expected_phi = 0.0;  // exact E[phi' | initial]
    double bound = 0.0;         // (1+H_t) phi(V) + (1+H_{t-1}) rho(U) + ((u-t)/u) phi(U)
    double phi_covered = 0.0;
    double phi_uncovered = 0.0;
    double rho_uncovered = 0.0;  // r_d * optimal potential of the uncovered clusters
    std::size_t uncovered = 0;   // u
    std::size_t picks = 0;       // t <= u
    bool holds = false;
    double slack = 0.0;          // bound - expected_phi
};

// Checks the harmonic-coefficient bound on the expected potential after
// adding t <= u cost-weighted centers, where u counts the optimal clusters
// not yet covered by the initial centers (a cluster is covered when an
// initial center coincides with one of its points).
CoverBoundReport verify_cover_bound(const Dataset& ds, std::size_t k, const CenterSet& initial,
                                    std::size_t t, const MetricSpec& m, CenterMode mode);

}  // namespace dls
