#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dls/geometry.hpp"

namespace dls {

struct SamplerConfig {
    std::size_t t = 1;            // number of centers to select, 1 <= t <= n
    std::uint64_t seed = 0;
    MetricSpec metric;
    std::size_t lloyd_iters = 0;  // 0 = off; refinement needs euclidean ell = 2
};

struct SamplingTrace {
    std::vector<std::size_t> chosen;  // dataset indices in selection order
    std::vector<double> phi_after;    // potential after each selection; non-increasing
    CenterSet final_centers;
    bool degenerate = false;  // total cost hit zero before t picks (duplicate-heavy input)
};

// Cost-weighted seeding: the first center is uniform over the points, each
// later one is a data point drawn with probability proportional to its
// current cost min_j D(x_i, c_j)^ell, and costs are min-updated after every
// pick. Fully determined by cfg.seed (see rng.hpp for the generator and
// the weighted-pick walk below). If every residual cost reaches zero
// early, the remaining centers are drawn uniformly from the not yet chosen
// indices and the trace is flagged degenerate.
SamplingTrace d_ell_sample(const Dataset& ds, const SamplerConfig& cfg);

// p_i = costs[i] / sum(costs); requires at least one positive cost
std::vector<double> selection_distribution(std::span<const double> costs);

// Alternates centroid update and nearest-center reassignment for at most
// iters rounds, stopping early once the assignment is stable. Squared
// euclidean only. A center whose cluster empties is kept unchanged for
// that round. The potential never increases.
CenterSet lloyd_refine(const Dataset& ds, const CenterSet& cs, std::size_t iters);

}  // namespace dls
