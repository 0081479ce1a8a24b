#include "dls/sampler.hpp"

#include <algorithm>
#include <stdexcept>

#include "dls/rng.hpp"
#include "dls/summation.hpp"

namespace dls {

namespace {

// First index whose cumulative normalized mass reaches r, walking in
// ascending index order. Zero-mass entries are skipped (their selection
// probability is exactly zero); if rounding leaves the final cumulative
// just short of 1, the last positive-mass index is returned.
std::size_t pick_weighted(std::span<const double> costs, double total, double r) {
    double cum = 0.0;
    std::size_t last_positive = costs.size();
    for (std::size_t i = 0; i < costs.size(); ++i) {
        if (!(costs[i] > 0.0)) continue;
        last_positive = i;
        cum += costs[i] / total;
        if (cum >= r) return i;
    }
    if (last_positive == costs.size())
        throw std::invalid_argument("weighted pick requires a positive total mass");
    return last_positive;
}

}  // namespace

std::vector<double> selection_distribution(std::span<const double> costs) {
    if (costs.empty()) throw std::invalid_argument("selection_distribution: empty cost vector");
    CompensatedSum total;
    for (double c : costs) {
        if (!(c >= 0.0)) throw std::invalid_argument("selection_distribution: negative cost");
        total.add(c);
    }
    const double t = total.value();
    if (!(t > 0.0)) throw std::invalid_argument("selection_distribution: all costs are zero");
    std::vector<double> p(costs.size());
    for (std::size_t i = 0; i < costs.size(); ++i) p[i] = costs[i] / t;
    return p;
}

SamplingTrace d_ell_sample(const Dataset& ds, const SamplerConfig& cfg) {
    validate(cfg.metric);
    const std::size_t n = ds.size();
    if (cfg.t < 1 || cfg.t > n)
        throw std::invalid_argument("d_ell_sample requires 1 <= t <= n");
    if (cfg.lloyd_iters > 0 && !cfg.metric.squared_euclidean())
        throw std::invalid_argument("lloyd refinement requires euclidean distance with ell = 2");

    Rng rng(cfg.seed);
    SamplingTrace trace;
    std::vector<double> costs(n);
    std::vector<bool> taken(n, false);

    const std::size_t first = rng.next_index(n);
    trace.chosen.push_back(first);
    taken[first] = true;
    for (std::size_t i = 0; i < n; ++i) costs[i] = pair_cost(ds[i], ds[first], cfg.metric);
    trace.phi_after.push_back(compensated_total(costs.begin(), costs.end()));

    for (std::size_t j = 1; j < cfg.t; ++j) {
        const double total = trace.phi_after.back();
        std::size_t pick;
        if (total > 0.0) {
            pick = pick_weighted(costs, total, rng.next_double());
        } else {
            // all residual costs are zero; fall back to uniform over the
            // not yet chosen indices
            trace.degenerate = true;
            std::vector<std::size_t> open;
            for (std::size_t i = 0; i < n; ++i)
                if (!taken[i]) open.push_back(i);
            pick = open[rng.next_index(open.size())];
        }
        trace.chosen.push_back(pick);
        taken[pick] = true;
        for (std::size_t i = 0; i < n; ++i)
            costs[i] = std::min(costs[i], pair_cost(ds[i], ds[pick], cfg.metric));
        trace.phi_after.push_back(compensated_total(costs.begin(), costs.end()));
    }

    trace.final_centers = CenterSet::from_data_indices(ds, trace.chosen);
    if (cfg.lloyd_iters > 0)
        trace.final_centers = lloyd_refine(ds, trace.final_centers, cfg.lloyd_iters);
    return trace;
}

CenterSet lloyd_refine(const Dataset& ds, const CenterSet& cs, std::size_t iters) {
    if (cs.empty()) throw std::invalid_argument("lloyd_refine requires a nonempty center set");
    const MetricSpec m{MetricKind::euclidean, 2.0};
    CenterSet out = cs;
    if (iters == 0) return out;

    auto cur = potential(ds, out, m);
    for (std::size_t round = 0; round < iters; ++round) {
        std::vector<Point> sums(out.size(), Point(ds.dim(), 0.0));
        std::vector<std::size_t> counts(out.size(), 0);
        for (std::size_t i = 0; i < ds.size(); ++i) {
            const std::size_t j = cur.assignment.owner[i];
            ++counts[j];
            for (std::size_t dd = 0; dd < ds.dim(); ++dd) sums[j][dd] += ds[i][dd];
        }
        for (std::size_t j = 0; j < out.size(); ++j) {
            if (counts[j] == 0) continue;  // empty cluster: center retained this round
            Point centroid(ds.dim());
            for (std::size_t dd = 0; dd < ds.dim(); ++dd)
                centroid[dd] = sums[j][dd] / static_cast<double>(counts[j]);
            if (centroid != out.centers[j]) {
                out.centers[j] = std::move(centroid);
                out.origin[j] = std::nullopt;
            }
        }
        auto next = potential(ds, out, m);
        const bool stable = next.assignment.owner == cur.assignment.owner;
        cur = std::move(next);
        if (stable) break;
    }
    return out;
}

}  // namespace dls
