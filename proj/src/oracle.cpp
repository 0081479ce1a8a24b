#include "dls/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dls/bounds.hpp"
#include "dls/summation.hpp"

namespace dls {

namespace {

constexpr std::size_t kMaxPartitionPoints = 14;
constexpr double kMaxEnumeration = 1e7;

// Enumerates partitions of {0..n-1} into exactly k nonempty blocks as
// restricted-growth strings, keeping per-block coordinate sums and squared
// norms so each block cost is Sum ||x||^2 - ||Sum x||^2 / |B|.
class PartitionSearch {
public:
    PartitionSearch(const Dataset& ds, std::size_t k) : ds_(ds), k_(k) {
        labels_.resize(ds.size());
        block_sum_.assign(k, Point(ds.dim(), 0.0));
        block_sumsq_.assign(k, 0.0);
        block_count_.assign(k, 0);
        point_sumsq_.resize(ds.size());
        for (std::size_t i = 0; i < ds.size(); ++i) {
            double s = 0.0;
            for (double c : ds[i]) s += c * c;
            point_sumsq_[i] = s;
        }
    }

    void run() { descend(0, 0); }

    bool found() const { return best_cost_ < std::numeric_limits<double>::infinity(); }
    double best_cost() const { return best_cost_; }
    const std::vector<std::size_t>& best_labels() const { return best_labels_; }

private:
    void descend(std::size_t i, std::size_t used) {
        // not enough positions left to open the remaining blocks
        if (k_ - used > ds_.size() - i) return;
        if (i == ds_.size()) {
            if (used == k_) consider();
            return;
        }
        const std::size_t top = std::min(used + 1, k_);
        for (std::size_t v = 0; v < top; ++v) {
            labels_[i] = v;
            push(i, v);
            descend(i + 1, std::max(used, v + 1));
            pop(i, v);
        }
    }

    void push(std::size_t i, std::size_t v) {
        for (std::size_t d = 0; d < ds_.dim(); ++d) block_sum_[v][d] += ds_[i][d];
        block_sumsq_[v] += point_sumsq_[i];
        ++block_count_[v];
    }

    void pop(std::size_t i, std::size_t v) {
        for (std::size_t d = 0; d < ds_.dim(); ++d) block_sum_[v][d] -= ds_[i][d];
        block_sumsq_[v] -= point_sumsq_[i];
        --block_count_[v];
    }

    void consider() {
        CompensatedSum cost;
        for (std::size_t v = 0; v < k_; ++v) {
            double norm_sq = 0.0;
            for (double c : block_sum_[v]) norm_sq += c * c;
            cost.add(block_sumsq_[v] - norm_sq / static_cast<double>(block_count_[v]));
        }
        const double total = cost.value();
        if (total < best_cost_) {
            best_cost_ = total;
            best_labels_ = labels_;
        }
    }

    const Dataset& ds_;
    std::size_t k_;
    std::vector<std::size_t> labels_;
    std::vector<Point> block_sum_;
    std::vector<double> block_sumsq_;
    std::vector<std::size_t> block_count_;
    std::vector<double> point_sumsq_;
    double best_cost_ = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> best_labels_;
};

double binomial(std::size_t n, std::size_t k) {
    double v = 1.0;
    for (std::size_t i = 0; i < k; ++i) v = v * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return v;
}

OptimalClustering centroid_optimum(const Dataset& ds, std::size_t k, const MetricSpec& m) {
    if (!m.squared_euclidean())
        throw std::invalid_argument("centroid mode requires euclidean distance with ell = 2");
    if (ds.size() > kMaxPartitionPoints)
        throw std::domain_error("instance too large for set-partition enumeration (n <= 14); reduce n or use discrete mode");

    PartitionSearch search(ds, k);
    search.run();

    OptimalClustering out;
    out.mode = CenterMode::centroid;
    out.labels = search.best_labels();
    out.cluster_size.assign(k, 0);
    std::vector<Point> sums(k, Point(ds.dim(), 0.0));
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const std::size_t v = out.labels[i];
        ++out.cluster_size[v];
        for (std::size_t d = 0; d < ds.dim(); ++d) sums[v][d] += ds[i][d];
    }
    for (std::size_t v = 0; v < k; ++v) {
        Point c(ds.dim());
        for (std::size_t d = 0; d < ds.dim(); ++d)
            c[d] = sums[v][d] / static_cast<double>(out.cluster_size[v]);
        out.centers.add(std::move(c));
    }
    out.cluster_phi_star.assign(k, 0.0);
    CompensatedSum total;
    std::vector<CompensatedSum> per_cluster(k);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const std::size_t v = out.labels[i];
        const double c = pair_cost(ds[i], out.centers.centers[v], m);
        per_cluster[v].add(c);
        total.add(c);
    }
    for (std::size_t v = 0; v < k; ++v) out.cluster_phi_star[v] = per_cluster[v].value();
    out.phi_star = total.value();
    return out;
}

OptimalClustering discrete_optimum(const Dataset& ds, std::size_t k, const MetricSpec& m) {
    const std::size_t n = ds.size();
    if (binomial(n, k) > kMaxEnumeration)
        throw std::domain_error("instance too large for center-subset enumeration (C(n,k) <= 10^7); reduce n or k");

    // TODO: prune combinations against best_cost with a partial-assignment
    // bound to push the C(n,k) guard higher
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    std::vector<std::size_t> best_idx;
    double best_cost = std::numeric_limits<double>::infinity();
    for (;;) {
        const CenterSet cs = CenterSet::from_data_indices(ds, idx);
        const auto pot = potential(ds, cs, m);
        if (pot.phi < best_cost) {
            best_cost = pot.phi;
            best_idx = idx;
        }
        // next lexicographic combination
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }

    OptimalClustering out;
    out.mode = CenterMode::discrete;
    out.centers = CenterSet::from_data_indices(ds, best_idx);
    const auto pot = potential(ds, out.centers, m);
    out.labels = pot.assignment.owner;
    out.phi_star = pot.phi;
    out.cluster_size.assign(k, 0);
    out.cluster_phi_star.assign(k, 0.0);
    std::vector<CompensatedSum> per_cluster(k);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        ++out.cluster_size[pot.assignment.owner[i]];
        per_cluster[pot.assignment.owner[i]].add(pot.assignment.cost[i]);
    }
    for (std::size_t v = 0; v < k; ++v) out.cluster_phi_star[v] = per_cluster[v].value();
    return out;
}

class ExpectationSearch {
public:
    ExpectationSearch(const Dataset& ds, const MetricSpec& m, std::size_t t)
        : ds_(ds), m_(m), t_(t) {}

    void run(std::vector<double> costs, bool uniform_first) {
        if (uniform_first) {
            const double p = 1.0 / static_cast<double>(ds_.size());
            std::vector<double> child(ds_.size());
            for (std::size_t i = 0; i < ds_.size(); ++i) {
                for (std::size_t q = 0; q < ds_.size(); ++q)
                    child[q] = pair_cost(ds_[q], ds_[i], m_);
                descend(child, 1, p);
            }
        } else {
            descend(costs, 0, 1.0);
        }
    }

    ExpectationReport report() const {
        ExpectationReport rep;
        rep.expected_phi = expectation_.value();
        rep.branch_count = branches_;
        rep.max_depth = max_depth_;
        rep.probability_mass = mass_.value();
        return rep;
    }

private:
    void leaf(const std::vector<double>& costs, std::size_t depth, double prob) {
        expectation_.add(prob * compensated_total(costs.begin(), costs.end()));
        mass_.add(prob);
        ++branches_;
        max_depth_ = std::max(max_depth_, depth);
    }

    void descend(const std::vector<double>& costs, std::size_t depth, double prob) {
        if (depth == t_) {
            leaf(costs, depth, prob);
            return;
        }
        const double total = compensated_total(costs.begin(), costs.end());
        if (!(total > 0.0)) {
            // every point is covered exactly; further picks cannot change phi = 0
            leaf(costs, depth, prob);
            return;
        }
        std::vector<double> child(costs.size());
        for (std::size_t i = 0; i < costs.size(); ++i) {
            if (!(costs[i] > 0.0)) continue;  // exact zero-probability prune
            for (std::size_t q = 0; q < costs.size(); ++q)
                child[q] = std::min(costs[q], pair_cost(ds_[q], ds_[i], m_));
            descend(child, depth + 1, prob * (costs[i] / total));
        }
    }

    const Dataset& ds_;
    const MetricSpec& m_;
    std::size_t t_;
    CompensatedSum expectation_;
    CompensatedSum mass_;
    std::uint64_t branches_ = 0;
    std::size_t max_depth_ = 0;
};

}  // namespace

std::string to_string(CenterMode mode) {
    return mode == CenterMode::centroid ? "centroid" : "discrete";
}

CenterMode center_mode_from_string(const std::string& name) {
    if (name == "centroid") return CenterMode::centroid;
    if (name == "discrete") return CenterMode::discrete;
    throw std::invalid_argument("unknown center mode: " + name);
}

OptimalClustering optimal_k_clustering(const Dataset& ds, std::size_t k, const MetricSpec& m,
                                       CenterMode mode) {
    validate(m);
    if (k < 1 || k > ds.size())
        throw std::invalid_argument("optimal_k_clustering requires 1 <= k <= n");
    return mode == CenterMode::centroid ? centroid_optimum(ds, k, m) : discrete_optimum(ds, k, m);
}

ExpectationReport exhaustive_expected_phi(const Dataset& ds, std::size_t t, const MetricSpec& m,
                                          const CenterSet& initial) {
    validate(m);
    if (initial.empty() && t < 1)
        throw std::invalid_argument("exhaustive_expected_phi requires t >= 1 without initial centers");
    if (std::pow(static_cast<double>(ds.size()), static_cast<double>(t)) > kMaxEnumeration)
        throw std::domain_error("instance too large for exhaustive expectation (n^t <= 10^7); reduce n or t");

    ExpectationSearch search(ds, m, t);
    if (initial.empty()) {
        search.run({}, true);
    } else {
        search.run(potential(ds, initial, m).assignment.cost, false);
    }
    return search.report();
}

CoverBoundReport verify_cover_bound(const Dataset& ds, std::size_t k, const CenterSet& initial,
                                    std::size_t t, const MetricSpec& m, CenterMode mode) {
    if (initial.empty()) throw std::invalid_argument("verify_cover_bound requires initial centers");
    const auto opt = optimal_k_clustering(ds, k, m, mode);

    std::vector<bool> covered(k, false);
    for (std::size_t j = 0; j < initial.size(); ++j) {
        if (initial.origin[j]) {
            covered[opt.labels[*initial.origin[j]]] = true;
            continue;
        }
        // synthetic center: covers any cluster holding a coincident point
        for (std::size_t i = 0; i < ds.size(); ++i)
            if (ds[i] == initial.centers[j]) covered[opt.labels[i]] = true;
    }

    CoverBoundReport rep;
    for (std::size_t v = 0; v < k; ++v)
        if (!covered[v]) ++rep.uncovered;
    rep.picks = t;
    if (t > rep.uncovered)
        throw std::invalid_argument("verify_cover_bound requires t <= number of uncovered clusters");

    const auto pot = potential(ds, initial, m);
    CompensatedSum phi_v, phi_u;
    for (std::size_t i = 0; i < ds.size(); ++i)
        (covered[opt.labels[i]] ? phi_v : phi_u).add(pot.assignment.cost[i]);
    rep.phi_covered = phi_v.value();
    rep.phi_uncovered = phi_u.value();

    const double r_d = single_cluster_ratios(m.ell, m.squared_euclidean()).r_d;
    CompensatedSum rho;
    for (std::size_t v = 0; v < k; ++v)
        if (!covered[v]) rho.add(opt.cluster_phi_star[v]);
    rep.rho_uncovered = r_d * rho.value();

    rep.expected_phi = exhaustive_expected_phi(ds, t, m, initial).expected_phi;

    const double h_t = harmonic(static_cast<std::int64_t>(t));
    const double h_t1 = harmonic(static_cast<std::int64_t>(t) - 1);
    const double tail = rep.uncovered > 0 ? static_cast<double>(rep.uncovered - t) /
                                                static_cast<double>(rep.uncovered) *
                                                rep.phi_uncovered
                                          : 0.0;
    rep.bound = (1.0 + h_t) * rep.phi_covered + (1.0 + h_t1) * rep.rho_uncovered + tail;
    rep.slack = rep.bound - rep.expected_phi;
    rep.holds = rep.expected_phi <= rep.bound + 1e-9 * std::max(1.0, std::fabs(rep.bound));
    return rep;
}

}  // namespace dls
