#include "dls/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "dls/summation.hpp"

namespace dls {

std::string to_string(MetricKind kind) {
    return kind == MetricKind::euclidean ? "euclidean" : "manhattan";
}

MetricKind metric_kind_from_string(const std::string& name) {
    if (name == "euclidean") return MetricKind::euclidean;
    if (name == "manhattan") return MetricKind::manhattan;
    throw std::invalid_argument("unknown metric kind: " + name);
}

void validate(const MetricSpec& m) {
    if (!(m.ell >= 1.0) || !std::isfinite(m.ell))
        throw std::invalid_argument("metric exponent ell must be >= 1");
}

Dataset::Dataset(std::vector<Point> points) : points_(std::move(points)) {
    if (points_.empty()) throw std::invalid_argument("dataset must contain at least one point");
    dim_ = points_[0].size();
    if (dim_ == 0) throw std::invalid_argument("points must have dimension >= 1");
    for (const auto& p : points_) {
        if (p.size() != dim_) throw std::invalid_argument("all points must share one dimension");
        for (double c : p)
            if (!std::isfinite(c)) throw std::invalid_argument("coordinates must be finite");
    }
}

CenterSet CenterSet::from_data_indices(const Dataset& ds, std::span<const std::size_t> idx) {
    CenterSet cs;
    for (std::size_t i : idx) {
        if (i >= ds.size()) throw std::out_of_range("center index out of range");
        cs.add(ds[i], i);
    }
    return cs;
}

double distance(const Point& x, const Point& y, const MetricSpec& m) {
    if (x.size() != y.size()) throw std::invalid_argument("dimension mismatch in distance");
    CompensatedSum acc;
    if (m.kind == MetricKind::euclidean) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double d = x[i] - y[i];
            acc.add(d * d);
        }
        return std::sqrt(acc.value());
    }
    for (std::size_t i = 0; i < x.size(); ++i) acc.add(std::fabs(x[i] - y[i]));
    return acc.value();
}

double pair_cost(const Point& x, const Point& y, const MetricSpec& m) {
    const double d = distance(x, y, m);
    if (m.ell == 2.0) return d * d;
    if (m.ell == 1.0) return d;
    return std::pow(d, m.ell);
}

PotentialResult potential(const Dataset& ds, const CenterSet& cs, const MetricSpec& m) {
    validate(m);
    if (cs.empty()) throw std::invalid_argument("potential requires a nonempty center set");
    for (const auto& c : cs.centers)
        if (c.size() != ds.dim()) throw std::invalid_argument("center dimension mismatch");

    PotentialResult out;
    out.assignment.owner.resize(ds.size());
    out.assignment.cost.resize(ds.size());
    CompensatedSum total;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        std::size_t best = 0;
        double best_cost = pair_cost(ds[i], cs.centers[0], m);
        for (std::size_t j = 1; j < cs.size(); ++j) {
            const double c = pair_cost(ds[i], cs.centers[j], m);
            if (c < best_cost) {  // ties keep the smallest center index
                best_cost = c;
                best = j;
            }
        }
        out.assignment.owner[i] = best;
        out.assignment.cost[i] = best_cost;
        total.add(best_cost);
    }
    out.phi = total.value();
    return out;
}

double subset_potential(const Assignment& a, std::span<const std::size_t> subset) {
    CompensatedSum acc;
    for (std::size_t i : subset) {
        if (i >= a.cost.size()) throw std::out_of_range("subset index out of range");
        acc.add(a.cost[i]);
    }
    return acc.value();
}

}  // namespace dls
