#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dls {

using Point = std::vector<double>;

enum class MetricKind { euclidean, manhattan };

std::string to_string(MetricKind kind);
MetricKind metric_kind_from_string(const std::string& name);

// Distance kind plus the cost exponent ell >= 1. ell = 2 with euclidean is
// the k-means setting, ell = 1 the k-medians setting.
struct MetricSpec {
    MetricKind kind = MetricKind::euclidean;
    double ell = 2.0;

    bool squared_euclidean() const { return kind == MetricKind::euclidean && ell == 2.0; }
};

void validate(const MetricSpec& m);

// Immutable point set. All points share one dimension and all coordinates
// are finite; enforced at construction.
class Dataset {
public:
    explicit Dataset(std::vector<Point> points);

    std::size_t size() const { return points_.size(); }
    std::size_t dim() const { return dim_; }
    const Point& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<Point>& points() const { return points_; }

private:
    std::vector<Point> points_;
    std::size_t dim_;
};

// Ordered centers; origin[i] holds the dataset index a center was drawn
// from, or nullopt for synthetic centers (centroids, user input).
struct CenterSet {
    std::vector<Point> centers;
    std::vector<std::optional<std::size_t>> origin;

    void add(Point c, std::optional<std::size_t> from = std::nullopt) {
        centers.push_back(std::move(c));
        origin.push_back(from);
    }
    std::size_t size() const { return centers.size(); }
    bool empty() const { return centers.empty(); }

    static CenterSet from_data_indices(const Dataset& ds, std::span<const std::size_t> idx);
};

// owner[i] is the index of the nearest center (ties to the smallest center
// index); cost[i] the point's contribution D(x_i, c_owner)^ell.
struct Assignment {
    std::vector<std::size_t> owner;
    std::vector<double> cost;
};

struct PotentialResult {
    double phi = 0.0;
    Assignment assignment;
};

double distance(const Point& x, const Point& y, const MetricSpec& m);

// D(x, y)^ell for the pair; exact for ell = 1 and ell = 2
double pair_cost(const Point& x, const Point& y, const MetricSpec& m);

PotentialResult potential(const Dataset& ds, const CenterSet& cs, const MetricSpec& m);

double subset_potential(const Assignment& a, std::span<const std::size_t> subset);

}  // namespace dls
