#include "dls/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dls/coeffs.hpp"
#include "dls/summation.hpp"

namespace dls {

namespace {

constexpr std::int64_t kHarmonicDirectMax = 1000000;
constexpr double kEulerGamma = 0.57721566490153286061;

void validate_ratio_inputs(double ell, bool squared_euclidean) {
    if (!(ell >= 1.0)) throw std::invalid_argument("ell must be >= 1");
    if (squared_euclidean && ell != 2.0)
        throw std::invalid_argument("squared_euclidean flag requires ell = 2");
}

double finite_term(std::size_t k, double beta) {
    const double kd = static_cast<double>(k);
    return kGoldenRatio * (kd - 2.0) / ((beta - 1.0) * kd + kGoldenRatio);
}

}  // namespace

double harmonic(std::int64_t k) {
    if (k < -1) throw std::invalid_argument("harmonic is defined for k >= -1");
    if (k == -1) return -1.0;
    if (k == 0) return 0.0;
    if (k <= kHarmonicDirectMax) {
        CompensatedSum acc;  // ascend from the smallest terms
        for (std::int64_t i = k; i >= 1; --i) acc.add(1.0 / static_cast<double>(i));
        return acc.value();
    }
    const double x = static_cast<double>(k);
    const double x2 = x * x;
    return std::log(x) + kEulerGamma + 1.0 / (2.0 * x) - 1.0 / (12.0 * x2) +
           1.0 / (120.0 * x2 * x2) - 1.0 / (252.0 * x2 * x2 * x2);
}

ClusterRatios single_cluster_ratios(double ell, bool squared_euclidean) {
    validate_ratio_inputs(ell, squared_euclidean);
    const double r_u = squared_euclidean ? 2.0 : std::pow(2.0, ell);
    return {r_u, std::pow(2.0, ell) * r_u};
}

double BoundReport::markov_at(double tail_mass) const { return markov_tail(ratio_bound, tail_mass); }

BoundReport evaluate_bounds(const BoundInputs& in) {
    if (in.k < 2) throw std::invalid_argument("bounds require k >= 2");
    if (!(in.beta >= 1.0)) throw std::invalid_argument("bounds require beta >= 1");
    validate_ratio_inputs(in.ell, in.squared_euclidean);

    BoundReport rep;
    const auto r = single_cluster_ratios(in.ell, in.squared_euclidean);
    rep.r_u = r.r_u;
    rep.r_d = r.r_d;
    rep.harmonic_term = harmonic(static_cast<std::int64_t>(in.k) - 1);
    rep.finite_term = finite_term(in.k, in.beta);
    rep.ratio_bound = rep.r_d * (1.0 + std::min(rep.finite_term, rep.harmonic_term));
    rep.refinement_constant = refinement_constant(in.k, in.beta, in.ell, in.squared_euclidean);
    if (in.n) {
        if (*in.n == 0) throw std::invalid_argument("n must be positive");
        rep.ratio_bound -= 2.0 * rep.refinement_constant / static_cast<double>(*in.n);
    }
    rep.oversampling_bound = in.beta > 1.0
                                 ? oversampling_bound(in.beta, in.ell, in.squared_euclidean)
                                 : std::numeric_limits<double>::infinity();
    return rep;
}

double oversampling_bound(double beta, double ell, bool squared_euclidean) {
    if (!(beta > 1.0)) throw std::invalid_argument("oversampling_bound requires beta > 1");
    validate_ratio_inputs(ell, squared_euclidean);
    return single_cluster_ratios(ell, squared_euclidean).r_d * (1.0 + kGoldenRatio / (beta - 1.0));
}

double critical_oversampling(std::size_t k) {
    if (k < 2) throw std::invalid_argument("critical_oversampling requires k >= 2");
    const double h = harmonic(static_cast<std::int64_t>(k) - 1);
    if (finite_term(k, 1.0) <= h) return 1.0;  // k = 2, 3: finite term wins outright
    // finite_term is continuous and strictly decreasing in beta, so bisect
    double lo = 1.0;
    double hi = 2.0;
    while (finite_term(k, hi) > h) hi *= 2.0;
    for (int iter = 0; iter < 200 && hi - lo > 1e-14 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (finite_term(k, mid) > h ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double critical_oversampling_formula(std::size_t k, double coeff) {
    if (k < 2) throw std::invalid_argument("critical_oversampling_formula requires k >= 2");
    const double kd = static_cast<double>(k);
    const double h = harmonic(static_cast<std::int64_t>(k) - 1);
    return 1.0 + coeff * (kd - 2.0 - h) / (kd * h);
}

double refinement_constant(std::size_t k, double beta, double ell, bool squared_euclidean) {
    if (k < 2) throw std::invalid_argument("refinement_constant requires k >= 2");
    if (!(beta >= 1.0)) throw std::invalid_argument("refinement_constant requires beta >= 1");
    validate_ratio_inputs(ell, squared_euclidean);
    const double r_u = single_cluster_ratios(ell, squared_euclidean).r_u;
    const double kd = static_cast<double>(k);
    const double p = std::pow(2.0, ell) - 1.0;
    const double c = r_u * (p * (beta - 1.0) * kd + kGoldenRatio * (p * (kd - 1.0) - 1.0)) /
                     ((beta - 1.0) * kd + kGoldenRatio);
    const double ref = refinement_constant_from_coefficients(k, beta, ell, squared_euclidean);
    const double scale = std::max({1.0, std::fabs(c), std::fabs(ref)});
    if (std::fabs(c - ref) > 1e-12 * scale)
        throw std::logic_error("refinement constant: simplified and coefficient routes disagree");
    if (c < -1e-12 * scale)
        throw std::logic_error("refinement constant: negative value for valid inputs");
    return c;
}

double refinement_constant_from_coefficients(std::size_t k, double beta, double ell,
                                             bool squared_euclidean) {
    const auto r = single_cluster_ratios(ell, squared_euclidean);
    const auto gp = CoeffParams::golden();
    const double t = beta * static_cast<double>(k) - 1.0;
    const double u = static_cast<double>(k) - 1.0;
    return r.r_d * closed_cu(t, u, gp) - r.r_u * closed_cv(t, u, gp);
}

double markov_tail(double mean_bound, double tail_mass) {
    if (!(tail_mass > 0.0 && tail_mass < 1.0))
        throw std::invalid_argument("tail_mass must lie in (0, 1)");
    if (!(mean_bound >= 0.0)) throw std::invalid_argument("mean_bound must be non-negative");
    return mean_bound / tail_mass;
}

}  // namespace dls
