#pragma once

#include <cstdint>
#include <optional>

namespace dls {

// H_k = 1 + 1/2 + ... + 1/k, with H_0 = 0 and H_{-1} = -1 by convention.
// Exact partial sum (compensated) up to 10^6; Euler-Maclaurin beyond,
// which agrees with the partial sum to full double precision there.
double harmonic(std::int64_t k);

// Expected single-cluster cost inflation factors: r_u for a uniformly
// drawn in-cluster center, r_d for a cost-weighted one.
//   r_u = 2 when ell = 2 with euclidean distance, else 2^ell;  r_d = 2^ell r_u.
struct ClusterRatios {
    double r_u;
    double r_d;
};
ClusterRatios single_cluster_ratios(double ell, bool squared_euclidean);

struct BoundInputs {
    std::size_t k;          // benchmark cluster count, >= 2
    double beta;            // oversampling factor, >= 1
    double ell;             // cost exponent, >= 1
    bool squared_euclidean; // ell = 2 with euclidean distance
    std::optional<std::size_t> n = std::nullopt;  // dataset size, enables the -2C/n refinement
};

struct BoundReport {
    double r_u = 0.0;
    double r_d = 0.0;
    double harmonic_term = 0.0;   // H_{k-1}
    double finite_term = 0.0;     // golden (k-2) / ((beta-1) k + golden)
    double ratio_bound = 0.0;     // r_d (1 + min{finite_term, harmonic_term}) [- 2C/n]
    double oversampling_bound = 0.0;  // r_d (1 + golden/(beta-1)); +inf at beta = 1
    double refinement_constant = 0.0; // C
    // value not exceeded with probability >= 1 - tail_mass (Markov)
    double markov_at(double tail_mass) const;
};

// Expected approximation-ratio bound for selecting beta*k centers by
// cost-weighted sampling, against the optimal k-clustering.
BoundReport evaluate_bounds(const BoundInputs& in);

// k-independent form, valid for beta > 1; decreasing in beta with
// asymptote r_d.
double oversampling_bound(double beta, double ell, bool squared_euclidean);

// Smallest beta at which the finite term drops to H_{k-1}, found by
// bisection on the finite term as implemented (not via the rearranged
// closed form). Returns 1 for k <= 3, where the finite term already wins
// at beta = 1.
double critical_oversampling(std::size_t k);

// Rearranged closed form 1 + coeff (k - 2 - H_{k-1}) / (k H_{k-1}), with a
// configurable leading coefficient, for cross-checking the solve. The
// derivation gives coeff = golden; coeff = 1 reproduces a commonly quoted
// variant of the value at k = 22 (1.204 vs 1.330).
double critical_oversampling_formula(std::size_t k, double coeff);

// C = r_d cu(beta k - 1, k - 1) - r_u cv(beta k - 1, k - 1), evaluated via
// the simplified rational form
//   r_u [ (2^ell - 1)(beta - 1) k + golden ((2^ell - 1)(k - 1) - 1) ] / ((beta - 1) k + golden)
// and cross-checked against the coefficient definition to 1e-12 relative.
// Non-negative for k >= 2, beta >= 1, ell >= 1.
double refinement_constant(std::size_t k, double beta, double ell, bool squared_euclidean);

// the defining route, via the golden-parameter closed-form coefficients
double refinement_constant_from_coefficients(std::size_t k, double beta, double ell,
                                             bool squared_euclidean);

// Markov step: a mean bounded by mean_bound is exceeded beyond
// mean_bound / tail_mass with probability at most tail_mass, i.e. the
// returned value holds with probability >= 1 - tail_mass.
double markov_tail(double mean_bound, double tail_mass);

}  // namespace dls
