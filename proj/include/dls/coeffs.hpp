#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace dls {

// golden ratio (1 + sqrt(5)) / 2
inline constexpr double kGoldenRatio = 1.6180339887498948482;

// Parameters of the closed-form coefficient family
//   cv(t, u) = 1 + (a+1) u / (t - u + b),  cu(t, u) = cv(t-1, u-1).
// Validity of the family as an upper-bound certificate additionally needs
// a + 1 >= b and a b >= 1; those are queryable, not enforced, so that the
// verifier can probe parameter choices that break them.
struct CoeffParams {
    double a;
    double b;

    CoeffParams(double a_, double b_);

    bool linear_constraint_ok() const { return a + 1.0 >= b; }   // a + 1 >= b
    bool product_constraint_ok() const { return a * b >= 1.0; }  // a b >= 1

    // minimizer of cv over the valid region: a = golden - 1, b = golden
    static CoeffParams golden() { return CoeffParams(kGoldenRatio - 1.0, kGoldenRatio); }
};

// closed-form cv / cu; real-valued arguments with t >= u >= 0
double closed_cv(double t, double u, const CoeffParams& p);
double closed_cu(double t, double u, const CoeffParams& p);

enum class GridSource { recursion, closed_form };

// Triangular table of coefficient values for 0 <= u <= t <= t_max.
struct CoeffGrid {
    std::size_t t_max = 0;
    GridSource source = GridSource::recursion;
    // cv[t][u], cu[t][u]; row t has t+1 entries
    std::vector<std::vector<double>> cv;
    std::vector<std::vector<double>> cu;

    double cv_at(std::size_t t, std::size_t u) const { return cv[t][u]; }
    double cu_at(std::size_t t, std::size_t u) const { return cu[t][u]; }
};

// Fills the table by treating the recursive sufficient conditions as
// equalities:
//   cv(t+1, u+1) = [ cv(t,u) + sqrt(cv(t,u)^2 + 4 max{cv(t,u+1) - cv(t,u), 0}) ] / 2
//   cu(t+1, u+1) = cv(t,u)
// with boundary rows cv(t,0) = 1, cu(t,0) = 0 and diagonal
// cv(u,u) = 1 + H_u, cu(u,u) = 1 + H_{u-1}. Outer loop ascends u, inner
// loop ascends t, matching the dependency order of the recursion.
CoeffGrid recursion_grid(std::size_t t_max);

CoeffGrid closed_form_grid(std::size_t t_max, const CoeffParams& p);

struct ConditionViolation {
    std::size_t t;
    std::size_t u;
    std::string condition;
    double lhs;
    double rhs;
};

// Checks, at every grid cell with t > u (and t < t_max for the recursive
// pair), the four sufficient conditions:
//   unit_lower_bound   cv(t, u+1) >= 1
//   cross_term         (cv(t,u+1) - cu(t,u+1)) cv(t,u)^2 >= (cu(t,u+1) - cv(t,u))^2
//   recursion_value    cv(t+1, u+1) >= [cv(t,u) + sqrt(cv(t,u)^2 + 4 max{cv(t,u+1)-cv(t,u), 0})]/2
//   recursion_shift    cu(t+1, u+1) >= cv(t,u)
// Inequalities are exact up to a 1e-12 rounding guard.
std::vector<ConditionViolation> verify_sufficient_conditions(const CoeffGrid& grid);
std::vector<ConditionViolation> verify_sufficient_conditions(const CoeffParams& p, std::size_t t_max);

struct IdentityCheck {
    std::string name;
    double max_abs_error = 0.0;
    std::size_t violations = 0;
};

struct IdentityReport {
    std::vector<IdentityCheck> checks;
    double tolerance = 1e-9;
    bool all_passed() const {
        for (const auto& c : checks)
            if (c.violations) return false;
        return true;
    }
};

// Numerically replays the algebra certifying the closed form: the
// difference/offset identities behind the cross-term condition, the
// expansion of the doubled recursion value, the radicand expansion, the
// rational form of their gap, and the final sign conditions (boundary case
// a b = 1 at t = u + 1 included). Each identity is evaluated on both sides
// at every (t, u), t > u, up to t_max.
IdentityReport verify_closed_form_identities(const CoeffParams& p, std::size_t t_max,
                                          double tol = 1e-9);

struct DeviationStats {
    // relative deviation of grid cv from the reference surface t / (t - u)
    double min_dev = 0.0;
    double max_dev = 0.0;
    double mean_dev = 0.0;
    std::size_t cells = 0;
    // comparison against the golden-parameter closed form
    double max_dev_vs_closed = 0.0;
    std::size_t cells_above_closed = 0;  // grid value > closed form value
};

// Deviation of a (recursion) grid from t/(t-u) and from the golden closed
// form, over u >= 1, t > u.
DeviationStats compare_grid_to_reference(const CoeffGrid& grid);

// CSV with header t,u,c_v,c_u, rows in row-major (t, then u) order
void write_grid_csv(std::ostream& out, const CoeffGrid& grid);
CoeffGrid read_grid_csv(std::istream& in, GridSource source);

// Self-contained SVG heatmap of cv over the triangle t >= u.
void write_heatmap_svg(std::ostream& out, const CoeffGrid& grid);

}  // namespace dls
