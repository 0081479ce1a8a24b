// Acceptance suite: numbered end-to-end checks, one pass/fail line each.
// Run all with no arguments, or a single check by number.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dls/bounds.hpp"
#include "dls/coeffs.hpp"
#include "dls/experiment.hpp"
#include "dls/oracle.hpp"
#include "dls/rng.hpp"
#include "dls/sampler.hpp"

using namespace dls;

namespace {

const MetricSpec kSqEuclid{MetricKind::euclidean, 2.0};

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& why) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += why;
        }
    }
    void note(const std::string& info) {
        if (!detail.empty()) detail += "; ";
        detail += info;
    }
};

std::string fmt(double v, const char* spec = "%.6g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

Dataset random_points(Rng& rng, std::size_t n, std::size_t d) {
    std::vector<Point> pts(n, Point(d));
    for (auto& p : pts)
        for (auto& c : p) c = 10.0 * rng.next_double();
    return Dataset(std::move(pts));
}

// 1. exact single-cluster inflation constants
Outcome check_01() {
    Outcome out;
    const auto r = single_cluster_ratios(2.0, true);
    out.require(r.r_u == 2.0 && r.r_d == 8.0,
                "expected (2, 8), got (" + fmt(r.r_u) + ", " + fmt(r.r_d) + ")");
    return out;
}

// 2. asymptotic oversampling comparison: bound at t = ceil(16(k + sqrt k))
//    vs 8(1 + golden/15), plus the Markov step to 9.137
Outcome check_02() {
    Outcome out;
    const double limit = 8.0 * (1.0 + kGoldenRatio / 15.0);

    const double k = 1e6;
    const double t = std::ceil(16.0 * (k + std::sqrt(k)));
    const auto rep = evaluate_bounds(
        {static_cast<std::size_t>(k), t / k, 2.0, true});
    const double gap = std::fabs(rep.ratio_bound - limit);
    out.require(gap <= 1e-6, "convergence gap " + fmt(gap, "%.3e") + " > 1e-6 at k=1e6");
    if (gap > 1e-6) {
        // the gap shrinks like ~0.92/sqrt(k) because t carries a 16*sqrt(k)
        // term; show where the stated tolerance is actually reached
        const double k12 = 1e12;
        const double t12 = std::ceil(16.0 * (k12 + std::sqrt(k12)));
        const auto rep12 = evaluate_bounds(
            {static_cast<std::size_t>(k12), t12 / k12, 2.0, true});
        out.note("monotone from below; gap(k=1e12) = " +
                 fmt(std::fabs(rep12.ratio_bound - limit), "%.3e") +
                 " <= 1e-6, decay ~0.92/sqrt(k)");
    }

    const double markov = markov_tail(limit, 0.97);
    out.require(std::fabs(markov - 9.137) <= 5e-3,
                "markov value " + fmt(markov) + " misses 9.137 by more than 5e-3");
    out.note("bound(k=1e6) = " + fmt(rep.ratio_bound, "%.9g") + ", limit = " +
             fmt(limit, "%.9g") + ", markov = " + fmt(markov, "%.6g"));
    return out;
}

// 3. recursion base cell and the closed form at (2, 1)
Outcome check_03() {
    Outcome out;
    const auto g = recursion_grid(3);
    out.require(std::fabs(g.cv_at(2, 1) - kGoldenRatio) <= 1e-12,
                "recursion cv(2,1) = " + fmt(g.cv_at(2, 1), "%.17g"));
    out.require(g.cu_at(2, 1) == 1.0, "recursion cu(2,1) = " + fmt(g.cu_at(2, 1), "%.17g"));
    const double closed = closed_cv(2, 1, CoeffParams::golden());
    out.require(std::fabs(closed - kGoldenRatio) <= 1e-12,
                "closed cv(2,1) = " + fmt(closed, "%.17g"));
    out.note("cv(2,1) - golden = " + fmt(g.cv_at(2, 1) - kGoldenRatio, "%.3e") +
             ", closed - golden = " + fmt(closed - kGoldenRatio, "%.3e"));
    return out;
}

// 4. level structure of the recursion table against t/(t-u), via its csv export
Outcome check_04() {
    Outcome out;
    const auto grid = recursion_grid(200);
    const auto path = std::filesystem::temp_directory_path() / "dls_acceptance_grid.csv";
    {
        std::ofstream file(path);
        write_grid_csv(file, grid);
    }
    std::ifstream file(path);
    const auto g = read_grid_csv(file, GridSource::recursion);
    std::filesystem::remove(path);

    double worst = 0.0;
    for (std::size_t u = 1; u <= g.t_max; ++u)
        for (std::size_t t = 2 * u; t <= g.t_max; ++t) {
            const double ref = static_cast<double>(t) / static_cast<double>(t - u);
            worst = std::max(worst, std::fabs(g.cv_at(t, u) - ref) / ref);
        }
    out.require(worst <= 0.25,
                "max relative deviation " + fmt(worst) + " > 0.25 on t >= 2u >= 2");

    // approximation sharpens along integer rays t = c u
    std::size_t rays = 0;
    for (std::size_t c = 2; c <= g.t_max / 2; ++c) {
        const std::size_t umax = g.t_max / c;
        if (umax < 2) continue;
        const auto dev = [&](std::size_t u) {
            const std::size_t t = c * u;
            const double ref = static_cast<double>(t) / static_cast<double>(t - u);
            return std::fabs(g.cv_at(t, u) - ref) / ref;
        };
        ++rays;
        if (!(dev(umax) < dev(1)))
            out.require(false, "deviation not decreasing along ray t = " + std::to_string(c) +
                                   "u: " + fmt(dev(1)) + " -> " + fmt(dev(umax)));
    }
    out.note("max deviation " + fmt(worst) + " at t >= 2u; " + std::to_string(rays) +
             " rays checked first-to-last");
    return out;
}

// 5. sufficient conditions: clean for valid parameter choices, violated for ab < 1
Outcome check_05() {
    Outcome out;
    const auto closed = verify_sufficient_conditions(CoeffParams::golden(), 500);
    out.require(closed.empty(),
                std::to_string(closed.size()) + " violations on the golden closed form");
    const auto rec = verify_sufficient_conditions(recursion_grid(200));
    out.require(rec.empty(), std::to_string(rec.size()) + " violations on the recursion table");
    const auto bad = verify_sufficient_conditions(CoeffParams(0.2, 1.2), 100);
    out.require(!bad.empty(), "expected violations for a=0.2, b=1.2 (ab < 1), found none");
    if (!bad.empty())
        out.note("a=0.2, b=1.2 yields " + std::to_string(bad.size()) + " violations, first " +
                 bad.front().condition + " at t=" + std::to_string(bad.front().t) +
                 " u=" + std::to_string(bad.front().u));
    return out;
}

// 6. numeric replay of the closed-form certification algebra
Outcome check_06() {
    Outcome out;
    const auto rep = verify_closed_form_identities(CoeffParams::golden(), 200, 1e-9);
    double worst = 0.0;
    for (const auto& c : rep.checks) {
        worst = std::max(worst, c.max_abs_error);
        out.require(c.violations == 0,
                    c.name + ": " + std::to_string(c.violations) + " violations, max err " +
                        fmt(c.max_abs_error, "%.3e"));
    }
    // tight boundary: a b = 1 exactly at the golden parameters
    const auto gp = CoeffParams::golden();
    out.require(std::fabs(gp.a * gp.b - 1.0) <= 1e-12,
                "golden a*b = " + fmt(gp.a * gp.b, "%.17g"));
    out.note("10 identities over t_max=200, worst error " + fmt(worst, "%.3e"));
    return out;
}

// 7. exact single-cluster expectations on random instances
Outcome check_07() {
    Outcome out;
    Rng rng(20250808);
    std::size_t violations = 0;
    double worst_uniform = 0.0, worst_weighted = 0.0;
    for (int rep = 0; rep < 200; ++rep) {
        const auto ds = random_points(rng, 2 + rng.next_index(7), 1 + rng.next_index(3));
        const auto opt = optimal_k_clustering(ds, 1, kSqEuclid, CenterMode::centroid);
        const double scale = 1.0 + opt.phi_star;

        const double uniform = exhaustive_expected_phi(ds, 1, kSqEuclid).expected_phi;
        worst_uniform = std::max(worst_uniform, uniform / opt.phi_star);
        if (uniform > 2.0 * opt.phi_star + 1e-9 * scale) ++violations;

        CenterSet initial;
        if (rep % 2 == 0) {
            initial.add(Point(ds.dim(), 1000.0));
        } else {
            Point p(ds.dim());
            for (auto& c : p) c = 10.0 * rng.next_double();
            initial.add(std::move(p));
        }
        const double weighted =
            exhaustive_expected_phi(ds, 1, kSqEuclid, initial).expected_phi;
        worst_weighted = std::max(worst_weighted, weighted / opt.phi_star);
        if (weighted > 8.0 * opt.phi_star + 1e-9 * scale) ++violations;
    }
    out.require(violations == 0, std::to_string(violations) + " inflation violations");
    out.note("200 instances; max E/phi* = " + fmt(worst_uniform) + " (uniform, cap 2), " +
             fmt(worst_weighted) + " (weighted, cap 8)");
    return out;
}

// 8. exact end-to-end expected ratio against the k-dependent bound
Outcome check_08() {
    Outcome out;
    Rng rng(88);
    std::size_t violations = 0;
    double worst_margin = 1e300;
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t k = 2 + rng.next_index(2);
        const std::size_t n = std::max<std::size_t>(k + 1, 4 + rng.next_index(4));  // 4..7
        Dataset ds = rep % 2 == 0
                         ? random_points(rng, n, 1 + rng.next_index(2))
                         : generate_dataset({GeneratorKind::gaussian_mixture, n, 2, k, 1.0,
                                             rng.next()});
        const std::size_t t = k + rng.next_index(std::min<std::size_t>(5, n) - k + 1);
        const auto opt = optimal_k_clustering(ds, k, kSqEuclid, CenterMode::centroid);
        if (!(opt.phi_star > 0.0)) continue;  // measure-zero degeneracy guard
        const double expected = exhaustive_expected_phi(ds, t, kSqEuclid).expected_phi;
        const double ratio = expected / opt.phi_star;
        const auto bound = evaluate_bounds(
            {k, static_cast<double>(t) / static_cast<double>(k), 2.0, true, ds.size()});
        worst_margin = std::min(worst_margin, bound.ratio_bound - ratio);
        if (ratio > bound.ratio_bound * (1.0 + 1e-9)) ++violations;
    }
    out.require(violations == 0, std::to_string(violations) + " bound violations");
    out.note("100 instances (n <= 7, k in {2,3}, t <= 5); smallest bound margin " +
             fmt(worst_margin));
    return out;
}

// 9. cover bound on random two-cluster configurations, t <= u <= 2
Outcome check_09() {
    Outcome out;
    Rng rng(99);
    std::size_t violations = 0, runs = 0;
    double min_slack = 1e300;
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 4 + rng.next_index(4);
        const Dataset ds =
            generate_dataset({GeneratorKind::gaussian_mixture, n, 1 + rep % 2, 2, 0.3,
                              rng.next()});
        CenterSet initial;
        std::size_t t;
        if (rep % 3 == 2) {
            // cover one cluster with a data point, one weighted pick left
            initial = CenterSet::from_data_indices(ds, std::vector<std::size_t>{0});
            t = 1;
        } else {
            // far synthetic center covers nothing: u = 2
            initial.add(Point(ds.dim(), 4000.0));
            t = rep == 0 ? 0 : 1 + rep % 2;
        }
        const auto rep_out = verify_cover_bound(ds, 2, initial, t, kSqEuclid,
                                                CenterMode::centroid);
        ++runs;
        min_slack = std::min(min_slack, rep_out.slack);
        if (!rep_out.holds) ++violations;
    }
    out.require(violations == 0,
                std::to_string(violations) + " of " + std::to_string(runs) + " runs violated");
    out.note(std::to_string(runs) + " configurations; minimum slack " + fmt(min_slack));
    return out;
}

// 10. refinement constant: non-negative, simplified == defining route
Outcome check_10() {
    Outcome out;
    double cmin = 1e300;
    std::size_t evaluated = 0;
    try {
        for (std::size_t k = 2; k <= 100; ++k)
            for (int j = 0; j <= 30; ++j)
                for (const double ell : {1.0, 1.5, 2.0, 3.0}) {
                    const double beta = 1.0 + static_cast<double>(j) / 10.0;
                    // the call cross-checks both routes to 1e-12 internally
                    const double c = refinement_constant(k, beta, ell, ell == 2.0);
                    cmin = std::min(cmin, c);
                    ++evaluated;
                    if (c < -1e-12) out.require(false, "negative C at k=" + std::to_string(k));
                }
    } catch (const std::exception& e) {
        out.require(false, std::string("route disagreement: ") + e.what());
    }
    out.note(std::to_string(evaluated) + " grid points; min C = " + fmt(cmin));
    return out;
}

// 11. critical oversampling survey: argmax at k = 22 for both variants
Outcome check_11() {
    Outcome out;
    std::size_t argmax_solved = 0, argmax_unit = 0;
    double max_solved = 0.0, max_unit = 0.0;
    for (std::size_t k = 4; k <= 1000; ++k) {
        const double solved = critical_oversampling(k);
        const double via_formula = critical_oversampling_formula(k, kGoldenRatio);
        if (std::fabs(solved - via_formula) > 1e-9)
            out.require(false, "solve drifts from the closed form at k=" + std::to_string(k));
        const double unit = critical_oversampling_formula(k, 1.0);
        if (solved > max_solved) {
            max_solved = solved;
            argmax_solved = k;
        }
        if (unit > max_unit) {
            max_unit = unit;
            argmax_unit = k;
        }
    }
    out.require(argmax_solved == 22, "solved argmax at k=" + std::to_string(argmax_solved));
    out.require(argmax_unit == 22, "unit argmax at k=" + std::to_string(argmax_unit));
    out.require(std::fabs(max_unit - 1.204) <= 1e-3, "unit max " + fmt(max_unit));
    out.require(std::fabs(max_solved - 1.330) <= 1e-3, "solved max " + fmt(max_solved));
    out.note("both variants peak at k=22: golden coefficient gives " + fmt(max_solved, "%.4f") +
             ", unit coefficient gives " + fmt(max_unit, "%.4f") +
             " (the two are reported side by side; they differ by design)");
    return out;
}

// 12. Monte Carlo ratio experiment against the k = 2 bound, matched seeds
Outcome check_12() {
    Outcome out;
    ExperimentConfig cfg;
    cfg.generator = GeneratorSpec{GeneratorKind::gaussian_mixture, 6, 2, 2, 0.05, 7};
    cfg.k = 2;
    cfg.beta = 1.0;
    cfg.trials = 10000;
    cfg.base_seed = 1000;
    cfg.oracle_mode = CenterMode::centroid;

    const auto base = run_ratio_experiment(cfg);
    const double upper = base.summary.mean_ratio + 3.0 * base.summary.std_error;
    out.require(upper <= 8.0, "mean + 3se = " + fmt(upper) + " > 8");

    cfg.beta = 2.0;
    const auto more = run_ratio_experiment(cfg);
    out.require(more.summary.mean_ratio < base.summary.mean_ratio,
                "beta=2 mean " + fmt(more.summary.mean_ratio) + " not below beta=1 mean " +
                    fmt(base.summary.mean_ratio));
    out.note("beta=1: mean " + fmt(base.summary.mean_ratio) + " (+3se " + fmt(upper) +
             "); beta=2: mean " + fmt(more.summary.mean_ratio));
    return out;
}

struct Criterion {
    int id;
    const char* name;
    double time_limit_s;
    std::function<Outcome()> run;
};

const std::vector<Criterion> kCriteria = {
    {1, "single-cluster inflation constants (2, 8)", 1.0, check_01},
    {2, "asymptotic oversampling bound and Markov comparison", 1.0, check_02},
    {3, "recursion base cell matches the golden ratio", 1.0, check_03},
    {4, "recursion table approximates t/(t-u)", 10.0, check_04},
    {5, "sufficient-condition verification", 30.0, check_05},
    {6, "closed-form certification identities", 30.0, check_06},
    {7, "exact single-cluster expectation caps", 60.0, check_07},
    {8, "exact expected ratio within the k-dependent bound", 120.0, check_08},
    {9, "cover bound on two-cluster configurations", 60.0, check_09},
    {10, "refinement constant non-negativity and agreement", 5.0, check_10},
    {11, "critical oversampling survey", 5.0, check_11},
    {12, "Monte Carlo ratio experiment", 60.0, check_12},
};

bool run_one(const Criterion& c) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = c.run();
    } catch (const std::exception& e) {
        out.pass = false;
        out.note(std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > c.time_limit_s)
        out.require(false, "took " + fmt(elapsed, "%.2f") + "s > " + fmt(c.time_limit_s, "%.0f") +
                               "s limit");
    std::printf("[%s] %02d %s (%.2fs)%s%s\n", out.pass ? "PASS" : "FAIL", c.id, c.name, elapsed,
                out.detail.empty() ? "" : " -- ", out.detail.c_str());
    return out.pass;
}

}  // namespace

int main(int argc, char** argv) {
    int selected = 0;
    if (argc > 1) selected = std::atoi(argv[1]);

    int failures = 0;
    for (const auto& c : kCriteria) {
        if (selected != 0 && c.id != selected) continue;
        if (!run_one(c)) ++failures;
    }
    if (selected == 0)
        std::printf("%d of %zu checks failed\n", failures, kCriteria.size());
    return failures == 0 ? 0 : 1;
}
