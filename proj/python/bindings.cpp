#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dls/bounds.hpp"
#include "dls/coeffs.hpp"
#include "dls/csv.hpp"
#include "dls/experiment.hpp"
#include "dls/oracle.hpp"
#include "dls/sampler.hpp"

namespace py = pybind11;
using namespace dls;

namespace {

MetricSpec make_metric(const std::string& kind, double ell) {
    MetricSpec m{metric_kind_from_string(kind), ell};
    validate(m);
    return m;
}

CenterSet centers_from_points(const std::vector<Point>& pts) {
    CenterSet cs;
    for (const auto& p : pts) cs.add(p);
    return cs;
}

}  // namespace

PYBIND11_MODULE(dls, m) {
    m.doc() = "cost-weighted clustering seeding, exact small-instance oracles, and bound tools";

    py::class_<Dataset>(m, "Dataset")
        .def(py::init<std::vector<Point>>(), py::arg("points"))
        .def("__len__", &Dataset::size)
        .def_property_readonly("dim", &Dataset::dim)
        .def("point", [](const Dataset& ds, std::size_t i) { return ds[i]; }, py::arg("i"))
        .def_property_readonly("points", &Dataset::points);

    m.def("load_dataset", &load_dataset, py::arg("path"));

    m.def(
        "distance",
        [](const Point& x, const Point& y, const std::string& metric, double ell) {
            return distance(x, y, make_metric(metric, ell));
        },
        py::arg("x"), py::arg("y"), py::arg("metric") = "euclidean", py::arg("ell") = 2.0);

    m.def(
        "potential",
        [](const Dataset& ds, const std::vector<Point>& centers, const std::string& metric,
           double ell) {
            const auto res = potential(ds, centers_from_points(centers), make_metric(metric, ell));
            return py::make_tuple(res.phi, res.assignment.owner, res.assignment.cost);
        },
        "returns (phi, owner, cost)", py::arg("dataset"), py::arg("centers"),
        py::arg("metric") = "euclidean", py::arg("ell") = 2.0);

    py::class_<SamplingTrace>(m, "SamplingTrace")
        .def_readonly("chosen", &SamplingTrace::chosen)
        .def_readonly("phi_after", &SamplingTrace::phi_after)
        .def_readonly("degenerate", &SamplingTrace::degenerate)
        .def_property_readonly("centers",
                               [](const SamplingTrace& t) { return t.final_centers.centers; });

    m.def(
        "d_ell_sample",
        [](const Dataset& ds, std::size_t t, std::uint64_t seed, const std::string& metric,
           double ell, std::size_t lloyd_iters) {
            return d_ell_sample(ds, SamplerConfig{t, seed, make_metric(metric, ell), lloyd_iters});
        },
        py::arg("dataset"), py::arg("t"), py::arg("seed") = 0, py::arg("metric") = "euclidean",
        py::arg("ell") = 2.0, py::arg("lloyd_iters") = 0);

    m.def("selection_distribution", [](const std::vector<double>& costs) {
        return selection_distribution(costs);
    });

    m.def(
        "lloyd_refine",
        [](const Dataset& ds, const std::vector<Point>& centers, std::size_t iters) {
            return lloyd_refine(ds, centers_from_points(centers), iters).centers;
        },
        py::arg("dataset"), py::arg("centers"), py::arg("iters"));

    py::class_<OptimalClustering>(m, "OptimalClustering")
        .def_readonly("labels", &OptimalClustering::labels)
        .def_readonly("phi_star", &OptimalClustering::phi_star)
        .def_readonly("cluster_phi_star", &OptimalClustering::cluster_phi_star)
        .def_readonly("cluster_size", &OptimalClustering::cluster_size)
        .def_property_readonly("centers",
                               [](const OptimalClustering& o) { return o.centers.centers; })
        .def_property_readonly("mode",
                               [](const OptimalClustering& o) { return to_string(o.mode); });

    m.def(
        "optimal_k_clustering",
        [](const Dataset& ds, std::size_t k, const std::string& metric, double ell,
           const std::string& mode) {
            return optimal_k_clustering(ds, k, make_metric(metric, ell),
                                        center_mode_from_string(mode));
        },
        py::arg("dataset"), py::arg("k"), py::arg("metric") = "euclidean", py::arg("ell") = 2.0,
        py::arg("mode") = "centroid");

    py::class_<ExpectationReport>(m, "ExpectationReport")
        .def_readonly("expected_phi", &ExpectationReport::expected_phi)
        .def_readonly("branch_count", &ExpectationReport::branch_count)
        .def_readonly("max_depth", &ExpectationReport::max_depth)
        .def_readonly("probability_mass", &ExpectationReport::probability_mass);

    m.def(
        "exhaustive_expected_phi",
        [](const Dataset& ds, std::size_t t, const std::string& metric, double ell,
           const std::vector<Point>& initial) {
            return exhaustive_expected_phi(ds, t, make_metric(metric, ell),
                                           centers_from_points(initial));
        },
        py::arg("dataset"), py::arg("t"), py::arg("metric") = "euclidean", py::arg("ell") = 2.0,
        py::arg("initial") = std::vector<Point>{});

    py::class_<CoverBoundReport>(m, "CoverBoundReport")
        .def_readonly("expected_phi", &CoverBoundReport::expected_phi)
        .def_readonly("bound", &CoverBoundReport::bound)
        .def_readonly("phi_covered", &CoverBoundReport::phi_covered)
        .def_readonly("phi_uncovered", &CoverBoundReport::phi_uncovered)
        .def_readonly("rho_uncovered", &CoverBoundReport::rho_uncovered)
        .def_readonly("uncovered", &CoverBoundReport::uncovered)
        .def_readonly("picks", &CoverBoundReport::picks)
        .def_readonly("holds", &CoverBoundReport::holds)
        .def_readonly("slack", &CoverBoundReport::slack);

    m.def(
        "verify_cover_bound",
        [](const Dataset& ds, std::size_t k, const std::vector<Point>& initial, std::size_t t,
           const std::string& metric, double ell, const std::string& mode) {
            return verify_cover_bound(ds, k, centers_from_points(initial), t,
                                      make_metric(metric, ell), center_mode_from_string(mode));
        },
        py::arg("dataset"), py::arg("k"), py::arg("initial"), py::arg("t"),
        py::arg("metric") = "euclidean", py::arg("ell") = 2.0, py::arg("mode") = "centroid");

    m.def("harmonic", &harmonic, py::arg("k"));
    m.attr("GOLDEN_RATIO") = kGoldenRatio;

    m.def(
        "single_cluster_ratios",
        [](double ell, bool squared_euclidean) {
            const auto r = single_cluster_ratios(ell, squared_euclidean);
            return py::make_tuple(r.r_u, r.r_d);
        },
        py::arg("ell"), py::arg("squared_euclidean"));

    py::class_<BoundReport>(m, "BoundReport")
        .def_readonly("r_u", &BoundReport::r_u)
        .def_readonly("r_d", &BoundReport::r_d)
        .def_readonly("harmonic_term", &BoundReport::harmonic_term)
        .def_readonly("finite_term", &BoundReport::finite_term)
        .def_readonly("ratio_bound", &BoundReport::ratio_bound)
        .def_readonly("oversampling_bound", &BoundReport::oversampling_bound)
        .def_readonly("refinement_constant", &BoundReport::refinement_constant)
        .def("markov_at", &BoundReport::markov_at, py::arg("tail_mass"));

    m.def(
        "evaluate_bounds",
        [](std::size_t k, double beta, double ell, bool squared_euclidean,
           std::optional<std::size_t> n) {
            return evaluate_bounds(BoundInputs{k, beta, ell, squared_euclidean, n});
        },
        py::arg("k"), py::arg("beta"), py::arg("ell") = 2.0, py::arg("squared_euclidean") = true,
        py::arg("n") = std::nullopt);

    m.def("oversampling_bound", &oversampling_bound, py::arg("beta"), py::arg("ell") = 2.0,
          py::arg("squared_euclidean") = true);
    m.def("critical_oversampling", &critical_oversampling, py::arg("k"));
    m.def("critical_oversampling_formula", &critical_oversampling_formula, py::arg("k"),
          py::arg("coeff"));
    m.def("refinement_constant", &refinement_constant, py::arg("k"), py::arg("beta"),
          py::arg("ell") = 2.0, py::arg("squared_euclidean") = true);
    m.def("markov_tail", &markov_tail, py::arg("mean_bound"), py::arg("tail_mass"));

    py::class_<CoeffParams>(m, "CoeffParams")
        .def(py::init<double, double>(), py::arg("a"), py::arg("b"))
        .def_readonly("a", &CoeffParams::a)
        .def_readonly("b", &CoeffParams::b)
        .def_static("golden", &CoeffParams::golden);

    m.def("closed_cv", &closed_cv, py::arg("t"), py::arg("u"), py::arg("params"));
    m.def("closed_cu", &closed_cu, py::arg("t"), py::arg("u"), py::arg("params"));

    py::class_<CoeffGrid>(m, "CoeffGrid")
        .def_readonly("t_max", &CoeffGrid::t_max)
        .def("cv", &CoeffGrid::cv_at, py::arg("t"), py::arg("u"))
        .def("cu", &CoeffGrid::cu_at, py::arg("t"), py::arg("u"))
        .def("to_csv", [](const CoeffGrid& g) {
            std::ostringstream out;
            write_grid_csv(out, g);
            return out.str();
        });

    m.def("recursion_grid", &recursion_grid, py::arg("t_max"));
    m.def("closed_form_grid", &closed_form_grid, py::arg("t_max"), py::arg("params"));

    m.def(
        "verify_sufficient_conditions",
        [](const CoeffGrid& grid) {
            std::vector<py::tuple> out;
            for (const auto& v : verify_sufficient_conditions(grid))
                out.push_back(py::make_tuple(v.t, v.u, v.condition, v.lhs, v.rhs));
            return out;
        },
        py::arg("grid"));

    m.def(
        "verify_closed_form_identities",
        [](const CoeffParams& p, std::size_t t_max, double tol) {
            const auto rep = verify_closed_form_identities(p, t_max, tol);
            py::dict out;
            for (const auto& c : rep.checks)
                out[py::str(c.name)] = py::make_tuple(c.max_abs_error, c.violations);
            return py::make_tuple(rep.all_passed(), out);
        },
        py::arg("params"), py::arg("t_max"), py::arg("tol") = 1e-9);

    m.def(
        "generate_dataset",
        [](const std::string& kind, std::size_t n, std::size_t d, std::size_t k_true,
           double spread, std::uint64_t seed) {
            return generate_dataset(
                GeneratorSpec{generator_kind_from_string(kind), n, d, k_true, spread, seed});
        },
        py::arg("kind"), py::arg("n"), py::arg("d") = 1, py::arg("k_true") = 1,
        py::arg("spread") = 0.0, py::arg("seed") = 0);
}
