#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dls/geometry.hpp"
#include "dls/oracle.hpp"

namespace dls {

enum class GeneratorKind { gaussian_mixture, uniform_box, collinear };

std::string to_string(GeneratorKind kind);
GeneratorKind generator_kind_from_string(const std::string& name);

// Synthetic dataset recipes, deterministic for a fixed seed.
//   gaussian_mixture: k_true component centers uniform in [0,10)^d, point i
//                     drawn around center i mod k_true with std dev spread
//   uniform_box:      n points uniform in [0,10)^d
//   collinear:        n points on the first axis, uniform in [0,10)
struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::uniform_box;
    std::size_t n = 1;
    std::size_t d = 1;
    std::size_t k_true = 1;
    double spread = 0.0;
    std::uint64_t seed = 0;
};

Dataset generate_dataset(const GeneratorSpec& spec);

struct ExperimentConfig {
    std::optional<std::string> dataset_file;       // exactly one of file / generator
    std::optional<GeneratorSpec> generator;
    std::size_t k = 2;
    double beta = 1.0;
    double ell = 2.0;
    MetricKind metric = MetricKind::euclidean;
    std::size_t trials = 1;
    std::uint64_t base_seed = 0;
    CenterMode oracle_mode = CenterMode::centroid;

    MetricSpec metric_spec() const { return {metric, ell}; }
};

// Flat "key = value" lines; '#' comments and blank lines ignored; unknown
// keys are errors. Keys: dataset_file | generator, n, d, k_true, spread,
// dataset_seed, and k, beta, ell, metric, trials, base_seed, oracle_mode.
ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig load_experiment_config(const std::string& path);

struct ExperimentRecord {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::size_t t_used = 0;
    double phi = 0.0;
    double ratio = 0.0;
    double bound_theorem = 0.0;      // k-dependent expected-ratio bound
    double bound_oversampling = 0.0; // k-independent form (inf at beta = 1)
};

struct ExperimentSummary {
    std::size_t trials = 0;
    std::size_t t_used = 0;
    double phi_star = 0.0;
    bool phi_star_zero = false;  // trials carry no ratio; bound comparison skipped
    double mean_ratio = 0.0;
    double std_error = 0.0;
    double bound_theorem = 0.0;
    double bound_oversampling = 0.0;
    bool conservative = false;  // discrete-mode phi_star overestimates the continuous optimum
    bool passes_bound = false;  // mean + 3 SE <= bound_theorem
};

struct ExperimentResult {
    std::vector<ExperimentRecord> records;
    ExperimentSummary summary;
};

// Runs trials of the seeded sampler with t = round(beta k) centers, trial
// seeds base_seed + trial, against the mode's exact optimum computed once.
ExperimentResult run_ratio_experiment(const ExperimentConfig& cfg);

// columns: trial,seed,t_used,phi,ratio,bound_theorem1,bound_corollary
void emit_records_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);

void emit_summary_text(std::ostream& out, const ExperimentConfig& cfg,
                       const ExperimentSummary& s);
void emit_summary_json(std::ostream& out, const ExperimentConfig& cfg,
                       const ExperimentSummary& s);

}  // namespace dls
