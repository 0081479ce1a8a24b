#include "dls/experiment.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "dls/bounds.hpp"
#include "dls/csv.hpp"
#include "dls/rng.hpp"
#include "dls/sampler.hpp"
#include "dls/summation.hpp"

namespace dls {

std::string to_string(GeneratorKind kind) {
    switch (kind) {
        case GeneratorKind::gaussian_mixture: return "gaussian_mixture";
        case GeneratorKind::uniform_box: return "uniform_box";
        case GeneratorKind::collinear: return "collinear";
    }
    return "?";
}

GeneratorKind generator_kind_from_string(const std::string& name) {
    if (name == "gaussian_mixture") return GeneratorKind::gaussian_mixture;
    if (name == "uniform_box") return GeneratorKind::uniform_box;
    if (name == "collinear") return GeneratorKind::collinear;
    throw std::invalid_argument("unknown generator kind: " + name);
}

Dataset generate_dataset(const GeneratorSpec& spec) {
    if (spec.n < 1 || spec.d < 1) throw std::invalid_argument("generator requires n >= 1, d >= 1");
    Rng rng(spec.seed);
    std::vector<Point> pts;
    pts.reserve(spec.n);
    switch (spec.kind) {
        case GeneratorKind::uniform_box:
            for (std::size_t i = 0; i < spec.n; ++i) {
                Point p(spec.d);
                for (auto& c : p) c = 10.0 * rng.next_double();
                pts.push_back(std::move(p));
            }
            break;
        case GeneratorKind::collinear:
            for (std::size_t i = 0; i < spec.n; ++i) {
                Point p(spec.d, 0.0);
                p[0] = 10.0 * rng.next_double();
                pts.push_back(std::move(p));
            }
            break;
        case GeneratorKind::gaussian_mixture: {
            if (spec.k_true < 1) throw std::invalid_argument("gaussian_mixture requires k_true >= 1");
            if (!(spec.spread >= 0.0)) throw std::invalid_argument("spread must be >= 0");
            std::vector<Point> means(spec.k_true, Point(spec.d));
            for (auto& mp : means)
                for (auto& c : mp) c = 10.0 * rng.next_double();
            for (std::size_t i = 0; i < spec.n; ++i) {
                const Point& mp = means[i % spec.k_true];
                Point p(spec.d);
                for (std::size_t dd = 0; dd < spec.d; ++dd)
                    p[dd] = mp[dd] + spec.spread * rng.next_gaussian();
                pts.push_back(std::move(p));
            }
            break;
        }
    }
    return Dataset(std::move(pts));
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& value, const std::string& key) {
    std::istringstream in(value);
    T out;
    if (!(in >> out) || !(in >> std::ws).eof())
        throw std::runtime_error("config: cannot parse value '" + value + "' for key " + key);
    return out;
}

}  // namespace

ExperimentConfig parse_experiment_config(std::istream& in) {
    ExperimentConfig cfg;
    GeneratorSpec gen;
    bool has_generator = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: line " + std::to_string(line_no) +
                                     ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));

        if (key == "dataset_file") {
            cfg.dataset_file = value;
        } else if (key == "generator") {
            gen.kind = generator_kind_from_string(value);
            has_generator = true;
        } else if (key == "n") {
            gen.n = parse_number<std::size_t>(value, key);
        } else if (key == "d") {
            gen.d = parse_number<std::size_t>(value, key);
        } else if (key == "k_true") {
            gen.k_true = parse_number<std::size_t>(value, key);
        } else if (key == "spread") {
            gen.spread = parse_number<double>(value, key);
        } else if (key == "dataset_seed") {
            gen.seed = parse_number<std::uint64_t>(value, key);
        } else if (key == "k") {
            cfg.k = parse_number<std::size_t>(value, key);
        } else if (key == "beta") {
            cfg.beta = parse_number<double>(value, key);
        } else if (key == "ell") {
            cfg.ell = parse_number<double>(value, key);
        } else if (key == "metric") {
            cfg.metric = metric_kind_from_string(value);
        } else if (key == "trials") {
            cfg.trials = parse_number<std::size_t>(value, key);
        } else if (key == "base_seed") {
            cfg.base_seed = parse_number<std::uint64_t>(value, key);
        } else if (key == "oracle_mode") {
            cfg.oracle_mode = center_mode_from_string(value);
        } else {
            throw std::runtime_error("config: unknown key '" + key + "'");
        }
    }
    if (has_generator) cfg.generator = gen;
    if (cfg.dataset_file.has_value() == cfg.generator.has_value())
        throw std::runtime_error("config: exactly one of dataset_file or generator is required");
    if (cfg.trials < 1) throw std::runtime_error("config: trials must be >= 1");
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_experiment_config(in);
}

ExperimentResult run_ratio_experiment(const ExperimentConfig& cfg) {
    const Dataset ds = cfg.dataset_file ? load_dataset(*cfg.dataset_file)
                                        : generate_dataset(*cfg.generator);
    const MetricSpec m = cfg.metric_spec();
    validate(m);

    const auto t_used = static_cast<std::size_t>(std::llround(cfg.beta * static_cast<double>(cfg.k)));
    if (t_used < 1 || t_used > ds.size())
        throw std::invalid_argument("round(beta k) must lie in [1, n]");
    if (!(cfg.beta >= 1.0)) throw std::invalid_argument("beta must be >= 1");

    const auto opt = optimal_k_clustering(ds, cfg.k, m, cfg.oracle_mode);

    const BoundInputs bi{cfg.k, static_cast<double>(t_used) / static_cast<double>(cfg.k), cfg.ell,
                         m.squared_euclidean(), ds.size()};
    const BoundReport bounds = evaluate_bounds(bi);

    ExperimentResult out;
    out.records.reserve(cfg.trials);
    const bool phi_star_zero = !(opt.phi_star > 0.0);
    CompensatedSum ratio_sum;
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        const std::uint64_t seed = cfg.base_seed + trial;
        const auto trace = d_ell_sample(ds, SamplerConfig{t_used, seed, m, 0});
        ExperimentRecord rec;
        rec.trial = trial;
        rec.seed = seed;
        rec.t_used = t_used;
        rec.phi = trace.phi_after.back();
        rec.ratio = phi_star_zero ? std::numeric_limits<double>::quiet_NaN()
                                  : rec.phi / opt.phi_star;
        rec.bound_theorem = bounds.ratio_bound;
        rec.bound_oversampling = bounds.oversampling_bound;
        if (!phi_star_zero) ratio_sum.add(rec.ratio);
        out.records.push_back(rec);
    }

    auto& s = out.summary;
    s.trials = cfg.trials;
    s.t_used = t_used;
    s.phi_star = opt.phi_star;
    s.phi_star_zero = phi_star_zero;
    s.bound_theorem = bounds.ratio_bound;
    s.bound_oversampling = bounds.oversampling_bound;
    s.conservative = cfg.oracle_mode == CenterMode::discrete;
    if (!phi_star_zero) {
        s.mean_ratio = ratio_sum.value() / static_cast<double>(cfg.trials);
        if (cfg.trials > 1) {
            CompensatedSum sq;
            for (const auto& rec : out.records) {
                const double d = rec.ratio - s.mean_ratio;
                sq.add(d * d);
            }
            const double variance = sq.value() / static_cast<double>(cfg.trials - 1);
            s.std_error = std::sqrt(variance / static_cast<double>(cfg.trials));
        }
        s.passes_bound = s.mean_ratio + 3.0 * s.std_error <= s.bound_theorem;
    }
    return out;
}

void emit_records_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
    out << "trial,seed,t_used,phi,ratio,bound_theorem1,bound_corollary\n";
    for (const auto& r : records)
        out << r.trial << ',' << r.seed << ',' << r.t_used << ',' << format_double(r.phi) << ','
            << format_double(r.ratio) << ',' << format_double(r.bound_theorem) << ','
            << format_double(r.bound_oversampling) << '\n';
}

namespace {

nlohmann::json config_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    if (cfg.dataset_file) j["dataset_file"] = *cfg.dataset_file;
    if (cfg.generator) {
        j["generator"] = to_string(cfg.generator->kind);
        j["n"] = cfg.generator->n;
        j["d"] = cfg.generator->d;
        j["k_true"] = cfg.generator->k_true;
        j["spread"] = cfg.generator->spread;
        j["dataset_seed"] = cfg.generator->seed;
    }
    j["k"] = cfg.k;
    j["beta"] = cfg.beta;
    j["ell"] = cfg.ell;
    j["metric"] = to_string(cfg.metric);
    j["trials"] = cfg.trials;
    j["base_seed"] = cfg.base_seed;
    j["oracle_mode"] = to_string(cfg.oracle_mode);
    return j;
}

}  // namespace

void emit_summary_text(std::ostream& out, const ExperimentConfig& cfg, const ExperimentSummary& s) {
    out << "trials        " << s.trials << "\n"
        << "t_used        " << s.t_used << "\n"
        << "phi_star      " << format_double(s.phi_star) << " (" << to_string(cfg.oracle_mode)
        << (s.conservative ? ", conservative" : "") << ")\n";
    if (s.phi_star_zero) {
        out << "ratio         skipped (phi_star = 0)\n";
        return;
    }
    out << "mean_ratio    " << format_double(s.mean_ratio) << "\n"
        << "std_error     " << format_double(s.std_error) << "\n"
        << "bound         " << format_double(s.bound_theorem) << "\n"
        << "bound_beta    " << format_double(s.bound_oversampling) << "\n"
        << "mean+3se<=bound " << (s.passes_bound ? "yes" : "NO") << "\n";
}

void emit_summary_json(std::ostream& out, const ExperimentConfig& cfg, const ExperimentSummary& s) {
    nlohmann::json j;
    j["config"] = config_json(cfg);
    j["trials"] = s.trials;
    j["t_used"] = s.t_used;
    j["phi_star"] = s.phi_star;
    j["phi_star_zero"] = s.phi_star_zero;
    j["conservative"] = s.conservative;
    if (!s.phi_star_zero) {
        j["mean_ratio"] = s.mean_ratio;
        j["std_error"] = s.std_error;
        j["bound_theorem1"] = s.bound_theorem;
        if (std::isfinite(s.bound_oversampling))
            j["bound_corollary"] = s.bound_oversampling;
        else
            j["bound_corollary"] = "inf";  // json has no infinity literal
        j["passes_bound"] = s.passes_bound;
    }
    out << j.dump(2) << '\n';
}

}  // namespace dls
