// gmeta: graph metadata profiling, sparse group lasso regression, DC-SBM
// generation, separability sweeps and controlled experiments.
//
// Exit codes: 0 success, 1 usage/input/runtime error, 2 profile contains
// undefined properties.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <gmeta/config.hpp>
#include <gmeta/csv.hpp>
#include <gmeta/experiment.hpp>
#include <gmeta/generator.hpp>
#include <gmeta/io.hpp>
#include <gmeta/msglasso.hpp>
#include <gmeta/properties.hpp>
#include <gmeta/separability.hpp>
#include <gmeta/svg.hpp>

namespace fs = std::filesystem;
using gmeta::config::json;

namespace {

struct Loaded {
    gmeta::io::LoadedGraph g;
    std::optional<gmeta::FeatureMatrix> x;
    std::optional<gmeta::LabelVector> y;
};

Loaded load_inputs(const std::string& graph, const std::string& features, const std::string& labels, bool directed) {
    Loaded in;
    in.g = gmeta::io::load_graph(graph, gmeta::io::format_from_path(graph), directed);
    if (in.g.self_loops_dropped)
        std::cerr << "warning: dropped " << in.g.self_loops_dropped << " self-loop(s) from " << graph << "\n";
    const auto n = in.g.graph.num_nodes();
    if (!features.empty()) in.x = gmeta::io::load_features(features, in.g.node_ids, n);
    if (!labels.empty()) in.y = gmeta::io::load_labels(labels, in.g.node_ids, n);
    return in;
}

void write(const fs::path& p, const std::string& content) { gmeta::csv::write_file(p.string(), content); }

void write_json(const fs::path& p, const json& j) { write(p, j.dump(2) + "\n"); }

json profile_json(const std::string& name, const gmeta::properties::PropertyVector& pv) {
    return gmeta::properties::to_json(name, pv);
}

// ---------------------------------------------------------------------------

struct ProfileArgs {
    std::string graph, features, labels, out, dataset;
    bool directed = false, clamp = false, augmented = false;
};

int run_profile(const ProfileArgs& a) {
    auto in = load_inputs(a.graph, a.features, a.labels, a.directed);
    gmeta::properties::ProfileOptions opt;
    opt.degree_stats = a.clamp ? gmeta::properties::Multiplicity::clamp : gmeta::properties::Multiplicity::count;
    opt.augmented_gini = a.augmented;
    auto pv = gmeta::properties::profile(in.g.graph, in.x ? &*in.x : nullptr, in.y ? &*in.y : nullptr, opt);
    const std::string name = a.dataset.empty() ? fs::path(a.graph).stem().string() : a.dataset;
    const std::string csv = gmeta::properties::csv_header() + gmeta::properties::to_csv_row(name, pv);
    const json j = profile_json(name, pv);
    if (a.out.empty()) {
        std::cout << csv;
    } else {
        write(a.out + ".csv", csv);
        write_json(a.out + ".json", j);
    }
    for (std::size_t i = 0; i < gmeta::properties::kNumProperties; ++i)
        if (pv.flags[i].kind != gmeta::properties::FlagKind::none)
            std::cerr << "note: " << gmeta::properties::kPropertyNames[i] << ": " << pv.flags[i].reason << "\n";
    return pv.has_undefined() ? 2 : 0;
}

// ---------------------------------------------------------------------------

struct RegressArgs {
    std::string properties, performance, out = "regress_out", missing = "drop", zero_variance = "drop";
    std::optional<double> lambda1, lambda_g;
    int path = 0;
    double ratio = 1.0, min_ratio = 1e-3;
    bool cv = false;
    double tol = 1e-10;
    long max_iter = 200000;
};

json report_json(const gmeta::msglasso::CoefficientMatrix& cm, const std::vector<std::string>& x_names) {
    json rows = json::array();
    for (const auto& r : gmeta::msglasso::salient_report(cm.B, x_names))
        rows.push_back({{"property", r.name}, {"influence", gmeta::msglasso::to_string(r.influence)},
                        {"nonzero", r.nonzero}, {"signs", r.signs}});
    json j{{"lambda1", cm.lambda1}, {"lambda_g", cm.lambda_g},   {"objective", cm.objective},
           {"kkt_residual", cm.kkt_residual}, {"iterations", cm.iterations}, {"converged", cm.converged},
           {"support_size", cm.support().size()}, {"salient", rows}};
    j["objective_trace"] = cm.objective_trace;
    return j;
}

int run_regress(const RegressArgs& a) {
    using namespace gmeta::msglasso;
    const auto policy = a.missing == "impute" ? MissingPolicy::mean_impute : MissingPolicy::drop_rows;
    LoadReport rep;
    auto table = join_tables(gmeta::csv::read(a.properties), gmeta::csv::read(a.performance), policy, &rep);
    for (auto& c : rep.dropped_columns) std::cerr << "warning: dropped empty column '" << c << "'\n";
    for (auto& r : rep.dropped_rows) std::cerr << "warning: dropped incomplete row '" << r << "'\n";
    if (rep.imputed_cells) std::cerr << "warning: imputed " << rep.imputed_cells << " missing cell(s) with column means\n";
    auto [t, scaling] = standardize(table, a.zero_variance == "error" ? ZeroVariancePolicy::error : ZeroVariancePolicy::drop);
    for (auto& c : scaling.dropped) std::cerr << "warning: dropped zero-variance column '" << c << "'\n";

    SolveOptions opt;
    opt.tol = a.tol;
    opt.max_iter = a.max_iter;
    fs::create_directories(a.out);
    json diag{{"rows", t.row_names}, {"dropped_columns", rep.dropped_columns}, {"dropped_rows", rep.dropped_rows},
              {"imputed_cells", rep.imputed_cells}, {"zero_variance_dropped", scaling.dropped}};

    if (a.path > 0) {
        auto path = regularization_path(t, a.ratio, a.path, a.min_ratio, opt);
        std::string s = "index,lambda1,lambda_g,support_size,objective,kkt_residual,iterations,converged\n";
        json points = json::array();
        for (std::size_t i = 0; i < path.size(); ++i) {
            const auto& cm = path[i];
            s += std::to_string(i) + "," + gmeta::csv::format(cm.lambda1) + "," + gmeta::csv::format(cm.lambda_g) + "," +
                 std::to_string(cm.support().size()) + "," + gmeta::csv::format(cm.objective) + "," +
                 gmeta::csv::format(cm.kkt_residual) + "," + std::to_string(cm.iterations) + "," +
                 (cm.converged ? "true" : "false") + "\n";
            write(fs::path(a.out) / ("coefficients_" + std::to_string(i) + ".csv"), coefficients_to_csv(cm.B, t.x_names, t.y_names));
            points.push_back(report_json(cm, t.x_names));
        }
        write(fs::path(a.out) / "path.csv", s);
        diag["path"] = points;
        if (a.cv) {
            auto cv = cross_validate(t, a.ratio, a.path, a.min_ratio, opt);
            std::string c = "index,lambda1,loo_mse\n";
            for (std::size_t i = 0; i < cv.lambda1.size(); ++i)
                c += std::to_string(i) + "," + gmeta::csv::format(cv.lambda1[i]) + "," + gmeta::csv::format(cv.mse[i]) + "\n";
            write(fs::path(a.out) / "cv.csv", c);
            write(fs::path(a.out) / "coefficients.csv", coefficients_to_csv(path[cv.best].B, t.x_names, t.y_names));
            diag["cv_best_index"] = cv.best;
            diag["selected"] = report_json(path[cv.best], t.x_names);
        }
        write_json(fs::path(a.out) / "report.json", diag);
        std::cout << s;
        return 0;
    }
    if (!a.lambda1) throw CLI::ValidationError("regress", "give --lambda1 (and optionally --lambda-g) or --path K");
    auto cm = solve(t, *a.lambda1, a.lambda_g.value_or(0.0), opt);
    if (!cm.converged) std::cerr << "warning: solver stopped at max_iter without converging\n";
    const std::string coef = coefficients_to_csv(cm.B, t.x_names, t.y_names);
    write(fs::path(a.out) / "coefficients.csv", coef);
    diag["selected"] = report_json(cm, t.x_names);
    write_json(fs::path(a.out) / "report.json", diag);
    std::cout << coef;
    return 0;
}

// ---------------------------------------------------------------------------

struct WorldOverrides {
    std::optional<std::size_t> n;
    std::optional<double> average_degree, slope, p_to_q, center_distance, variance, exponent;
    std::optional<int> clusters, dim;
    std::optional<std::uint64_t> seed;
    bool simple = false;

    void apply(gmeta::generator::WorldParams& w) const {
        if (n) w.n = *n;
        if (average_degree) w.average_degree = *average_degree;
        if (slope) w.cluster_size_slope = *slope;
        if (p_to_q) w.p_to_q_ratio = *p_to_q;
        if (center_distance) w.feature_center_distance = *center_distance;
        if (variance) w.feature_cluster_variance = *variance;
        if (exponent) w.power_exponent = *exponent;
        if (clusters) w.num_clusters = *clusters;
        if (dim) w.feature_dim = *dim;
        if (seed) w.seed = *seed;
        if (simple) w.simple = true;
    }
};

void add_world_flags(CLI::App* c, WorldOverrides& o) {
    c->add_option("--n", o.n, "node count");
    c->add_option("--average-degree", o.average_degree, "expected average degree");
    c->add_option("--num-clusters", o.clusters, "number of clusters");
    c->add_option("--cluster-size-slope", o.slope, "linear ramp of cluster sizes");
    c->add_option("--p-to-q", o.p_to_q, "intra/inter edge intensity ratio");
    c->add_option("--feature-dim", o.dim, "feature dimension");
    c->add_option("--feature-center-distance", o.center_distance, "pairwise distance of cluster centers");
    c->add_option("--feature-cluster-variance", o.variance, "per-coordinate feature variance");
    c->add_option("--power-exponent", o.exponent, "power-law exponent of degree corrections");
    c->add_flag("--simple", o.simple, "clamp edge multiplicities to 1");
}

struct GenerateArgs {
    std::string params, out = "dataset";
    std::optional<double> calibrate;
    WorldOverrides world;
};

int run_generate(const GenerateArgs& a) {
    json raw = a.params.empty() ? json::object() : gmeta::config::read_json(a.params);
    const std::string model = raw.value("model", std::string("world"));
    gmeta::generator::Sample s;
    json resolved;
    json calibration;
    if (model == "dc_csbm") {
        gmeta::config::CsbmSpec spec;
        gmeta::config::from_json(raw, spec);
        if (a.world.n) spec.n = *a.world.n;
        if (a.world.seed) spec.seed = *a.world.seed;
        if (a.world.exponent) spec.power_exponent = *a.world.exponent;
        if (a.world.simple) spec.simple = true;
        if (a.calibrate) throw CLI::ValidationError("generate", "--calibrate-gini applies to world graphs only");
        s = spec.sample();
        resolved = gmeta::config::to_json(spec);
    } else if (model == "world") {
        gmeta::generator::WorldParams w;
        gmeta::config::from_json(raw, w);
        a.world.apply(w);
        if (a.calibrate) {
            auto c = gmeta::generator::calibrate_gini(w, *a.calibrate);
            w = c.params;
            calibration = {{"target", *a.calibrate}, {"median_gini", c.measured_gini}, {"iterations", c.iterations}};
        }
        s = gmeta::generator::sample_world(w);
        resolved = gmeta::config::to_json(w);
        resolved["model"] = "world";
    } else {
        throw gmeta::ParseError("unknown model '" + model + "' (expected world or dc_csbm)");
    }
    fs::create_directories(a.out);
    const fs::path dir(a.out);
    gmeta::io::write_graph(s.graph, (dir / "graph.json").string(), gmeta::io::GraphFormat::json);
    write(dir / "features.csv", gmeta::io::features_to_csv(s.features.values));
    write(dir / "labels.csv", gmeta::io::labels_to_csv(s.labels));
    std::string th = "node,theta\n";
    for (std::size_t i = 0; i < s.theta.size(); ++i) th += std::to_string(i) + "," + gmeta::csv::format(s.theta[i]) + "\n";
    write(dir / "theta.csv", th);
    auto pv = gmeta::properties::profile(s.graph, &s.features, &s.labels);
    json manifest{{"params", resolved},
                  {"seed", resolved["seed"]},
                  {"n", s.graph.num_nodes()},
                  {"m", s.graph.num_edges()},
                  {"max_pair_intensity", s.max_pair_intensity},
                  {"warnings", s.warnings},
                  {"files", {"graph.json", "features.csv", "labels.csv", "theta.csv"}}};
    if (!calibration.is_null()) manifest["calibration"] = calibration;
    manifest["profile"] = profile_json("generated", pv);
    write_json(dir / "manifest.json", manifest);
    for (auto& w : s.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << "wrote " << a.out << " (n=" << s.graph.num_nodes() << ", m=" << s.graph.num_edges() << ")\n";
    return 0;
}

// ---------------------------------------------------------------------------

struct ConvolveArgs {
    std::string graph, features, out = "convolved.csv";
    bool directed = false;
};

int run_convolve(const ConvolveArgs& a) {
    auto in = load_inputs(a.graph, a.features, "", a.directed);
    auto cf = gmeta::separability::convolve(in.g.graph, *in.x);
    write(a.out, gmeta::io::features_to_csv(cf.values, in.g.node_ids));
    return 0;
}

// ---------------------------------------------------------------------------

struct SeparateArgs {
    std::string config, out = "separability_out";
    std::vector<int> d_grid;
    std::optional<int> seeds;
    std::optional<double> gamma, density_c, alpha_c, theta_exponent, mean_distance;
    std::optional<std::uint64_t> seed;
    bool control = false;
};

int run_separate(const SeparateArgs& a) {
    gmeta::separability::SweepConfig cfg;
    if (!a.config.empty()) gmeta::config::from_json(gmeta::config::read_json(a.config), cfg);
    if (!a.d_grid.empty()) cfg.d_grid = a.d_grid;
    if (a.seeds) cfg.seeds = *a.seeds;
    if (a.gamma) cfg.gamma = *a.gamma;
    if (a.density_c) cfg.density_c = *a.density_c;
    if (a.alpha_c) cfg.alpha_c = *a.alpha_c;
    if (a.theta_exponent) cfg.theta_exponent = *a.theta_exponent;
    if (a.mean_distance) cfg.mean_distance = *a.mean_distance;
    if (a.seed) cfg.seed = *a.seed;
    if (a.control) cfg.control = true;
    for (int d : cfg.d_grid)
        if (d < 2) throw CLI::ValidationError("--d-grid", "dimensions must be >= 2");

    fs::create_directories(a.out);
    const fs::path dir(a.out);
    write_json(dir / "config.json", gmeta::config::to_json(cfg));
    auto r = gmeta::separability::separability_sweep(cfg);
    write(dir / "sweep.csv", gmeta::separability::sweep_to_csv(r));
    std::string s = "d,n,median_fraction\n";
    gmeta::svg::Series series{"median fraction", {}, {}, {}};
    for (std::size_t i = 0; i < r.d.size(); ++i) {
        s += std::to_string(r.d[i]) + "," + std::to_string(gmeta::separability::default_n(r.d[i])) + "," +
             gmeta::csv::format(r.median_fraction[i]) + "\n";
        series.x.push_back(r.d[i]);
        series.y.push_back(r.median_fraction[i]);
    }
    s += std::string("# non_decreasing,") + (r.non_decreasing ? "true" : "false") + "\n";
    write(dir / "summary.csv", s);
    write(dir / "chart.svg", gmeta::svg::line_chart("Midpoint separability of alpha-subgroups", "feature dimension d",
                                                    "median separable fraction", {series}));
    std::cout << s;
    return 0;
}

// ---------------------------------------------------------------------------

struct ExperimentArgs {
    std::string config, variable, out = "experiment_out";
    std::vector<double> grid;
    std::optional<int> seeds;
    std::optional<std::uint64_t> seed;
    std::optional<double> alpha;
    WorldOverrides world;
    bool raw = false;
};

int run_experiment_cmd(const ExperimentArgs& a) {
    using gmeta::experiment::SweepVariable;
    json file = a.config.empty() ? json::object() : gmeta::config::read_json(a.config);
    SweepVariable var = SweepVariable::gini_degree;
    if (!a.variable.empty()) var = gmeta::experiment::parse_variable(a.variable);
    else if (file.contains("variable")) var = gmeta::experiment::parse_variable(file["variable"].get<std::string>());
    auto spec = gmeta::config::default_spec(var);
    gmeta::config::from_json(file, spec);
    spec.variable = var;
    a.world.apply(spec.base);
    if (!a.grid.empty()) spec.grid = a.grid;
    if (a.seeds) spec.seeds = *a.seeds;
    if (a.seed) spec.seed = *a.seed;
    if (a.alpha) spec.alpha = *a.alpha;

    fs::create_directories(a.out);
    const fs::path dir(a.out);
    write_json(dir / "config.json", gmeta::config::to_json(spec));
    auto tr = gmeta::experiment::run_experiment(spec);
    write(dir / "cells.csv", gmeta::experiment::cells_to_csv(tr));
    const std::string summary = gmeta::experiment::summary_to_csv(tr);
    write(dir / "summary.csv", summary);
    write(dir / "chart.svg", gmeta::experiment::chart(tr));
    json trend{{"variable", gmeta::experiment::to_string(tr.variable)},
               {"property", gmeta::experiment::measured_property(tr.variable)},
               {"primary", a.raw ? "raw" : "convolved"}};
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    trend["spearman_convolved"] = opt(tr.spearman_convolved);
    trend["spearman_raw"] = opt(tr.spearman_raw);
    trend["spearman"] = a.raw ? trend["spearman_raw"] : trend["spearman_convolved"];
    json failures = json::array();
    for (std::size_t p = 0; p < tr.points.size(); ++p)
        if (!tr.points[p].ok()) failures.push_back({{"point", p}, {"reason", tr.points[p].failure}});
    trend["failures"] = failures;
    write_json(dir / "trend.json", trend);
    std::cout << summary;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"gmeta: graph dataset metadata toolkit"};
    app.require_subcommand(1);
    std::optional<unsigned> threads;
    app.add_option("--threads", threads, "worker threads (default: GMETA_THREADS or hardware concurrency)");

    ProfileArgs pa;
    auto* prof = app.add_subcommand("profile", "compute the 15 dataset properties of a graph");
    prof->add_option("graph", pa.graph, "edge-list TSV or JSON graph")->required()->check(CLI::ExistingFile);
    prof->add_option("--features", pa.features, "features CSV")->check(CLI::ExistingFile);
    prof->add_option("--labels", pa.labels, "labels CSV")->check(CLI::ExistingFile);
    prof->add_option("--out", pa.out, "output prefix; writes PREFIX.csv and PREFIX.json (default: CSV to stdout)");
    prof->add_option("--dataset", pa.dataset, "dataset name for the output row (default: graph file stem)");
    prof->add_flag("--directed", pa.directed, "treat TSV edges as directed");
    prof->add_flag("--clamp", pa.clamp, "clamp multiplicities for degree statistics too");
    prof->add_flag("--augmented-gini", pa.augmented, "Gini over degrees including the self-loop");

    RegressArgs ra;
    auto* reg = app.add_subcommand("regress", "multivariate sparse group lasso on metadata tables");
    reg->add_option("--properties", ra.properties, "properties CSV (rows = datasets)")->required()->check(CLI::ExistingFile);
    reg->add_option("--performance", ra.performance, "performance CSV (rows = datasets)")->required()->check(CLI::ExistingFile);
    reg->add_option("--lambda1", ra.lambda1, "entrywise l1 penalty")->check(CLI::NonNegativeNumber);
    reg->add_option("--lambda-g", ra.lambda_g, "row-group l2 penalty")->check(CLI::NonNegativeNumber);
    reg->add_option("--path", ra.path, "solve a K-point regularization path instead")->check(CLI::PositiveNumber);
    reg->add_option("--ratio", ra.ratio, "lambda_g / lambda1 along the path")->check(CLI::NonNegativeNumber);
    reg->add_option("--min-ratio", ra.min_ratio, "smallest lambda1 as a fraction of lambda_max")->check(CLI::Range(1e-12, 1.0));
    reg->add_flag("--cv", ra.cv, "leave-one-dataset-out cross-validation along the path");
    reg->add_option("--missing", ra.missing, "missing cells: drop rows or impute column means")
        ->check(CLI::IsMember({"drop", "impute"}));
    reg->add_option("--zero-variance", ra.zero_variance, "constant columns: drop or error")
        ->check(CLI::IsMember({"drop", "error"}));
    reg->add_option("--tol", ra.tol, "relative objective change for convergence");
    reg->add_option("--max-iter", ra.max_iter, "iteration cap");
    reg->add_option("--out", ra.out, "output directory");

    GenerateArgs ga;
    auto* gen = app.add_subcommand("generate", "sample a synthetic dataset");
    gen->add_option("--params", ga.params, "parameter JSON ({\"model\": \"world\"|\"dc_csbm\", ...})")
        ->check(CLI::ExistingFile);
    gen->add_option("--calibrate-gini", ga.calibrate, "search the power exponent for this Gini-Degree")
        ->check(CLI::Range(0.0, 1.0));
    gen->add_option("--seed", ga.world.seed, "random seed");
    gen->add_option("--out", ga.out, "output directory");
    add_world_flags(gen, ga.world);

    ConvolveArgs ca;
    auto* conv = app.add_subcommand("convolve", "mean aggregation over augmented neighborhoods");
    conv->add_option("graph", ca.graph, "graph file")->required()->check(CLI::ExistingFile);
    conv->add_option("--features", ca.features, "features CSV")->required()->check(CLI::ExistingFile);
    conv->add_option("--out", ca.out, "output CSV");
    conv->add_flag("--directed", ca.directed, "treat TSV edges as directed");

    SeparateArgs sa;
    auto* sep = app.add_subcommand("separate", "alpha-subgroup separability sweep over feature dimension");
    sep->add_option("--config", sa.config, "sweep JSON")->check(CLI::ExistingFile);
    sep->add_option("--d-grid", sa.d_grid, "feature dimensions")->delimiter(',');
    sep->add_option("--seeds", sa.seeds, "replicates per dimension")->check(CLI::PositiveNumber);
    sep->add_option("--gamma", sa.gamma, "(p - q)/(p + q)")->check(CLI::Range(0.0, 1.0));
    sep->add_option("--density-c", sa.density_c, "p + q = c log^3 n / n")->check(CLI::PositiveNumber);
    sep->add_option("--alpha-c", sa.alpha_c, "alpha = c / log n")->check(CLI::PositiveNumber);
    sep->add_option("--theta-exponent", sa.theta_exponent, "power-law exponent of theta");
    sep->add_option("--mean-distance", sa.mean_distance, "||mu - nu||")->check(CLI::Range(0.0, 2.0));
    sep->add_option("--seed", sa.seed, "master seed");
    sep->add_flag("--control", sa.control, "p = q and mu = nu control");
    sep->add_option("--out", sa.out, "output directory");

    ExperimentArgs ea;
    auto* exp = app.add_subcommand("experiment", "controlled sweep with the proxy classifier");
    exp->add_option("--config", ea.config, "experiment JSON")->check(CLI::ExistingFile);
    exp->add_option("--variable", ea.variable, "gini_degree | average_degree | edge_homogeneity | feature_cluster_variance")
        ->check(CLI::IsMember({"gini_degree", "average_degree", "edge_homogeneity", "feature_cluster_variance"}));
    exp->add_option("--grid", ea.grid, "grid values")->delimiter(',');
    exp->add_option("--seeds", ea.seeds, "replicates per point")->check(CLI::PositiveNumber);
    exp->add_option("--seed", ea.seed, "master seed");
    exp->add_option("--alpha", ea.alpha, "degree-mode alpha for the subgroup size")->check(CLI::PositiveNumber);
    exp->add_flag("--raw", ea.raw, "report the unconvolved-feature control as the primary trend");
    exp->add_option("--out", ea.out, "output directory");
    add_world_flags(exp, ea.world);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    if (threads) setenv("GMETA_THREADS", std::to_string(*threads).c_str(), 1);

    try {
        if (*prof) return run_profile(pa);
        if (*reg) return run_regress(ra);
        if (*gen) return run_generate(ga);
        if (*conv) return run_convolve(ca);
        if (*sep) return run_separate(sa);
        if (*exp) return run_experiment_cmd(ea);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
