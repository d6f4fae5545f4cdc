#pragma once
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmeta/classifier.hpp>
#include <gmeta/csv.hpp>
#include <gmeta/error.hpp>
#include <gmeta/generator.hpp>
#include <gmeta/parallel.hpp>
#include <gmeta/properties.hpp>
#include <gmeta/random.hpp>
#include <gmeta/separability.hpp>
#include <gmeta/stats.hpp>
#include <gmeta/svg.hpp>

namespace gmeta::experiment {

enum class SweepVariable { gini_degree, average_degree, edge_homogeneity, feature_cluster_variance };

inline const char* to_string(SweepVariable v) {
    switch (v) {
    case SweepVariable::gini_degree: return "gini_degree";
    case SweepVariable::average_degree: return "average_degree";
    case SweepVariable::edge_homogeneity: return "edge_homogeneity";
    default: return "feature_cluster_variance";
    }
}

inline SweepVariable parse_variable(const std::string& s) {
    for (auto v : {SweepVariable::gini_degree, SweepVariable::average_degree, SweepVariable::edge_homogeneity,
                   SweepVariable::feature_cluster_variance})
        if (s == to_string(v)) return v;
    throw DomainError("unknown sweep variable '" + s + "'");
}

/// Name of the property each sweep is scored against.
inline const char* measured_property(SweepVariable v) {
    switch (v) {
    case SweepVariable::gini_degree: return "gini_degree";
    case SweepVariable::average_degree: return "average_degree";
    case SweepVariable::edge_homogeneity: return "edge_homogeneity";
    default: return "in_feature_similarity";
    }
}

struct ExperimentSpec {
    generator::WorldParams base;
    SweepVariable variable = SweepVariable::gini_degree;
    /// Gini targets, average degrees, p/q ratios or feature variances.
    std::vector<double> grid{0.15, 0.35, 0.55, 0.75, 0.88};
    int seeds = 5;
    std::array<double, 3> split{0.6, 0.2, 0.2};
    classifier::Config classifier;
    /// Degree-mode alpha: members have augmented degree >= 1 + average_degree * alpha.
    double alpha = 0.5;
    generator::CalibrationOptions calibration;
    std::uint64_t seed = 1;

    void validate() const {
        base.validate();
        if (grid.empty()) throw DomainError("experiment grid is empty");
        if (seeds < 1) throw DomainError("experiment needs at least one seed");
        if (std::abs(split[0] + split[1] + split[2] - 1.0) > 1e-9) throw DomainError("split ratios must sum to 1");
        if (!(alpha > 0)) throw DomainError("alpha must be positive");
    }
};

struct Cell {
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::uint64_t m = 0;
    double measured = 0;
    double acc_convolved = 0;
    double acc_raw = 0;
    std::size_t subgroup_size = 0;
};

struct Point {
    double grid_value = 0;
    generator::WorldParams params;
    std::vector<Cell> cells;
    std::string failure; ///< empty on success
    double measured_mean = 0;
    double acc_convolved_mean = 0, acc_convolved_sd = 0;
    double acc_raw_mean = 0, acc_raw_sd = 0;
    double subgroup_mean = 0;

    bool ok() const { return failure.empty(); }
};

struct TrendResult {
    SweepVariable variable = SweepVariable::gini_degree;
    std::vector<Point> points;
    std::optional<double> spearman_convolved;
    std::optional<double> spearman_raw;
};

/// Point parameters before per-seed sampling (Gini targets are calibrated).
inline generator::WorldParams point_params(const ExperimentSpec& spec, std::size_t point) {
    generator::WorldParams w = spec.base;
    const double v = spec.grid[point];
    w.seed = derive_seed(spec.seed, {point});
    switch (spec.variable) {
    case SweepVariable::gini_degree: return generator::calibrate_gini(w, v, spec.calibration).params;
    case SweepVariable::average_degree: w.average_degree = v; break;
    case SweepVariable::edge_homogeneity: w.p_to_q_ratio = v; break;
    case SweepVariable::feature_cluster_variance: w.feature_cluster_variance = v; break;
    }
    w.validate();
    return w;
}

inline double measure(SweepVariable v, const generator::Sample& s) {
    switch (v) {
    case SweepVariable::gini_degree: return properties::gini_degree(s.graph);
    case SweepVariable::average_degree: return properties::average_degree(s.graph);
    case SweepVariable::edge_homogeneity: return properties::edge_homogeneity(s.graph, s.labels);
    default: {
        auto fs = properties::feature_similarities(s.graph, s.features, s.labels);
        if (!fs.in_similarity) throw DomainError("no intra-class edges to measure in-feature similarity");
        return *fs.in_similarity;
    }
    }
}

/// Generates, convolves and scores one (point, seed) cell.
inline Cell run_cell(const ExperimentSpec& spec, const generator::WorldParams& params, std::size_t point, int s) {
    generator::WorldParams w = params;
    w.seed = derive_seed(spec.seed, {point, static_cast<std::uint64_t>(s), 1});
    const auto sample = generator::sample_world(w);
    Cell c;
    c.seed = w.seed;
    c.n = sample.graph.num_nodes();
    c.m = sample.graph.num_edges();
    c.measured = measure(spec.variable, sample);
    const auto cf = separability::convolve(sample.graph, sample.features, 1);
    const auto split = classifier::make_split(c.n, derive_seed(spec.seed, {point, static_cast<std::uint64_t>(s), 2}), spec.split);
    c.acc_convolved = classifier::train_proxy_classifier(cf.values, sample.labels, split, spec.classifier).test;
    c.acc_raw = classifier::train_proxy_classifier(sample.features.values, sample.labels, split, spec.classifier).test;
    const double threshold = 1.0 + w.average_degree * spec.alpha;
    c.subgroup_size = separability::threshold_subgroup(sample.labels, separability::to_double(cf.augmented_degrees), threshold).size();
    return c;
}

/**
 * Runs every grid point over `seeds` replicates. Points that fail to
 * calibrate or generate carry a failure annotation and are excluded from
 * the trend. All RNG streams derive from (spec.seed, point, replicate), so
 * results do not depend on the thread count.
 */
inline TrendResult run_experiment(const ExperimentSpec& spec, unsigned threads = thread_count()) {
    spec.validate();
    TrendResult tr;
    tr.variable = spec.variable;
    const auto P = spec.grid.size();
    const auto S = static_cast<std::size_t>(spec.seeds);
    tr.points.resize(P);
    parallel_for(
        P,
        [&](std::size_t p) {
            tr.points[p].grid_value = spec.grid[p];
            try {
                tr.points[p].params = point_params(spec, p);
            } catch (const std::exception& e) {
                tr.points[p].failure = e.what();
            }
        },
        threads);
    std::vector<std::optional<Cell>> cells(P * S);
    std::vector<std::string> errors(P * S);
    parallel_for(
        P * S,
        [&](std::size_t i) {
            const auto p = i / S;
            if (!tr.points[p].ok()) return;
            try {
                cells[i] = run_cell(spec, tr.points[p].params, p, static_cast<int>(i % S));
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        },
        threads);
    std::vector<double> xs, conv, raw;
    for (std::size_t p = 0; p < P; ++p) {
        auto& pt = tr.points[p];
        for (std::size_t s = 0; s < S && pt.ok(); ++s) {
            if (!errors[p * S + s].empty()) pt.failure = "seed " + std::to_string(s) + ": " + errors[p * S + s];
            else pt.cells.push_back(*cells[p * S + s]);
        }
        if (!pt.ok()) {
            pt.cells.clear();
            continue;
        }
        std::vector<double> meas, ac, ar, sub;
        for (const auto& c : pt.cells) {
            meas.push_back(c.measured);
            ac.push_back(c.acc_convolved);
            ar.push_back(c.acc_raw);
            sub.push_back(static_cast<double>(c.subgroup_size));
        }
        pt.measured_mean = stats::mean(meas);
        pt.acc_convolved_mean = stats::mean(ac);
        pt.acc_convolved_sd = stats::stddev(ac);
        pt.acc_raw_mean = stats::mean(ar);
        pt.acc_raw_sd = stats::stddev(ar);
        pt.subgroup_mean = stats::mean(sub);
        xs.push_back(pt.measured_mean);
        conv.push_back(pt.acc_convolved_mean);
        raw.push_back(pt.acc_raw_mean);
    }
    tr.spearman_convolved = stats::spearman(xs, conv);
    tr.spearman_raw = stats::spearman(xs, raw);
    return tr;
}

inline std::string cells_to_csv(const TrendResult& tr) {
    std::string s = "point,grid_value,power_exponent,replicate,seed,n,m,measured_" + std::string(measured_property(tr.variable)) +
                    ",acc_convolved,acc_raw,subgroup_size\n";
    for (std::size_t p = 0; p < tr.points.size(); ++p) {
        const auto& pt = tr.points[p];
        for (std::size_t r = 0; r < pt.cells.size(); ++r) {
            const auto& c = pt.cells[r];
            s += std::to_string(p) + "," + csv::format(pt.grid_value) + "," + csv::format(pt.params.power_exponent) + "," +
                 std::to_string(r) + "," + std::to_string(c.seed) + "," + std::to_string(c.n) + "," + std::to_string(c.m) + "," +
                 csv::format(c.measured) + "," + csv::format(c.acc_convolved) + "," + csv::format(c.acc_raw) + "," +
                 std::to_string(c.subgroup_size) + "\n";
        }
    }
    return s;
}

inline std::string summary_to_csv(const TrendResult& tr) {
    std::string s = "point,grid_value,power_exponent,measured_" + std::string(measured_property(tr.variable)) +
                    ",acc_convolved_mean,acc_convolved_sd,acc_raw_mean,acc_raw_sd,subgroup_mean,failure\n";
    for (std::size_t p = 0; p < tr.points.size(); ++p) {
        const auto& pt = tr.points[p];
        auto num = [&](double v) { return pt.ok() ? csv::format(v) : std::string(); };
        s += std::to_string(p) + "," + csv::format(pt.grid_value) + "," + num(pt.params.power_exponent) + "," +
             num(pt.measured_mean) + "," + num(pt.acc_convolved_mean) + "," + num(pt.acc_convolved_sd) + "," +
             num(pt.acc_raw_mean) + "," + num(pt.acc_raw_sd) + "," + num(pt.subgroup_mean) + "," + csv::escape(pt.failure) +
             "\n";
    }
    s += "# spearman_convolved," + csv::format(tr.spearman_convolved) + "\n";
    s += "# spearman_raw," + csv::format(tr.spearman_raw) + "\n";
    return s;
}

inline std::string chart(const TrendResult& tr) {
    svg::Series conv{"convolved", {}, {}, {}}, raw{"raw", {}, {}, {}};
    for (const auto& pt : tr.points) {
        if (!pt.ok()) continue;
        conv.x.push_back(pt.measured_mean);
        conv.y.push_back(pt.acc_convolved_mean);
        conv.err.push_back(pt.acc_convolved_sd);
        raw.x.push_back(pt.measured_mean);
        raw.y.push_back(pt.acc_raw_mean);
        raw.err.push_back(pt.acc_raw_sd);
    }
    return svg::line_chart(std::string("Accuracy vs ") + measured_property(tr.variable), measured_property(tr.variable),
                           "test accuracy", {conv, raw});
}

} // namespace gmeta::experiment
