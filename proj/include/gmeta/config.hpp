#pragma once
#include <fstream>
#include <string>

#include <json.hpp>

#include <gmeta/error.hpp>
#include <gmeta/experiment.hpp>
#include <gmeta/generator.hpp>
#include <gmeta/separability.hpp>

// JSON round-trips for parameter structs. Missing keys keep their defaults,
// unknown keys are rejected so typos do not pass silently.

namespace gmeta::config {

using json = nlohmann::ordered_json;

inline json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

namespace detail {

template <class T>
void take(const json& j, const char* key, T& out) {
    if (auto it = j.find(key); it != j.end()) {
        try {
            out = it->template get<T>();
        } catch (const json::exception& e) {
            throw ParseError(std::string("bad value for '") + key + "': " + e.what());
        }
    }
}

inline void reject_unknown(const json& j, std::initializer_list<const char*> known, const char* what) {
    if (!j.is_object()) throw ParseError(std::string(what) + " must be a JSON object");
    for (auto& [k, v] : j.items()) {
        bool ok = false;
        for (const char* name : known) ok |= k == name;
        if (!ok) throw ParseError(std::string("unknown key '") + k + "' in " + what);
    }
}

} // namespace detail

inline json to_json(const generator::WorldParams& w) {
    return json{{"n", w.n},
                {"average_degree", w.average_degree},
                {"num_clusters", w.num_clusters},
                {"cluster_size_slope", w.cluster_size_slope},
                {"p_to_q_ratio", w.p_to_q_ratio},
                {"feature_dim", w.feature_dim},
                {"feature_center_distance", w.feature_center_distance},
                {"feature_cluster_variance", w.feature_cluster_variance},
                {"power_exponent", w.power_exponent},
                {"theta_max", w.theta_max},
                {"simple", w.simple},
                {"seed", w.seed}};
}

inline void from_json(const json& j, generator::WorldParams& w) {
    detail::reject_unknown(j,
                           {"model", "n", "average_degree", "num_clusters", "cluster_size_slope", "p_to_q_ratio",
                            "feature_dim", "feature_center_distance", "feature_cluster_variance", "power_exponent",
                            "theta_max", "simple", "seed"},
                           "world parameters");
    detail::take(j, "n", w.n);
    detail::take(j, "average_degree", w.average_degree);
    detail::take(j, "num_clusters", w.num_clusters);
    detail::take(j, "cluster_size_slope", w.cluster_size_slope);
    detail::take(j, "p_to_q_ratio", w.p_to_q_ratio);
    detail::take(j, "feature_dim", w.feature_dim);
    detail::take(j, "feature_center_distance", w.feature_center_distance);
    detail::take(j, "feature_cluster_variance", w.feature_cluster_variance);
    detail::take(j, "power_exponent", w.power_exponent);
    detail::take(j, "theta_max", w.theta_max);
    detail::take(j, "simple", w.simple);
    detail::take(j, "seed", w.seed);
}

/// Two-class DC-CSBM with power-law theta; the JSON form of DcCsbmParams.
struct CsbmSpec {
    std::size_t n = 1000;
    int dim = 16;
    double mean_distance = 1.0; ///< mu = -e1 * dist/2, nu = +e1 * dist/2
    double p_intra = 0.03;
    double q_inter = 0.01;
    double power_exponent = 0;  ///< 0 keeps theta = 1
    bool simple = false;
    std::uint64_t seed = 1;

    generator::DcCsbmParams params() const {
        generator::DcCsbmParams p;
        p.n = n;
        p.mu = Eigen::VectorXd::Zero(dim);
        p.nu = Eigen::VectorXd::Zero(dim);
        if (dim < 1) throw DomainError("dim must be positive");
        p.mu[0] = -mean_distance / 2;
        p.nu[0] = mean_distance / 2;
        p.p_intra = p_intra;
        p.q_inter = q_inter;
        p.seed = seed;
        return p;
    }

    generator::Sample sample() const {
        auto p = params();
        p.validate();
        const auto labels = generator::assign_classes(n, derive_seed(seed, {0}));
        if (power_exponent > 0) p.theta = generator::sample_theta_powerlaw(labels, power_exponent, 0, derive_seed(seed, {3}));
        auto s = generator::sample_dc_csbm(p, labels);
        if (simple) s.graph = s.graph.simple();
        return s;
    }
};

inline json to_json(const CsbmSpec& c) {
    return json{{"model", "dc_csbm"},         {"n", c.n},
                {"dim", c.dim},               {"mean_distance", c.mean_distance},
                {"p_intra", c.p_intra},       {"q_inter", c.q_inter},
                {"power_exponent", c.power_exponent}, {"simple", c.simple},
                {"seed", c.seed}};
}

inline void from_json(const json& j, CsbmSpec& c) {
    detail::reject_unknown(j, {"model", "n", "dim", "mean_distance", "p_intra", "q_inter", "power_exponent", "simple", "seed"},
                           "DC-CSBM parameters");
    detail::take(j, "n", c.n);
    detail::take(j, "dim", c.dim);
    detail::take(j, "mean_distance", c.mean_distance);
    detail::take(j, "p_intra", c.p_intra);
    detail::take(j, "q_inter", c.q_inter);
    detail::take(j, "power_exponent", c.power_exponent);
    detail::take(j, "simple", c.simple);
    detail::take(j, "seed", c.seed);
}

inline json to_json(const separability::SweepConfig& s) {
    return json{{"d_grid", s.d_grid},       {"seeds", s.seeds},
                {"gamma", s.gamma},         {"density_c", s.density_c},
                {"mean_distance", s.mean_distance}, {"alpha_c", s.alpha_c},
                {"theta_exponent", s.theta_exponent}, {"control", s.control},
                {"seed", s.seed},           {"eps", s.eps}};
}

inline void from_json(const json& j, separability::SweepConfig& s) {
    detail::reject_unknown(j,
                           {"d_grid", "seeds", "gamma", "density_c", "mean_distance", "alpha_c", "theta_exponent",
                            "control", "seed", "eps"},
                           "separability sweep");
    detail::take(j, "d_grid", s.d_grid);
    detail::take(j, "seeds", s.seeds);
    detail::take(j, "gamma", s.gamma);
    detail::take(j, "density_c", s.density_c);
    detail::take(j, "mean_distance", s.mean_distance);
    detail::take(j, "alpha_c", s.alpha_c);
    detail::take(j, "theta_exponent", s.theta_exponent);
    detail::take(j, "control", s.control);
    detail::take(j, "seed", s.seed);
    detail::take(j, "eps", s.eps);
}

inline json to_json(const experiment::ExperimentSpec& e) {
    return json{{"base", to_json(e.base)},
                {"variable", experiment::to_string(e.variable)},
                {"grid", e.grid},
                {"seeds", e.seeds},
                {"split", e.split},
                {"classifier",
                 {{"epochs", e.classifier.epochs},
                  {"step", e.classifier.step},
                  {"l2", e.classifier.l2},
                  {"standardize", e.classifier.standardize}}},
                {"alpha", e.alpha},
                {"calibration",
                 {{"tol", e.calibration.tol},
                  {"max_iter", e.calibration.max_iter},
                  {"seeds", e.calibration.seeds},
                  {"exponent_min", e.calibration.exponent_min},
                  {"exponent_max", e.calibration.exponent_max}}},
                {"seed", e.seed}};
}

inline void from_json(const json& j, experiment::ExperimentSpec& e) {
    detail::reject_unknown(j, {"base", "variable", "grid", "seeds", "split", "classifier", "alpha", "calibration", "seed"},
                           "experiment spec");
    if (auto it = j.find("base"); it != j.end()) from_json(*it, e.base);
    if (auto it = j.find("variable"); it != j.end()) e.variable = experiment::parse_variable(it->get<std::string>());
    detail::take(j, "grid", e.grid);
    detail::take(j, "seeds", e.seeds);
    detail::take(j, "split", e.split);
    detail::take(j, "alpha", e.alpha);
    detail::take(j, "seed", e.seed);
    if (auto it = j.find("classifier"); it != j.end()) {
        detail::reject_unknown(*it, {"epochs", "step", "l2", "standardize"}, "classifier config");
        detail::take(*it, "epochs", e.classifier.epochs);
        detail::take(*it, "step", e.classifier.step);
        detail::take(*it, "l2", e.classifier.l2);
        detail::take(*it, "standardize", e.classifier.standardize);
    }
    if (auto it = j.find("calibration"); it != j.end()) {
        detail::reject_unknown(*it, {"tol", "max_iter", "seeds", "exponent_min", "exponent_max"}, "calibration options");
        detail::take(*it, "tol", e.calibration.tol);
        detail::take(*it, "max_iter", e.calibration.max_iter);
        detail::take(*it, "seeds", e.calibration.seeds);
        detail::take(*it, "exponent_min", e.calibration.exponent_min);
        detail::take(*it, "exponent_max", e.calibration.exponent_max);
    }
}

/// Per-sweep defaults: the Gini sweep mirrors the main controlled experiment,
/// the others take the remaining parameters listed for their sweep.
inline experiment::ExperimentSpec default_spec(experiment::SweepVariable v) {
    experiment::ExperimentSpec e;
    e.variable = v;
    switch (v) {
    case experiment::SweepVariable::gini_degree: e.grid = {0.15, 0.35, 0.55, 0.75, 0.88}; break;
    case experiment::SweepVariable::average_degree:
        e.grid = {10, 20, 30, 40, 50};
        e.base.p_to_q_ratio = 3;
        e.base.power_exponent = 2;
        e.base.feature_cluster_variance = 0.25;
        break;
    case experiment::SweepVariable::edge_homogeneity:
        e.grid = {1, 2, 3, 5, 10};
        e.base.average_degree = 20;
        e.base.power_exponent = 2;
        e.base.feature_cluster_variance = 0.1;
        break;
    case experiment::SweepVariable::feature_cluster_variance:
        e.grid = {2, 1, 0.5, 0.2, 0.1};
        e.base.p_to_q_ratio = 2;
        e.base.average_degree = 20;
        e.base.power_exponent = 2;
        break;
    }
    return e;
}

} // namespace gmeta::config
