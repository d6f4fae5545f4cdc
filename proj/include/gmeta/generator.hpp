#pragma once
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include <gmeta/error.hpp>
#include <gmeta/graph.hpp>
#include <gmeta/properties.hpp>
#include <gmeta/random.hpp>
#include <gmeta/stats.hpp>

namespace gmeta::generator {

/// Two-class degree-corrected contextual SBM parameters.
struct DcCsbmParams {
    std::size_t n = 0;
    Eigen::VectorXd mu;
    Eigen::VectorXd nu;
    double p_intra = 0;
    double q_inter = 0;
    /// Degree corrections; empty means all ones. Renormalized per class on use.
    std::vector<double> theta;
    std::uint64_t seed = 0;

    void validate() const {
        if (n == 0) throw DomainError("DC-CSBM needs n >= 1");
        if (mu.size() == 0 || mu.size() != nu.size()) throw DomainError("mu and nu must be non-empty with equal dimension");
        if (mu.norm() > 1 + 1e-12 || nu.norm() > 1 + 1e-12) throw DomainError("mean vectors must have norm <= 1");
        if (!(p_intra > 0 && q_inter > 0)) throw DomainError("edge intensities must be positive");
        if (!theta.empty() && theta.size() != n) throw DomainError("theta length differs from n");
        for (double t : theta)
            if (!(t > 0 && t <= static_cast<double>(n))) throw DomainError("theta entries must lie in (0, n]");
    }
};

/// k-cluster DC-SBM parameters with GraphWorld-style knobs.
struct WorldParams {
    std::size_t n = 2000;
    double average_degree = 30;
    int num_clusters = 4;
    double cluster_size_slope = 0.5;
    double p_to_q_ratio = 4;
    int feature_dim = 16;
    double feature_center_distance = 0.5;
    double feature_cluster_variance = 0.05;
    double power_exponent = 2.5;
    double theta_max = 0; ///< 0 means n
    bool simple = false;  ///< clamp multiplicities to 1
    std::uint64_t seed = 1;

    void validate() const {
        if (n < 2) throw DomainError("world graph needs n >= 2");
        if (!(average_degree > 0)) throw DomainError("average_degree must be positive");
        if (average_degree >= static_cast<double>(n)) throw DomainError("average_degree must be below n");
        if (num_clusters < 2) throw DomainError("num_clusters must be >= 2");
        if (static_cast<std::size_t>(num_clusters) > n) throw DomainError("more clusters than nodes");
        if (cluster_size_slope < 0) throw DomainError("cluster_size_slope must be non-negative");
        if (!(p_to_q_ratio > 0)) throw DomainError("p_to_q_ratio must be positive");
        if (feature_dim < num_clusters) throw DomainError("feature_dim must be >= num_clusters for simplex centers");
        if (feature_center_distance < 0 || feature_cluster_variance < 0) throw DomainError("feature spreads must be non-negative");
        if (!(power_exponent > 1)) throw DomainError("power_exponent must exceed 1");
        if (theta_max < 0) throw DomainError("theta_max must be non-negative");
    }
};

struct Sample {
    Graph graph;
    FeatureMatrix features;
    LabelVector labels;
    std::vector<double> theta;
    /// Largest expected multiplicity theta_i theta_j P_kl over node pairs.
    double max_pair_intensity = 0;
    std::vector<std::string> warnings;
};

/// Expected multiplicities above this leave the sparse regime.
inline constexpr double kIntensityWarning = 30.0;

/// i.i.d. Ber(1/2) class labels.
inline LabelVector assign_classes(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::bernoulli_distribution coin(0.5);
    std::vector<int> y(n);
    for (auto& v : y) v = coin(rng) ? 1 : 0;
    return LabelVector(std::move(y), 2);
}

/**
 * Rescales theta so every class sums to its size, then clamps entries above
 * theta_max and repeats until both hold (at most 100 rounds).
 */
inline void renormalize_theta(std::vector<double>& theta, const LabelVector& labels, double theta_max) {
    if (theta.size() != labels.size()) throw DomainError("theta length differs from label count");
    const auto sizes = labels.class_sizes();
    for (std::size_t k = 0; k < sizes.size(); ++k)
        if (sizes[k] && theta_max * static_cast<double>(sizes[k]) < static_cast<double>(sizes[k]) * (1 - 1e-12))
            throw DomainError("theta_max below 1 cannot satisfy the per-class normalization");
    for (int round = 0; round < 100; ++round) {
        std::vector<double> sum(sizes.size(), 0.0);
        for (std::size_t i = 0; i < theta.size(); ++i) sum[static_cast<std::size_t>(labels[i])] += theta[i];
        for (std::size_t k = 0; k < sum.size(); ++k)
            if (sizes[k] && !(sum[k] > 0)) throw DomainError("class with non-positive theta mass");
        bool clamped = false;
        for (std::size_t i = 0; i < theta.size(); ++i) {
            const auto k = static_cast<std::size_t>(labels[i]);
            theta[i] *= static_cast<double>(sizes[k]) / sum[k];
            if (theta[i] > theta_max) {
                theta[i] = theta_max;
                clamped = true;
            }
        }
        if (!clamped) return;
    }
    throw DomainError("theta renormalization did not settle within 100 rounds");
}

/// Pareto(exponent) draws x = (1-u)^(-1/(exponent-1)), clamped and renormalized per class.
inline std::vector<double> sample_theta_powerlaw(const LabelVector& labels, double exponent, double theta_max,
                                                 std::uint64_t seed) {
    if (!(exponent > 1)) throw DomainError("power-law exponent must exceed 1");
    const auto n = labels.size();
    if (theta_max <= 0) theta_max = static_cast<double>(n);
    Rng rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> theta(n);
    for (auto& t : theta) t = std::min(std::pow(1.0 - unif(rng), -1.0 / (exponent - 1.0)), theta_max);
    renormalize_theta(theta, labels, theta_max);
    return theta;
}

/**
 * Poisson multigraph with E[A_ij] = theta_i theta_j P[k(i)][k(j)], i != j.
 *
 * For each block the total count is drawn first, then endpoints are drawn
 * i.i.d. proportional to theta. Within a class, N ~ Poi(P_kk S_k^2 / 2)
 * ordered draws with self-pairs discarded thins to exactly Poi(P_kk
 * theta_i theta_j) per unordered pair.
 */
inline Graph sample_block_edges(const LabelVector& labels, const std::vector<double>& theta,
                                const std::vector<std::vector<double>>& P, Rng& rng, double* max_intensity = nullptr) {
    const auto n = labels.size();
    const auto K = static_cast<std::size_t>(labels.num_classes);
    std::vector<std::vector<NodeId>> members(K);
    for (std::size_t i = 0; i < n; ++i) members[static_cast<std::size_t>(labels[i])].push_back(static_cast<NodeId>(i));
    std::vector<double> mass(K, 0.0), top(K, 0.0);
    std::vector<std::discrete_distribution<std::size_t>> pick(K);
    for (std::size_t k = 0; k < K; ++k) {
        std::vector<double> w;
        w.reserve(members[k].size());
        for (NodeId u : members[k]) {
            w.push_back(theta[u]);
            mass[k] += theta[u];
            top[k] = std::max(top[k], theta[u]);
        }
        if (!w.empty()) pick[k] = std::discrete_distribution<std::size_t>(w.begin(), w.end());
    }
    double peak = 0;
    double expected = 0;
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t l = k; l < K; ++l) {
            expected += (k == l ? 0.5 : 1.0) * P[k][l] * mass[k] * mass[l];
            if (members[k].size() > (k == l ? 1u : 0u) && !members[l].empty()) peak = std::max(peak, P[k][l] * top[k] * top[l]);
        }
    if (max_intensity) *max_intensity = peak;
    GraphBuilder b(n, false);
    b.reserve(static_cast<std::size_t>(expected * 1.05) + 16);
    for (std::size_t k = 0; k < K; ++k) {
        if (members[k].empty()) continue;
        for (std::size_t l = k; l < K; ++l) {
            if (members[l].empty()) continue;
            const double lam = (k == l ? 0.5 : 1.0) * P[k][l] * mass[k] * mass[l];
            if (!(lam > 0)) continue;
            std::poisson_distribution<std::uint64_t> count(lam);
            const auto N = count(rng);
            for (std::uint64_t e = 0; e < N; ++e) {
                const NodeId u = members[k][pick[k](rng)];
                const NodeId v = members[l][pick[l](rng)];
                if (u != v) b.add_edge(u, v);
            }
        }
    }
    return b.build();
}

/// Samples a DC-CSBM graph given fixed labels; the seed drives edges and features.
inline Sample sample_dc_csbm(const DcCsbmParams& params, const LabelVector& labels) {
    params.validate();
    if (labels.size() != params.n || labels.num_classes != 2) throw DomainError("labels must be two-class of length n");
    Sample s;
    s.labels = labels;
    s.theta = params.theta.empty() ? std::vector<double>(params.n, 1.0) : params.theta;
    renormalize_theta(s.theta, s.labels, static_cast<double>(params.n));
    Rng edge_rng(derive_seed(params.seed, {1}));
    const std::vector<std::vector<double>> P{{params.p_intra, params.q_inter}, {params.q_inter, params.p_intra}};
    s.graph = sample_block_edges(s.labels, s.theta, P, edge_rng, &s.max_pair_intensity);
    if (s.max_pair_intensity > kIntensityWarning)
        s.warnings.push_back("max pair intensity " + std::to_string(s.max_pair_intensity) +
                             " exceeds 30; the model leaves the sparse regime");

    const auto d = params.mu.size();
    Rng feat_rng(derive_seed(params.seed, {2}));
    std::normal_distribution<double> noise(0.0, 1.0 / std::sqrt(static_cast<double>(d)));
    RowMatrix x(static_cast<Eigen::Index>(params.n), d);
    for (std::size_t i = 0; i < params.n; ++i) {
        const auto& mean = s.labels[i] == 0 ? params.mu : params.nu;
        for (Eigen::Index c = 0; c < d; ++c) x(static_cast<Eigen::Index>(i), c) = mean[c] + noise(feat_rng);
    }
    s.features = FeatureMatrix(std::move(x));
    return s;
}

/// Samples labels ~ Ber(1/2) from the seed, then the graph and features.
inline Sample sample_dc_csbm(const DcCsbmParams& params) {
    return sample_dc_csbm(params, assign_classes(params.n, derive_seed(params.seed, {0})));
}

/// Cluster sizes proportional to 1 + k * slope, rounded by largest remainder.
inline std::vector<std::size_t> cluster_sizes(std::size_t n, int k, double slope) {
    std::vector<double> w(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) w[static_cast<std::size_t>(i)] = 1.0 + slope * i;
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    std::vector<std::size_t> sizes(w.size());
    std::vector<std::pair<double, std::size_t>> rem;
    std::size_t used = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double exact = static_cast<double>(n) * w[i] / total;
        sizes[i] = static_cast<std::size_t>(std::floor(exact));
        used += sizes[i];
        rem.emplace_back(exact - std::floor(exact), i);
    }
    std::stable_sort(rem.begin(), rem.end(), [](auto& a, auto& b) { return a.first > b.first; });
    for (std::size_t j = 0; used < n; ++j, ++used) ++sizes[rem[j % rem.size()].second];
    return sizes;
}

/// K simplex vertices in R^d with pairwise distance `distance`, centered at the origin.
inline RowMatrix simplex_centers(int k, int d, double distance) {
    if (k > d) throw DomainError("simplex centers need feature_dim >= num_clusters");
    RowMatrix c = RowMatrix::Zero(k, d);
    for (int i = 0; i < k; ++i) c(i, i) = distance / std::sqrt(2.0);
    const Eigen::RowVectorXd centroid = c.colwise().mean();
    c.rowwise() -= centroid;
    return c;
}

/**
 * Inter-cluster intensity q such that the expected edge count equals
 * n * average_degree / 2, with intra intensity ratio * q.
 */
inline double solve_inter_intensity(const WorldParams& wp, const LabelVector& labels, const std::vector<double>& theta) {
    const auto K = static_cast<std::size_t>(labels.num_classes);
    std::vector<double> S(K, 0.0), S2(K, 0.0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        S[static_cast<std::size_t>(labels[i])] += theta[i];
        S2[static_cast<std::size_t>(labels[i])] += theta[i] * theta[i];
    }
    double intra = 0, inter = 0;
    for (std::size_t k = 0; k < K; ++k) {
        intra += (S[k] * S[k] - S2[k]) / 2;
        for (std::size_t l = k + 1; l < K; ++l) inter += S[k] * S[l];
    }
    const double denom = wp.p_to_q_ratio * intra + inter;
    if (!(denom > 0)) throw DomainError("no node pairs available for edges");
    return static_cast<double>(wp.n) * wp.average_degree / 2.0 / denom;
}

/**
 * GraphWorld-style SBM: cluster sizes on a linear ramp, power-law degree
 * corrections normalized per cluster, intra/inter intensities from
 * (average_degree, p_to_q_ratio), Gaussian features around simplex centers.
 */
inline Sample sample_world(const WorldParams& wp) {
    wp.validate();
    const auto sizes = cluster_sizes(wp.n, wp.num_clusters, wp.cluster_size_slope);
    std::vector<int> y;
    y.reserve(wp.n);
    for (std::size_t k = 0; k < sizes.size(); ++k) y.insert(y.end(), sizes[k], static_cast<int>(k));
    Rng label_rng(derive_seed(wp.seed, {0}));
    std::shuffle(y.begin(), y.end(), label_rng);

    Sample s;
    s.labels = LabelVector(std::move(y), wp.num_clusters);
    s.theta = sample_theta_powerlaw(s.labels, wp.power_exponent, wp.theta_max, derive_seed(wp.seed, {1}));
    const double q = solve_inter_intensity(wp, s.labels, s.theta);
    const auto K = static_cast<std::size_t>(wp.num_clusters);
    std::vector<std::vector<double>> P(K, std::vector<double>(K, q));
    for (std::size_t k = 0; k < K; ++k) P[k][k] = wp.p_to_q_ratio * q;
    Rng edge_rng(derive_seed(wp.seed, {2}));
    s.graph = sample_block_edges(s.labels, s.theta, P, edge_rng, &s.max_pair_intensity);
    if (wp.simple) s.graph = s.graph.simple();
    if (s.max_pair_intensity > kIntensityWarning)
        s.warnings.push_back("max pair intensity " + std::to_string(s.max_pair_intensity) +
                             " exceeds 30; the model leaves the sparse regime");

    const RowMatrix centers = simplex_centers(wp.num_clusters, wp.feature_dim, wp.feature_center_distance);
    Rng feat_rng(derive_seed(wp.seed, {3}));
    std::normal_distribution<double> noise(0.0, std::sqrt(wp.feature_cluster_variance));
    RowMatrix x(static_cast<Eigen::Index>(wp.n), wp.feature_dim);
    for (std::size_t i = 0; i < wp.n; ++i)
        for (int c = 0; c < wp.feature_dim; ++c)
            x(static_cast<Eigen::Index>(i), c) = centers(s.labels[i], c) + noise(feat_rng);
    s.features = FeatureMatrix(std::move(x));
    return s;
}

struct CalibrationOptions {
    double tol = 0.02;
    int max_iter = 30;
    int seeds = 5;
    double exponent_min = 1.5;
    double exponent_max = 50;
};

struct Calibration {
    WorldParams params;
    double measured_gini = 0;
    int iterations = 0;
};

/// Median Gini-Degree over `seeds` graphs drawn with seeds derived from params.seed.
inline double median_gini(const WorldParams& wp, int seeds) {
    std::vector<double> g;
    for (int s = 0; s < seeds; ++s) {
        WorldParams w = wp;
        w.seed = derive_seed(wp.seed, {0x6a11u, static_cast<std::uint64_t>(s)});
        g.push_back(properties::gini_degree(sample_world(w).graph));
    }
    return stats::median(std::move(g));
}

/**
 * Bisection on log(power_exponent - 1) until the median Gini-Degree lies
 * within tol of target. Gini decreases as the exponent grows.
 */
inline Calibration calibrate_gini(const WorldParams& base, double target, const CalibrationOptions& opt = {}) {
    base.validate();
    Calibration c{base, median_gini(base, opt.seeds), 0};
    if (std::abs(c.measured_gini - target) < opt.tol) return c;

    auto at = [&](double e) {
        WorldParams w = base;
        w.power_exponent = e;
        return std::pair{w, median_gini(w, opt.seeds)};
    };
    auto [w_lo, g_hi] = at(opt.exponent_min); // smallest exponent: largest Gini
    auto [w_hi, g_lo] = at(opt.exponent_max);
    if (target > g_hi + opt.tol || target < g_lo - opt.tol)
        throw DomainError("target Gini " + std::to_string(target) + " outside achievable range [" +
                          std::to_string(g_lo) + ", " + std::to_string(g_hi) + "]");
    if (std::abs(g_hi - target) < opt.tol) return {w_lo, g_hi, 0};
    if (std::abs(g_lo - target) < opt.tol) return {w_hi, g_lo, 0};

    double lo = std::log(opt.exponent_min - 1), hi = std::log(opt.exponent_max - 1);
    Calibration best{base, c.measured_gini, 0};
    for (int it = 1; it <= opt.max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        auto [w, g] = at(1 + std::exp(mid));
        if (std::abs(g - target) < std::abs(best.measured_gini - target)) best = {w, g, it};
        best.iterations = it;
        if (std::abs(g - target) < opt.tol) return best;
        (g > target ? lo : hi) = mid;
    }
    throw DomainError("Gini calibration did not reach tolerance within " + std::to_string(opt.max_iter) +
                      " iterations (closest " + std::to_string(best.measured_gini) + ")");
}

} // namespace gmeta::generator
