#pragma once
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include <gmeta/csv.hpp>
#include <gmeta/error.hpp>
#include <gmeta/generator.hpp>
#include <gmeta/graph.hpp>
#include <gmeta/parallel.hpp>
#include <gmeta/random.hpp>
#include <gmeta/stats.hpp>

namespace gmeta::separability {

/// X~ = D^-1 (A + I) X together with the augmented degrees D_ii.
struct ConvolvedFeatures {
    RowMatrix values;
    std::vector<std::uint64_t> augmented_degrees;
};

/**
 * Single-layer mean aggregation over the augmented neighborhood:
 * x~_i = (x_i + sum_j w_ij x_j) / (1 + sum_j w_ij). Rows are independent and
 * each is summed in neighbor order, so the result does not depend on the
 * thread count.
 */
inline ConvolvedFeatures convolve(const Graph& g, const FeatureMatrix& x, unsigned threads = thread_count()) {
    if (x.rows() != g.num_nodes()) throw DomainError("feature rows differ from node count");
    ConvolvedFeatures cf;
    cf.values.resize(x.values.rows(), x.values.cols());
    cf.augmented_degrees.assign(g.num_nodes(), 1);
    const std::size_t n = g.num_nodes();
    const std::size_t chunk = 256;
    parallel_for(
        (n + chunk - 1) / chunk,
        [&](std::size_t c) {
            for (std::size_t i = c * chunk; i < std::min(n, (c + 1) * chunk); ++i) {
                const auto u = static_cast<NodeId>(i);
                Eigen::RowVectorXd acc = x.values.row(u);
                std::uint64_t deg = 1;
                auto nb = g.neighbors(u);
                auto w = g.weights(u);
                for (std::size_t k = 0; k < nb.size(); ++k) {
                    acc += static_cast<double>(w[k]) * x.values.row(nb[k]);
                    deg += w[k];
                }
                cf.values.row(u) = acc / static_cast<double>(deg);
                cf.augmented_degrees[i] = deg;
            }
        },
        threads);
    return cf;
}

enum class AlphaMode {
    theta,             ///< theta_j >= alpha
    degree,            ///< D_jj >= 1 + (n-1)/2 (p+q) alpha
    degree_asymptotic, ///< D_jj >= n (p+q) alpha
};

struct AlphaSubgroup {
    double alpha = 0;
    AlphaMode mode = AlphaMode::theta;
    double threshold = 0;
    std::vector<NodeId> members;                  ///< sorted
    std::vector<std::vector<NodeId>> per_class;   ///< members split by label

    std::size_t size() const noexcept { return members.size(); }
};

/// Nodes whose value meets the threshold, split by class.
inline AlphaSubgroup threshold_subgroup(const LabelVector& labels, const std::vector<double>& values, double threshold) {
    if (values.size() != labels.size()) throw DomainError("value vector length differs from label count");
    AlphaSubgroup s;
    s.threshold = threshold;
    s.per_class.resize(static_cast<std::size_t>(labels.num_classes));
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] >= threshold) {
            s.members.push_back(static_cast<NodeId>(i));
            s.per_class[static_cast<std::size_t>(labels[i])].push_back(static_cast<NodeId>(i));
        }
    return s;
}

/// Degree threshold implied by alpha in the given mode (theta mode: alpha itself).
inline double alpha_threshold(std::size_t n, double alpha, double p_intra, double q_inter, AlphaMode mode) {
    const double nn = static_cast<double>(n);
    switch (mode) {
    case AlphaMode::degree: return 1.0 + (nn - 1.0) / 2.0 * (p_intra + q_inter) * alpha;
    case AlphaMode::degree_asymptotic: return nn * (p_intra + q_inter) * alpha;
    default: return alpha;
    }
}

/**
 * alpha-subgroups C_0(alpha), C_1(alpha). `values` holds theta in theta mode
 * and augmented degrees D_jj in the degree modes.
 */
inline AlphaSubgroup alpha_subgroup(const LabelVector& labels, const std::vector<double>& values, double alpha,
                                    double p_intra, double q_inter, AlphaMode mode) {
    if (!(alpha > 0)) throw DomainError("alpha must be positive");
    auto s = threshold_subgroup(labels, values, alpha_threshold(labels.size(), alpha, p_intra, q_inter, mode));
    s.alpha = alpha;
    s.mode = mode;
    return s;
}

inline std::vector<double> to_double(const std::vector<std::uint64_t>& v) { return {v.begin(), v.end()}; }

struct Hyperplane {
    Eigen::VectorXd v;
    double b = 0;

    double side(const Eigen::Ref<const Eigen::RowVectorXd>& x) const { return x.dot(v) + b; }
};

/// Unit normal (nu - mu)/||nu - mu|| through the midpoint (mu + nu)/2.
inline Hyperplane midpoint_hyperplane(const Eigen::VectorXd& mu, const Eigen::VectorXd& nu) {
    if (mu.size() != nu.size()) throw DomainError("mean vectors differ in dimension");
    const Eigen::VectorXd diff = nu - mu;
    const double norm = diff.norm();
    if (!(norm > 0)) throw DomainError("degenerate hyperplane: mu equals nu");
    Hyperplane h;
    h.v = diff / norm;
    h.b = -(mu + nu).dot(h.v) / 2.0;
    return h;
}

/**
 * Fraction of subgroup members strictly on their class side: class 0 needs
 * <x~_i, v> + b < 0, class 1 needs > 0. nullopt for an empty subgroup.
 */
inline std::optional<double> separability_fraction(const RowMatrix& xt, const LabelVector& labels,
                                                   const AlphaSubgroup& sub, const Hyperplane& h) {
    if (sub.members.empty()) return std::nullopt;
    if (static_cast<Eigen::Index>(h.v.size()) != xt.cols()) throw DomainError("hyperplane dimension mismatch");
    std::size_t good = 0;
    for (NodeId i : sub.members) {
        if (labels[i] > 1) throw DomainError("separability is defined for two classes");
        const double s = h.side(xt.row(i));
        if ((labels[i] == 0 && s < 0) || (labels[i] == 1 && s > 0)) ++good;
    }
    return static_cast<double>(good) / static_cast<double>(sub.members.size());
}

inline std::optional<double> separability_fraction(const ConvolvedFeatures& cf, const LabelVector& labels,
                                                   const AlphaSubgroup& sub, const Hyperplane& h) {
    return separability_fraction(cf.values, labels, sub, h);
}

namespace detail {

/// Dense-tableau phase-I simplex for {x >= 0 : A x = b} with b >= 0.
struct PhaseOne {
    double objective = 0;          ///< minimal sum of artificials
    std::vector<double> x;         ///< primal values of the structural columns
    std::vector<double> duals;     ///< one per equality row
    long pivots = 0;
};

inline PhaseOne phase_one(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, long max_pivots) {
    const auto m = static_cast<std::size_t>(A.rows());
    const auto ns = static_cast<std::size_t>(A.cols());
    const std::size_t cols = ns + m; // structural + artificial
    const std::size_t width = cols + 1;
    std::vector<double> T(m * width, 0.0);
    std::vector<double> z(width, 0.0);
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (b[static_cast<Eigen::Index>(i)] < 0) throw DomainError("phase one needs b >= 0");
        for (std::size_t j = 0; j < ns; ++j) T[i * width + j] = A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        T[i * width + ns + i] = 1.0;
        T[i * width + cols] = b[static_cast<Eigen::Index>(i)];
        basis[i] = ns + i;
    }
    // Reduced costs for c = (0, 1): z_j = c_j - sum_i T_ij; z_rhs = -objective.
    for (std::size_t j = 0; j < width; ++j) {
        double s = 0;
        for (std::size_t i = 0; i < m; ++i) s += T[i * width + j];
        z[j] = (j >= ns && j < cols ? 1.0 : 0.0) - s;
    }
    const double cost_tol = 1e-11, piv_tol = 1e-10;
    bool bland = false;
    long degenerate_streak = 0;
    PhaseOne out;
    for (;;) {
        std::size_t enter = cols;
        double best = -cost_tol;
        for (std::size_t j = 0; j < cols; ++j) {
            if (z[j] < best) {
                enter = j;
                if (bland) break;
                best = z[j];
            }
        }
        if (enter == cols) break;
        std::size_t leave = m;
        double ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            const double a = T[i * width + enter];
            if (a <= piv_tol) continue;
            const double r = T[i * width + cols] / a;
            if (r < ratio - 1e-15 || (r <= ratio + 1e-15 && leave < m && basis[i] < basis[leave])) {
                ratio = r;
                leave = i;
            }
        }
        if (leave == m) throw NumericalError("phase-one simplex unbounded", out.pivots);
        if (++out.pivots > max_pivots) throw NumericalError("simplex pivot limit reached", out.pivots);
        degenerate_streak = ratio <= 1e-15 ? degenerate_streak + 1 : 0;
        if (degenerate_streak > static_cast<long>(m) + 50) bland = true;

        double* prow = &T[leave * width];
        const double pv = prow[enter];
        for (std::size_t j = 0; j < width; ++j) prow[j] /= pv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave) continue;
            double* row = &T[i * width];
            const double f = row[enter];
            if (f == 0) continue;
            for (std::size_t j = 0; j < width; ++j) row[j] -= f * prow[j];
            row[enter] = 0;
        }
        const double f = z[enter];
        for (std::size_t j = 0; j < width; ++j) z[j] -= f * prow[j];
        z[enter] = 0;
        basis[leave] = enter;
    }
    out.objective = -z[cols];
    out.x.assign(ns, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < ns) out.x[basis[i]] = T[i * width + cols];
    out.duals.resize(m);
    for (std::size_t i = 0; i < m; ++i) out.duals[i] = 1.0 - z[ns + i];
    return out;
}

} // namespace detail

struct ExactSeparability {
    bool separable = false;
    std::optional<Hyperplane> witness;
    double margin = 0;                 ///< min_i y_i (<x_i, v> + b) for the returned witness
    std::vector<double> certificate;   ///< convex weights with sum_i lambda_i y_i (x_i, 1) = 0 when infeasible
    long pivots = 0;
};

/**
 * Decides whether a hyperplane strictly separates the two classes of the
 * subgroup. By Gordan's alternative, no separator exists iff some convex
 * combination of z_i = y_i (x_i, 1) vanishes; phase I of the simplex
 * method searches for it. A positive phase-I optimum yields a separator
 * from the dual solution, which is verified against the margin before
 * being returned.
 */
inline ExactSeparability exact_separability(const RowMatrix& xt, const LabelVector& labels, const AlphaSubgroup& sub,
                                            std::size_t cap = 2000, double margin = 1e-9) {
    if (sub.members.size() > cap)
        throw DomainError("subgroup of " + std::to_string(sub.members.size()) + " nodes exceeds the exact-separability cap of " +
                          std::to_string(cap) + "; use separability_fraction instead");
    ExactSeparability res;
    const auto N = static_cast<Eigen::Index>(sub.members.size());
    const auto d = xt.cols();
    if (N == 0) {
        res.separable = true;
        res.witness = Hyperplane{Eigen::VectorXd::Zero(d), 0.0};
        res.margin = std::numeric_limits<double>::infinity();
        return res;
    }
    Eigen::MatrixXd Z(d + 1, N);
    for (Eigen::Index k = 0; k < N; ++k) {
        const NodeId i = sub.members[static_cast<std::size_t>(k)];
        if (labels[i] > 1) throw DomainError("separability is defined for two classes");
        const double y = labels[i] == 1 ? 1.0 : -1.0;
        Z.col(k).head(d) = y * xt.row(i).transpose();
        Z(d, k) = y;
    }
    Eigen::MatrixXd A(d + 2, N);
    A.topRows(d + 1) = Z;
    A.row(d + 1).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(d + 2);
    b[d + 1] = 1.0;
    auto lp = detail::phase_one(A, b, 50 * (N + d + 2) + 1000);
    res.pivots = lp.pivots;
    if (lp.objective > margin) {
        Eigen::VectorXd u(d + 1);
        for (Eigen::Index j = 0; j <= d; ++j) u[j] = -lp.duals[static_cast<std::size_t>(j)];
        const double scale = u.head(d).norm() > 0 ? u.head(d).norm() : std::abs(u[d]);
        if (scale > 0) {
            u /= scale;
            const double worst = (Z.transpose() * u).minCoeff();
            if (worst > margin) {
                res.separable = true;
                res.witness = Hyperplane{u.head(d), u[d]};
                res.margin = worst;
                return res;
            }
        }
    }
    res.certificate = lp.x;
    return res;
}

struct ConcentrationReport {
    std::size_t subgroup_size = 0;
    double delta = 0;
    double delta_prime = 0;
    bool class_sizes_concentrated = false; ///< event I1
    double degree_violation_rate = 0;      ///< share of members outside I2
    double neighborhood_violation_rate = 0; ///< share of members outside I3
    double any_violation_rate = 0;
};

/**
 * Empirical check of the degree and neighborhood concentration events on
 * the theta-mode alpha-subgroup, with delta = n^(-1/2+eps) and
 * delta' = (alpha log n)^(-1/2+eps). Neighborhood fractions are taken over
 * non-self neighbors.
 */
inline ConcentrationReport concentration_report(const Graph& g, const LabelVector& labels,
                                                const std::vector<double>& theta, double p_intra, double q_inter,
                                                double alpha, double eps = 0.05) {
    if (labels.num_classes != 2) throw DomainError("concentration report expects two classes");
    const double n = static_cast<double>(g.num_nodes());
    ConcentrationReport r;
    r.delta = std::pow(n, -0.5 + eps);
    r.delta_prime = std::pow(alpha * std::log(n), -0.5 + eps);
    const auto sizes = labels.class_sizes();
    r.class_sizes_concentrated = true;
    for (auto s : sizes)
        r.class_sizes_concentrated &= static_cast<double>(s) >= n / 2 * (1 - r.delta) && static_cast<double>(s) <= n / 2 * (1 + r.delta);
    const auto sub = alpha_subgroup(labels, theta, alpha, p_intra, q_inter, AlphaMode::theta);
    r.subgroup_size = sub.size();
    if (sub.members.empty()) return r;
    const double pq = p_intra + q_inter;
    std::size_t bad2 = 0, bad3 = 0, bad_any = 0;
    for (NodeId i : sub.members) {
        auto nb = g.neighbors(i);
        auto w = g.weights(i);
        double to0 = 0, deg = 0;
        for (std::size_t k = 0; k < nb.size(); ++k) {
            deg += w[k];
            if (labels[nb[k]] == 0) to0 += w[k];
        }
        const double D = deg + 1;
        const double target = 0.5 * pq * theta[i];
        const bool ok2 = D / n >= target * (1 - r.delta_prime) && D / n <= target * (1 + r.delta_prime);
        const double e = labels[i];
        const double f0 = ((1 - e) * p_intra + e * q_inter) / pq;
        const double f1 = ((1 - e) * q_inter + e * p_intra) / pq;
        bool ok3 = deg > 0;
        if (ok3) {
            const double a0 = to0 / deg, a1 = 1 - a0;
            ok3 = a0 >= f0 * (1 - r.delta_prime) && a0 <= f0 * (1 + r.delta_prime) && a1 >= f1 * (1 - r.delta_prime) &&
                  a1 <= f1 * (1 + r.delta_prime);
        }
        bad2 += !ok2;
        bad3 += !ok3;
        bad_any += !(ok2 && ok3);
    }
    const double m = static_cast<double>(sub.size());
    r.degree_violation_rate = static_cast<double>(bad2) / m;
    r.neighborhood_violation_rate = static_cast<double>(bad3) / m;
    r.any_violation_rate = static_cast<double>(bad_any) / m;
    return r;
}

// ---------------------------------------------------------------------------
// Separability sweep over feature dimension

struct SweepConfig {
    std::vector<int> d_grid{16, 64, 256};
    int seeds = 20;
    double gamma = 0.5;            ///< (p - q)/(p + q)
    double density_c = 0.5;        ///< p + q = c log^3 n / n
    double mean_distance = 1.0;    ///< ||mu - nu||; mu = -e1 * dist/2, nu = +e1 * dist/2
    double alpha_c = 2.0;          ///< alpha = alpha_c / log n
    double theta_exponent = 2.5;
    bool control = false;          ///< p = q and mu = nu = 0, hyperplane kept from the nominal means
    std::uint64_t seed = 1;
    double eps = 0.05;
};

struct SweepRow {
    int d = 0;
    std::size_t n = 0;
    double alpha = 0;
    double p_intra = 0;
    double q_inter = 0;
    int seed_index = 0;
    std::size_t subgroup_size = 0;
    std::optional<double> fraction;
    double degree_violation = 0;
    double neighborhood_violation = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<int> d;
    std::vector<double> median_fraction;
    bool non_decreasing = false;
};

/// n = round(d log^2 d), inside the omega(d log d) <= n <= poly(d) band.
inline std::size_t default_n(int d) {
    const double l = std::log(static_cast<double>(d));
    return static_cast<std::size_t>(std::llround(d * l * l));
}

/// Edge intensities for given n, density constant and Gamma(p, q).
inline std::pair<double, double> sparse_intensities(std::size_t n, double c, double gamma) {
    const double l = std::log(static_cast<double>(n));
    const double sum = c * l * l * l / static_cast<double>(n);
    const double p = sum * (1 + gamma) / 2, q = sum * (1 - gamma) / 2;
    if (!(p < 1 && q > 0)) throw DomainError("Remark-1 intensities fall outside (0, 1); lower the density constant");
    return {p, q};
}

/// One sweep cell: sample, convolve, classify the alpha-subgroup with the midpoint hyperplane.
inline SweepRow separability_cell(const SweepConfig& cfg, int d, int seed_index) {
    SweepRow row;
    row.d = d;
    row.seed_index = seed_index;
    row.n = default_n(d);
    auto [p, q] = sparse_intensities(row.n, cfg.density_c, cfg.control ? 0.0 : cfg.gamma);
    row.p_intra = p;
    row.q_inter = q;
    row.alpha = cfg.alpha_c / std::log(static_cast<double>(row.n));

    const std::uint64_t cell_seed = derive_seed(cfg.seed, {static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(seed_index)});
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(d), nu = Eigen::VectorXd::Zero(d);
    mu[0] = -cfg.mean_distance / 2;
    nu[0] = cfg.mean_distance / 2;
    const Hyperplane h = midpoint_hyperplane(mu, nu);

    generator::DcCsbmParams params;
    params.n = row.n;
    params.mu = cfg.control ? Eigen::VectorXd::Zero(d) : mu;
    params.nu = cfg.control ? Eigen::VectorXd::Zero(d) : nu;
    params.p_intra = p;
    params.q_inter = q;
    params.seed = cell_seed;
    const auto labels = generator::assign_classes(row.n, derive_seed(cell_seed, {0}));
    params.theta = generator::sample_theta_powerlaw(labels, cfg.theta_exponent, 0, derive_seed(cell_seed, {3}));
    auto s = generator::sample_dc_csbm(params, labels);
    auto cf = convolve(s.graph, s.features, 1);
    auto sub = alpha_subgroup(s.labels, s.theta, row.alpha, p, q, AlphaMode::theta);
    row.subgroup_size = sub.size();
    row.fraction = separability_fraction(cf, s.labels, sub, h);
    auto rep = concentration_report(s.graph, s.labels, s.theta, p, q, row.alpha, cfg.eps);
    row.degree_violation = rep.degree_violation_rate;
    row.neighborhood_violation = rep.neighborhood_violation_rate;
    return row;
}

/// Runs every (d, seed) cell in parallel and summarizes the median fraction per d.
inline SweepResult separability_sweep(const SweepConfig& cfg, unsigned threads = thread_count()) {
    if (cfg.d_grid.empty() || cfg.seeds < 1) throw DomainError("sweep needs a d grid and at least one seed");
    SweepResult res;
    const auto cells = cfg.d_grid.size() * static_cast<std::size_t>(cfg.seeds);
    res.rows.resize(cells);
    parallel_for(
        cells,
        [&](std::size_t i) {
            const auto di = i / static_cast<std::size_t>(cfg.seeds);
            res.rows[i] = separability_cell(cfg, cfg.d_grid[di], static_cast<int>(i % static_cast<std::size_t>(cfg.seeds)));
        },
        threads);
    res.non_decreasing = true;
    for (std::size_t di = 0; di < cfg.d_grid.size(); ++di) {
        std::vector<double> f;
        for (int s = 0; s < cfg.seeds; ++s) {
            const auto& r = res.rows[di * static_cast<std::size_t>(cfg.seeds) + static_cast<std::size_t>(s)];
            if (r.fraction) f.push_back(*r.fraction);
        }
        res.d.push_back(cfg.d_grid[di]);
        res.median_fraction.push_back(stats::median(f));
        if (di > 0 && !(res.median_fraction[di] >= res.median_fraction[di - 1])) res.non_decreasing = false;
    }
    return res;
}

inline std::string sweep_to_csv(const SweepResult& r) {
    std::string s = "d,n,alpha,p_intra,q_inter,seed,subgroup_size,fraction,degree_violation,neighborhood_violation\n";
    for (const auto& row : r.rows)
        s += std::to_string(row.d) + "," + std::to_string(row.n) + "," + csv::format(row.alpha) + "," +
             csv::format(row.p_intra) + "," + csv::format(row.q_inter) + "," + std::to_string(row.seed_index) + "," +
             std::to_string(row.subgroup_size) + "," + csv::format(row.fraction) + "," + csv::format(row.degree_violation) +
             "," + csv::format(row.neighborhood_violation) + "\n";
    return s;
}

} // namespace gmeta::separability
