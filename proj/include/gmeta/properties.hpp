#pragma once
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include <gmeta/csv.hpp>
#include <gmeta/error.hpp>
#include <gmeta/graph.hpp>

namespace gmeta::properties {

/// Whether parallel edges count with their multiplicity or as a single edge.
enum class Multiplicity { count, clamp };

namespace detail {

inline void require_nodes(const Graph& g, std::size_t min_n, std::string_view what) {
    if (g.num_nodes() < min_n)
        throw DomainError(std::string(what) + " requires at least " + std::to_string(min_n) + " node(s)");
}

/// Connected components of an undirected graph; returns (component id per node, sizes).
inline std::pair<std::vector<std::uint32_t>, std::vector<std::size_t>> components(const Graph& g) {
    const auto n = g.num_nodes();
    std::vector<std::uint32_t> comp(n, UINT32_MAX);
    std::vector<std::size_t> sizes;
    std::vector<NodeId> stack;
    for (NodeId s = 0; s < n; ++s) {
        if (comp[s] != UINT32_MAX) continue;
        const auto c = static_cast<std::uint32_t>(sizes.size());
        sizes.push_back(0);
        comp[s] = c;
        stack.push_back(s);
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            ++sizes[c];
            for (NodeId v : g.neighbors(u))
                if (comp[v] == UINT32_MAX) {
                    comp[v] = c;
                    stack.push_back(v);
                }
        }
    }
    return {std::move(comp), std::move(sizes)};
}

/// BFS hop distances from src (UINT32_MAX when unreachable).
inline std::vector<std::uint32_t> bfs(const Graph& g, NodeId src) {
    std::vector<std::uint32_t> dist(g.num_nodes(), UINT32_MAX);
    std::vector<NodeId> frontier{src}, next;
    dist[src] = 0;
    for (std::uint32_t level = 1; !frontier.empty(); ++level) {
        next.clear();
        for (NodeId u : frontier)
            for (NodeId v : g.neighbors(u))
                if (dist[v] == UINT32_MAX) {
                    dist[v] = level;
                    next.push_back(v);
                }
        frontier.swap(next);
    }
    return dist;
}

/**
 * Calls f(u, v, w) once per triangle of an undirected simple graph.
 * Edges are oriented from lower to higher (degree, id) rank so each node
 * scans at most O(sqrt(m)) out-neighbors.
 */
template <class F>
void for_each_triangle(const Graph& g, F&& f) {
    const auto n = g.num_nodes();
    auto before = [&](NodeId a, NodeId b) {
        const auto da = g.row_size(a), db = g.row_size(b);
        return da < db || (da == db && a < b);
    };
    std::vector<std::size_t> off(n + 1, 0);
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v : g.neighbors(u))
            if (before(u, v)) ++off[u + 1];
    for (std::size_t i = 0; i < n; ++i) off[i + 1] += off[i];
    std::vector<NodeId> out(off[n]);
    for (NodeId u = 0; u < n; ++u) {
        auto k = off[u];
        for (NodeId v : g.neighbors(u))
            if (before(u, v)) out[k++] = v;
    }
    std::vector<NodeId> mark(n, UINT32_MAX);
    for (NodeId u = 0; u < n; ++u) {
        for (auto k = off[u]; k < off[u + 1]; ++k) mark[out[k]] = u;
        for (auto k = off[u]; k < off[u + 1]; ++k) {
            const NodeId v = out[k];
            for (auto j = off[v]; j < off[v + 1]; ++j)
                if (mark[out[j]] == u) f(u, v, out[j]);
        }
    }
}

} // namespace detail

/// 2m/(n(n-1)) undirected, m/(n(n-1)) directed, counting distinct edges.
inline double edge_density(const Graph& g) {
    detail::require_nodes(g, 2, "edge density");
    const double n = static_cast<double>(g.num_nodes());
    const double m = static_cast<double>(g.simple().num_edges());
    return (g.directed() ? m : 2.0 * m) / (n * (n - 1.0));
}

/// 2m/n undirected, m/n directed.
inline double average_degree(const Graph& g, Multiplicity mult = Multiplicity::count) {
    detail::require_nodes(g, 1, "average degree");
    const double m = static_cast<double>(mult == Multiplicity::count ? g.num_edges() : g.simple().num_edges());
    return (g.directed() ? m : 2.0 * m) / static_cast<double>(g.num_nodes());
}

/**
 * Pearson correlation of (deg(u), deg(v)) over ordered endpoint pairs of the
 * simple undirected support; each edge contributes both orientations.
 * nullopt when the endpoint degrees have zero variance.
 */
inline std::optional<double> degree_assortativity(const Graph& g) {
    const Graph s = g.support();
    double cnt = 0, sum = 0;
    for (NodeId u = 0; u < s.num_nodes(); ++u) {
        const double du = static_cast<double>(s.row_size(u));
        cnt += du;
        sum += du * du;
    }
    if (cnt < 2) return std::nullopt;
    const double mean = sum / cnt;
    double sxy = 0, sxx = 0;
    for (NodeId u = 0; u < s.num_nodes(); ++u) {
        const double du = static_cast<double>(s.row_size(u)) - mean;
        sxx += du * du * static_cast<double>(s.row_size(u));
        for (NodeId v : s.neighbors(u)) sxy += du * (static_cast<double>(s.row_size(v)) - mean);
    }
    if (!(sxx > 0)) return std::nullopt;
    return std::clamp(sxy / sxx, -1.0, 1.0);
}

/**
 * Lower bound on the diameter of the largest connected component.
 *
 * Starts from the highest-degree node of the component and repeatedly runs
 * BFS from the farthest node of the previous sweep (ties: lowest degree,
 * then lowest id) while the eccentricity improves, up to max_sweeps BFS
 * passes. Exact on trees.
 */
inline std::uint64_t pseudo_diameter(const Graph& g, int max_sweeps = 10) {
    if (g.num_nodes() == 0) return 0;
    const Graph s = g.support();
    auto [comp, sizes] = detail::components(s);
    const auto lcc = static_cast<std::uint32_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    NodeId src = 0;
    bool found = false;
    for (NodeId u = 0; u < s.num_nodes(); ++u)
        if (comp[u] == lcc && (!found || s.row_size(u) > s.row_size(src))) {
            src = u;
            found = true;
        }
    std::uint64_t best = 0;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        auto dist = detail::bfs(s, src);
        NodeId far = src;
        for (NodeId u = 0; u < s.num_nodes(); ++u) {
            if (dist[u] == UINT32_MAX) continue;
            if (dist[u] > dist[far] || (dist[u] == dist[far] && s.row_size(u) < s.row_size(far))) far = u;
        }
        const std::uint64_t ecc = dist[far];
        if (sweep > 0 && ecc <= best) break;
        best = std::max(best, ecc);
        src = far;
    }
    return best;
}

/// |largest (weakly) connected component| / n.
inline double rslcc(const Graph& g) {
    detail::require_nodes(g, 1, "RSLCC");
    auto [comp, sizes] = detail::components(g.support());
    return static_cast<double>(*std::max_element(sizes.begin(), sizes.end())) / static_cast<double>(g.num_nodes());
}

/// Triangles through each node of the simple undirected support.
inline std::vector<std::uint64_t> triangles_per_node(const Graph& g) {
    const Graph s = g.support();
    std::vector<std::uint64_t> t(s.num_nodes(), 0);
    detail::for_each_triangle(s, [&](NodeId a, NodeId b, NodeId c) {
        ++t[a];
        ++t[b];
        ++t[c];
    });
    return t;
}

/**
 * Mean local clustering coefficient over all nodes.
 *
 * Undirected: 2 T(u) / (deg(u)(deg(u) - 1)). Directed: the total-degree form
 * 2 T(u) / (deg_tot(u)(deg_tot(u) - 1) - 2 deg_recip(u)) where T(u) counts
 * directed triangles, i.e. (A + A^T)^3_uu / 4. Nodes whose denominator
 * vanishes contribute 0.
 */
inline double avg_clustering_coefficient(const Graph& g) {
    detail::require_nodes(g, 1, "average clustering coefficient");
    const auto n = g.num_nodes();
    double total = 0;
    if (!g.directed()) {
        const Graph s = g.support();
        auto t = triangles_per_node(s);
        for (NodeId u = 0; u < n; ++u) {
            const double d = static_cast<double>(s.row_size(u));
            if (d >= 2) total += 2.0 * static_cast<double>(t[u]) / (d * (d - 1.0));
        }
        return total / static_cast<double>(n);
    }
    const Graph a = g.simple();
    const Graph s = g.support();
    // Symmetrized entries (A + A^T)_uv in {1, 2} on the support.
    auto sym = [&](NodeId u, NodeId v) { return static_cast<double>(a.weight(u, v) + a.weight(v, u)); };
    std::vector<double> cube(n, 0.0);
    detail::for_each_triangle(s, [&](NodeId x, NodeId y, NodeId z) {
        const double p = 2.0 * sym(x, y) * sym(y, z) * sym(z, x);
        cube[x] += p;
        cube[y] += p;
        cube[z] += p;
    });
    std::vector<double> dtot(n, 0.0), drec(n, 0.0);
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v : a.neighbors(u)) {
            dtot[u] += 1;
            dtot[v] += 1;
            if (a.weight(v, u)) drec[u] += 1;
        }
    for (NodeId u = 0; u < n; ++u) {
        const double denom = dtot[u] * (dtot[u] - 1.0) - 2.0 * drec[u];
        if (denom > 0) total += 2.0 * (cube[u] / 4.0) / denom;
    }
    return total / static_cast<double>(n);
}

/// 3 * triangles / triads on the simple undirected support; 0 without triads.
inline double transitivity(const Graph& g) {
    const Graph s = g.support();
    std::uint64_t tri = 0;
    detail::for_each_triangle(s, [&](NodeId, NodeId, NodeId) { ++tri; });
    std::uint64_t triads = 0;
    for (NodeId u = 0; u < s.num_nodes(); ++u) {
        const std::uint64_t d = s.row_size(u);
        triads += d * (d - (d > 0 ? 1 : 0)) / 2;
    }
    return triads ? 3.0 * static_cast<double>(tri) / static_cast<double>(triads) : 0.0;
}

/// Core number of every node (bucket peeling on the simple undirected support).
inline std::vector<std::uint32_t> core_numbers(const Graph& g) {
    const Graph s = g.support();
    const auto n = s.num_nodes();
    std::vector<std::uint32_t> deg(n), pos(n), vert(n);
    std::uint32_t maxd = 0;
    for (NodeId u = 0; u < n; ++u) {
        deg[u] = static_cast<std::uint32_t>(s.row_size(u));
        maxd = std::max(maxd, deg[u]);
    }
    std::vector<std::uint32_t> bin(maxd + 2, 0);
    for (auto d : deg) ++bin[d];
    std::uint32_t start = 0;
    for (std::uint32_t d = 0; d <= maxd; ++d) {
        auto c = bin[d];
        bin[d] = start;
        start += c;
    }
    for (NodeId u = 0; u < n; ++u) {
        pos[u] = bin[deg[u]]++;
        vert[pos[u]] = u;
    }
    for (std::uint32_t d = maxd; d > 0; --d) bin[d] = bin[d - 1];
    bin[0] = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
        const NodeId v = vert[i];
        for (NodeId u : s.neighbors(v)) {
            if (deg[u] <= deg[v]) continue;
            const auto du = deg[u], pu = pos[u], pw = bin[du];
            const NodeId w = vert[pw];
            if (u != w) {
                pos[u] = pw;
                vert[pu] = w;
                pos[w] = pu;
                vert[pw] = u;
            }
            ++bin[du];
            --deg[u];
        }
    }
    return deg;
}

/// Maximum core number.
inline std::uint64_t degeneracy(const Graph& g) {
    auto core = core_numbers(g);
    return core.empty() ? 0 : *std::max_element(core.begin(), core.end());
}

/**
 * Mean-absolute-difference Gini coefficient
 * sum_ij |x_i - x_j| / (2 n^2 mean(x)), evaluated through the sorted
 * identity sum_i (2i - n - 1) x_(i) / (n sum x) in exact integer arithmetic.
 */
inline double gini(std::vector<std::uint64_t> x) {
    if (x.empty()) throw DomainError("Gini coefficient of an empty sequence");
    std::sort(x.begin(), x.end());
    const auto n = static_cast<__int128>(x.size());
    __int128 num = 0, total = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (2 * static_cast<__int128>(i + 1) - n - 1) * static_cast<__int128>(x[i]);
        total += x[i];
    }
    if (total == 0) throw DomainError("Gini coefficient undefined: all values are zero");
    return static_cast<double>(num) / static_cast<double>(n * total);
}

/// Gini coefficient of node degrees (non-augmented by default).
inline double gini_degree(const Graph& g, bool augmented = false, Multiplicity mult = Multiplicity::count) {
    detail::require_nodes(g, 1, "Gini-Degree");
    auto deg = degree_vector(mult == Multiplicity::count ? g : g.simple(), augmented);
    return gini(std::move(deg));
}

/// Fraction of edges (multiplicity-weighted) joining equal labels.
inline double edge_homogeneity(const Graph& g, const LabelVector& y) {
    if (y.size() != g.num_nodes()) throw DomainError("label vector length differs from node count");
    std::uint64_t same = 0, total = 0;
    for (const auto& e : g.edges()) {
        total += e.weight;
        if (y[e.u] == y[e.v]) same += e.weight;
    }
    if (total == 0) throw DomainError("edge homogeneity undefined for a graph without edges");
    return static_cast<double>(same) / static_cast<double>(total);
}

/// 1 - arccos(cos(a, b)) / pi with the cosine clamped to [-1, 1].
inline double angular_similarity(const Eigen::Ref<const Eigen::RowVectorXd>& a,
                                 const Eigen::Ref<const Eigen::RowVectorXd>& b) {
    const double c = std::clamp(a.dot(b) / (a.norm() * b.norm()), -1.0, 1.0);
    return 1.0 - std::acos(c) / std::numbers::pi;
}

struct FeatureSimilarity {
    std::optional<double> in_similarity;
    std::optional<double> out_similarity;
    std::optional<double> angular_snr;
};

/**
 * Mean angular similarity of endpoint features over same-label edges (in)
 * and cross-label edges (out), weighted by multiplicity, and their ratio.
 */
inline FeatureSimilarity feature_similarities(const Graph& g, const FeatureMatrix& x, const LabelVector& y) {
    if (x.rows() != g.num_nodes() || y.size() != g.num_nodes())
        throw DomainError("feature/label row count differs from node count");
    std::vector<double> norm(g.num_nodes());
    for (std::size_t i = 0; i < norm.size(); ++i) norm[i] = x.values.row(static_cast<Eigen::Index>(i)).norm();
    double in_sum = 0, in_w = 0, out_sum = 0, out_w = 0;
    for (const auto& e : g.edges()) {
        for (NodeId u : {e.u, e.v})
            if (!(norm[u] > 0)) throw DomainError("zero-norm feature vector at node " + std::to_string(u));
        const double c = std::clamp(
            x.values.row(e.u).dot(x.values.row(e.v)) / (norm[e.u] * norm[e.v]), -1.0, 1.0);
        const double sim = 1.0 - std::acos(c) / std::numbers::pi;
        const double w = e.weight;
        if (y[e.u] == y[e.v]) {
            in_sum += w * sim;
            in_w += w;
        } else {
            out_sum += w * sim;
            out_w += w;
        }
    }
    FeatureSimilarity r;
    if (in_w > 0) r.in_similarity = in_sum / in_w;
    if (out_w > 0) r.out_similarity = out_sum / out_w;
    if (r.in_similarity && r.out_similarity && *r.out_similarity > 0)
        r.angular_snr = *r.in_similarity / *r.out_similarity;
    return r;
}

/**
 * Class-insensitive homophily: (1/(C-1)) sum_k [h_k - |C_k|/n]_+ with
 * h_k = sum_{u in k} same-label neighbors / sum_{u in k} degree. Classes
 * whose members have no edges get h_k = 0.
 */
inline double homophily_measure(const Graph& g, const LabelVector& y, Multiplicity mult = Multiplicity::count) {
    if (y.size() != g.num_nodes()) throw DomainError("label vector length differs from node count");
    if (y.num_classes < 2) throw DomainError("homophily measure requires at least two classes");
    const Graph u = mult == Multiplicity::count ? g.undirected() : g.support();
    const auto C = static_cast<std::size_t>(y.num_classes);
    std::vector<double> same(C, 0.0), deg(C, 0.0);
    for (NodeId a = 0; a < u.num_nodes(); ++a) {
        auto nb = u.neighbors(a);
        auto w = u.weights(a);
        const auto k = static_cast<std::size_t>(y[a]);
        for (std::size_t j = 0; j < nb.size(); ++j) {
            deg[k] += w[j];
            if (y[nb[j]] == y[a]) same[k] += w[j];
        }
    }
    const auto sizes = y.class_sizes();
    const double n = static_cast<double>(g.num_nodes());
    double h = 0;
    for (std::size_t k = 0; k < C; ++k) {
        const double hk = deg[k] > 0 ? same[k] / deg[k] : 0.0;
        h += std::max(hk - static_cast<double>(sizes[k]) / n, 0.0);
    }
    return h / static_cast<double>(C - 1);
}

/**
 * Categorical assortativity r = (sum_k e_kk - sum_k a_k b_k) / (1 - sum_k a_k b_k)
 * over the multiplicity-weighted label mixing matrix of ordered edge ends.
 * nullopt when sum_k a_k b_k = 1 or there are no edges.
 */
inline std::optional<double> attribute_assortativity(const Graph& g, const LabelVector& y) {
    if (y.size() != g.num_nodes()) throw DomainError("label vector length differs from node count");
    const auto C = static_cast<std::size_t>(std::max(y.num_classes, 1));
    std::vector<double> e(C * C, 0.0);
    double total = 0;
    for (const auto& ed : g.edges()) {
        const auto a = static_cast<std::size_t>(y[ed.u]), b = static_cast<std::size_t>(y[ed.v]);
        e[a * C + b] += ed.weight;
        total += ed.weight;
        if (!g.directed()) {
            e[b * C + a] += ed.weight;
            total += ed.weight;
        }
    }
    if (total == 0) return std::nullopt;
    double trace = 0, ab = 0;
    for (std::size_t k = 0; k < C; ++k) {
        double a = 0, b = 0;
        for (std::size_t l = 0; l < C; ++l) {
            a += e[k * C + l] / total;
            b += e[l * C + k] / total;
        }
        trace += e[k * C + k] / total;
        ab += a * b;
    }
    if (1.0 - ab <= 1e-15) return std::nullopt;
    return std::clamp((trace - ab) / (1.0 - ab), -1.0, 1.0);
}

// ---------------------------------------------------------------------------
// Profile

enum class Property : std::size_t {
    edge_density,
    average_degree,
    degree_assortativity,
    pseudo_diameter,
    rslcc,
    acc,
    transitivity,
    degeneracy,
    gini_degree,
    edge_homogeneity,
    in_feature_similarity,
    out_feature_similarity,
    feature_angular_snr,
    homophily_measure,
    attribute_assortativity,
};

inline constexpr std::size_t kNumProperties = 15;

inline constexpr std::array<std::string_view, kNumProperties> kPropertyNames = {
    "edge_density",       "average_degree",         "degree_assortativity", "pseudo_diameter",
    "rslcc",              "acc",                    "transitivity",         "degeneracy",
    "gini_degree",        "edge_homogeneity",       "in_feature_similarity", "out_feature_similarity",
    "feature_angular_snr", "homophily_measure",     "attribute_assortativity",
};

enum class FlagKind { none, missing_input, undefined, domain_error };

struct Flag {
    FlagKind kind = FlagKind::none;
    std::string reason;
};

struct PropertyVector {
    std::array<std::optional<double>, kNumProperties> values{};
    std::array<Flag, kNumProperties> flags{};

    const std::optional<double>& operator[](Property p) const { return values[static_cast<std::size_t>(p)]; }

    std::size_t count_defined() const {
        return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [](auto& v) { return v.has_value(); }));
    }

    /// True when some property was computed but came out undefined or errored.
    bool has_undefined() const {
        return std::any_of(flags.begin(), flags.end(), [](const Flag& f) {
            return f.kind == FlagKind::undefined || f.kind == FlagKind::domain_error;
        });
    }
};

struct ProfileOptions {
    /// Multiplicity handling for average degree, Gini-Degree and homophily.
    Multiplicity degree_stats = Multiplicity::count;
    bool augmented_gini = false;
    int pseudo_diameter_sweeps = 10;
};

/**
 * Computes all 15 properties. Feature- and label-dependent ones are flagged
 * as missing when their inputs are absent; per-property failures are
 * recorded as flags and never abort the profile.
 */
inline PropertyVector profile(const Graph& g, const FeatureMatrix* x, const LabelVector* y,
                              const ProfileOptions& opt = {}) {
    PropertyVector pv;
    auto set = [&](Property p, auto&& compute) {
        const auto i = static_cast<std::size_t>(p);
        try {
            std::optional<double> v = compute();
            if (v && std::isfinite(*v))
                pv.values[i] = *v;
            else
                pv.flags[i] = {FlagKind::undefined, "undefined for this input"};
        } catch (const std::exception& e) {
            pv.flags[i] = {FlagKind::domain_error, e.what()};
        }
    };
    auto missing = [&](Property p, const char* what) {
        pv.flags[static_cast<std::size_t>(p)] = {FlagKind::missing_input, std::string("requires ") + what};
    };
    using P = Property;
    auto opt_d = [](double v) { return std::optional<double>(v); };
    set(P::edge_density, [&] { return opt_d(edge_density(g)); });
    set(P::average_degree, [&] { return opt_d(average_degree(g, opt.degree_stats)); });
    set(P::degree_assortativity, [&] { return degree_assortativity(g); });
    set(P::pseudo_diameter, [&] { return opt_d(static_cast<double>(pseudo_diameter(g, opt.pseudo_diameter_sweeps))); });
    set(P::rslcc, [&] { return opt_d(rslcc(g)); });
    set(P::acc, [&] { return opt_d(avg_clustering_coefficient(g)); });
    set(P::transitivity, [&] { return opt_d(transitivity(g)); });
    set(P::degeneracy, [&] { return opt_d(static_cast<double>(degeneracy(g))); });
    set(P::gini_degree, [&] { return opt_d(gini_degree(g, opt.augmented_gini, opt.degree_stats)); });

    if (y) {
        set(P::edge_homogeneity, [&] { return opt_d(edge_homogeneity(g, *y)); });
        set(P::homophily_measure, [&] { return opt_d(homophily_measure(g, *y, opt.degree_stats)); });
        set(P::attribute_assortativity, [&] { return attribute_assortativity(g, *y); });
    } else {
        missing(P::edge_homogeneity, "labels");
        missing(P::homophily_measure, "labels");
        missing(P::attribute_assortativity, "labels");
    }
    if (x && y) {
        try {
            auto fs = feature_similarities(g, *x, *y);
            set(P::in_feature_similarity, [&] { return fs.in_similarity; });
            set(P::out_feature_similarity, [&] { return fs.out_similarity; });
            set(P::feature_angular_snr, [&] { return fs.angular_snr; });
        } catch (const std::exception& e) {
            for (auto p : {P::in_feature_similarity, P::out_feature_similarity, P::feature_angular_snr})
                pv.flags[static_cast<std::size_t>(p)] = {FlagKind::domain_error, e.what()};
        }
    } else {
        for (auto p : {P::in_feature_similarity, P::out_feature_similarity, P::feature_angular_snr})
            missing(p, "features and labels");
    }
    return pv;
}

inline std::string csv_header() {
    std::string s = "dataset";
    for (auto name : kPropertyNames) s += "," + std::string(name);
    return s + "\n";
}

/// One CSV row; undefined or missing properties are empty cells.
inline std::string to_csv_row(const std::string& dataset, const PropertyVector& pv) {
    std::string s = csv::escape(dataset);
    for (const auto& v : pv.values) s += "," + csv::format(v);
    return s + "\n";
}

inline nlohmann::ordered_json to_json(const std::string& dataset, const PropertyVector& pv) {
    nlohmann::ordered_json j;
    j["dataset"] = dataset;
    auto props = nlohmann::ordered_json::object();
    auto flags = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < kNumProperties; ++i) {
        const std::string name(kPropertyNames[i]);
        if (pv.values[i])
            props[name] = *pv.values[i];
        else
            props[name] = nullptr;
        if (pv.flags[i].kind != FlagKind::none) {
            static constexpr const char* kinds[] = {"none", "missing_input", "undefined", "domain_error"};
            flags[name] = {{"kind", kinds[static_cast<int>(pv.flags[i].kind)]}, {"reason", pv.flags[i].reason}};
        }
    }
    j["properties"] = std::move(props);
    j["flags"] = std::move(flags);
    return j;
}

} // namespace gmeta::properties
