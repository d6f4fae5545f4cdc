#pragma once
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include <gmeta/error.hpp>

namespace gmeta {

using NodeId = std::uint32_t;
using Weight = std::uint32_t;

struct Edge {
    NodeId u;
    NodeId v;
    Weight weight = 1;
};

/**
 * Immutable sparse graph in compressed-row layout with integer edge
 * multiplicities.
 *
 * Undirected graphs store every edge in both endpoint rows, so the
 * adjacency is symmetric. Directed graphs store out-edges only. Rows are
 * sorted by target, self-loops are never stored, and parallel edges are
 * merged into a single entry whose weight is the multiplicity.
 */
class Graph {
public:
    Graph() : offsets_(1, 0) {}

    std::size_t num_nodes() const noexcept { return offsets_.size() - 1; }

    /// Edge count with multiplicities summed; undirected edges counted once.
    std::uint64_t num_edges() const noexcept { return num_edges_; }

    bool directed() const noexcept { return directed_; }

    std::span<const NodeId> neighbors(NodeId u) const noexcept {
        return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
    }

    std::span<const Weight> weights(NodeId u) const noexcept {
        return {weights_.data() + offsets_[u], weights_.data() + offsets_[u + 1]};
    }

    std::size_t row_size(NodeId u) const noexcept { return offsets_[u + 1] - offsets_[u]; }

    Weight weight(NodeId u, NodeId v) const noexcept {
        auto row = neighbors(u);
        auto it = std::lower_bound(row.begin(), row.end(), v);
        if (it == row.end() || *it != v) return 0;
        return weights_[offsets_[u] + static_cast<std::size_t>(it - row.begin())];
    }

    /// Stored (u, v, w) entries. Undirected graphs list each edge once with u < v.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (NodeId u = 0; u < num_nodes(); ++u) {
            auto nb = neighbors(u);
            auto w = weights(u);
            for (std::size_t k = 0; k < nb.size(); ++k)
                if (directed_ || u < nb[k]) out.push_back({u, nb[k], w[k]});
        }
        return out;
    }

    /// Same topology with every multiplicity clamped to 1.
    Graph simple() const {
        Graph g = *this;
        std::fill(g.weights_.begin(), g.weights_.end(), Weight{1});
        g.num_edges_ = directed_ ? targets_.size() : targets_.size() / 2;
        return g;
    }

    /// Undirected graph on the same nodes. Directed edges u->v and v->u
    /// collapse onto one undirected edge whose weight is their sum.
    Graph undirected() const;

    /// Undirected simple graph: the support used by structural statistics.
    Graph support() const { return undirected().simple(); }

    bool operator==(const Graph&) const = default;

private:
    friend class GraphBuilder;

    std::vector<std::size_t> offsets_;
    std::vector<NodeId> targets_;
    std::vector<Weight> weights_;
    std::uint64_t num_edges_ = 0;
    bool directed_ = false;
};

/**
 * Accumulates edges and produces a Graph. Duplicate edges have their
 * weights summed; self-loops are dropped and counted.
 */
class GraphBuilder {
public:
    explicit GraphBuilder(std::size_t n, bool directed = false) : n_(n), directed_(directed) {}

    void add_edge(NodeId u, NodeId v, Weight w = 1) {
        if (u >= n_ || v >= n_)
            throw DomainError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                              ") outside node range [0, " + std::to_string(n_) + ")");
        if (w == 0) return;
        if (u == v) {
            ++self_loops_;
            return;
        }
        if (!directed_ && u > v) std::swap(u, v);
        keys_.push_back((static_cast<std::uint64_t>(u) << 32) | v);
        ws_.push_back(w);
    }

    void reserve(std::size_t m) {
        keys_.reserve(m);
        ws_.reserve(m);
    }

    std::size_t self_loops_dropped() const noexcept { return self_loops_; }

    Graph build() const;

private:
    std::size_t n_;
    bool directed_;
    std::size_t self_loops_ = 0;
    std::vector<std::uint64_t> keys_;
    std::vector<Weight> ws_;
};

inline Graph GraphBuilder::build() const {
    // Merge duplicates. All-unit weights (the common case) sort keys only.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> merged;
    const bool unit = std::all_of(ws_.begin(), ws_.end(), [](Weight w) { return w == 1; });
    if (unit) {
        std::vector<std::uint64_t> keys = keys_;
        std::sort(keys.begin(), keys.end());
        for (std::size_t i = 0; i < keys.size();) {
            std::size_t j = i;
            while (j < keys.size() && keys[j] == keys[i]) ++j;
            merged.emplace_back(keys[i], j - i);
            i = j;
        }
    } else {
        std::vector<std::size_t> order(keys_.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return keys_[a] < keys_[b]; });
        for (std::size_t i = 0; i < order.size();) {
            std::uint64_t w = 0;
            std::size_t j = i;
            while (j < order.size() && keys_[order[j]] == keys_[order[i]]) w += ws_[order[j++]];
            merged.emplace_back(keys_[order[i]], w);
            i = j;
        }
    }

    Graph g;
    g.directed_ = directed_;
    g.offsets_.assign(n_ + 1, 0);
    for (auto [key, w] : merged) {
        if (w > 0xffffffffull) throw DomainError("edge multiplicity overflow");
        const auto u = static_cast<NodeId>(key >> 32), v = static_cast<NodeId>(key);
        ++g.offsets_[u + 1];
        if (!directed_) ++g.offsets_[v + 1];
        g.num_edges_ += w;
    }
    std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
    g.targets_.resize(g.offsets_.back());
    g.weights_.resize(g.offsets_.back());
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    // Keys are sorted by (u, v). Writing the reverse entries (targets < row)
    // before the forward ones (targets > row) leaves every row sorted.
    if (!directed_) {
        for (auto [key, w] : merged) {
            const auto u = static_cast<NodeId>(key >> 32), v = static_cast<NodeId>(key);
            g.targets_[fill[v]] = u;
            g.weights_[fill[v]++] = static_cast<Weight>(w);
        }
    }
    for (auto [key, w] : merged) {
        const auto u = static_cast<NodeId>(key >> 32), v = static_cast<NodeId>(key);
        g.targets_[fill[u]] = v;
        g.weights_[fill[u]++] = static_cast<Weight>(w);
    }
    return g;
}

inline Graph Graph::undirected() const {
    if (!directed_) return *this;
    GraphBuilder b(num_nodes(), false);
    b.reserve(targets_.size());
    for (NodeId u = 0; u < num_nodes(); ++u) {
        auto nb = neighbors(u);
        auto w = weights(u);
        for (std::size_t k = 0; k < nb.size(); ++k) b.add_edge(u, nb[k], w[k]);
    }
    return b.build();
}

/// Row sums of A (or of A + I when augmented). Multiplicities count.
/// Directed graphs report total degree (in + out).
inline std::vector<std::uint64_t> degree_vector(const Graph& g, bool augmented = false) {
    std::vector<std::uint64_t> deg(g.num_nodes(), augmented ? 1 : 0);
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        auto nb = g.neighbors(u);
        auto w = g.weights(u);
        for (std::size_t k = 0; k < nb.size(); ++k) {
            deg[u] += w[k];
            if (g.directed()) deg[nb[k]] += w[k];
        }
    }
    return deg;
}

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Dense per-node features, one row per node.
struct FeatureMatrix {
    RowMatrix values;

    FeatureMatrix() = default;
    explicit FeatureMatrix(RowMatrix v) : values(std::move(v)) {
        if (!values.allFinite()) throw DomainError("feature matrix contains non-finite entries");
    }

    std::size_t rows() const noexcept { return static_cast<std::size_t>(values.rows()); }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(values.cols()); }
};

/// Integer class ids in [0, num_classes).
struct LabelVector {
    std::vector<int> labels;
    int num_classes = 0;

    LabelVector() = default;
    LabelVector(std::vector<int> l, int c) : labels(std::move(l)), num_classes(c) {
        for (int y : labels)
            if (y < 0 || y >= num_classes)
                throw DomainError("label " + std::to_string(y) + " outside [0, " +
                                  std::to_string(num_classes) + ")");
    }

    /// Class count inferred as max label + 1.
    static LabelVector from_labels(std::vector<int> l) {
        int c = l.empty() ? 0 : *std::max_element(l.begin(), l.end()) + 1;
        return LabelVector(std::move(l), c);
    }

    std::size_t size() const noexcept { return labels.size(); }
    int operator[](std::size_t i) const noexcept { return labels[i]; }

    std::vector<std::size_t> class_sizes() const {
        std::vector<std::size_t> s(static_cast<std::size_t>(num_classes), 0);
        for (int y : labels) ++s[static_cast<std::size_t>(y)];
        return s;
    }
};

} // namespace gmeta
