#pragma once
#include <algorithm>
#include <charconv>
#include <numeric>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include <gmeta/csv.hpp>
#include <gmeta/error.hpp>
#include <gmeta/graph.hpp>

namespace gmeta::io {

enum class GraphFormat { edge_list_tsv, json };

struct LoadedGraph {
    Graph graph;
    /// Original id of each dense node index.
    std::vector<std::string> node_ids;
    std::size_t self_loops_dropped = 0;
};

namespace detail {

inline bool parse_int(std::string_view s, long long& out) {
    auto r = std::from_chars(s.data(), s.data() + s.size(), out);
    return r.ec == std::errc() && r.ptr == s.data() + s.size();
}

inline std::size_t line_of_byte(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

inline std::unordered_map<std::string, NodeId> index_of(const std::vector<std::string>& ids, std::size_t n) {
    std::unordered_map<std::string, NodeId> m;
    m.reserve(n);
    for (std::size_t i = 0; i < n; ++i) m.emplace(ids.empty() ? std::to_string(i) : ids[i], static_cast<NodeId>(i));
    return m;
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace detail

/**
 * Reads a graph from an edge-list TSV or JSON file.
 *
 * TSV: one "u<TAB>v" pair per line (an optional third column gives a
 * multiplicity), '#' starts a comment. Node ids are arbitrary tokens and are
 * remapped to [0, n): numerically sorted when every id is an integer,
 * lexicographically otherwise. Repeated pairs sum their multiplicities and
 * self-loops are dropped and counted.
 *
 * JSON: {"n": int, "directed": bool, "edges": [[u, v, weight?], ...]} with
 * dense integer ids.
 */
inline LoadedGraph load_graph(const std::string& path, GraphFormat format, bool directed = false) {
    const std::string text = detail::read_text(path);
    LoadedGraph out;
    if (format == GraphFormat::json) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(path + ": " + e.what(), detail::line_of_byte(text, e.byte));
        }
        try {
            const auto n = j.at("n").get<std::size_t>();
            const bool dir = j.value("directed", false);
            GraphBuilder b(n, dir);
            const auto& edges = j.at("edges");
            b.reserve(edges.size());
            for (const auto& e : edges) {
                if (!e.is_array() || e.size() < 2 || e.size() > 3)
                    throw ParseError(path + ": edge entries must be [u, v] or [u, v, weight]");
                const auto u = e[0].get<long long>(), v = e[1].get<long long>();
                const auto w = e.size() == 3 ? e[2].get<long long>() : 1;
                if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n)
                    throw ParseError(path + ": edge endpoint outside [0, n)");
                if (w < 0) throw ParseError(path + ": negative edge weight");
                b.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v), static_cast<Weight>(w));
            }
            out.graph = b.build();
            out.self_loops_dropped = b.self_loops_dropped();
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(path + ": " + e.what());
        }
        out.node_ids.reserve(out.graph.num_nodes());
        for (std::size_t i = 0; i < out.graph.num_nodes(); ++i) out.node_ids.push_back(std::to_string(i));
        return out;
    }

    struct Raw {
        std::string u, v;
        Weight w;
    };
    std::vector<Raw> raw;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string a, b, c, extra;
        if (!(ls >> a)) continue;
        if (!(ls >> b)) throw ParseError(path + ": expected two node ids", lineno);
        Weight w = 1;
        if (ls >> c) {
            long long wv;
            if (!detail::parse_int(c, wv) || wv < 0) throw ParseError(path + ": bad multiplicity '" + c + "'", lineno);
            w = static_cast<Weight>(wv);
            if (ls >> extra) throw ParseError(path + ": too many columns", lineno);
        }
        raw.push_back({std::move(a), std::move(b), w});
    }

    std::vector<std::string> ids;
    ids.reserve(raw.size() * 2);
    for (const auto& r : raw) {
        ids.push_back(r.u);
        ids.push_back(r.v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    bool numeric = true;
    std::vector<long long> nums(ids.size());
    for (std::size_t i = 0; i < ids.size() && numeric; ++i) numeric = detail::parse_int(ids[i], nums[i]);
    if (numeric) {
        std::vector<std::size_t> order(ids.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](auto x, auto y) { return nums[x] < nums[y]; });
        std::vector<std::string> sorted;
        sorted.reserve(ids.size());
        for (auto i : order) sorted.push_back(ids[i]);
        ids = std::move(sorted);
    }
    auto index = detail::index_of(ids, ids.size());
    GraphBuilder b(ids.size(), directed);
    b.reserve(raw.size());
    for (const auto& r : raw) b.add_edge(index.at(r.u), index.at(r.v), r.w);
    out.graph = b.build();
    out.self_loops_dropped = b.self_loops_dropped();
    out.node_ids = std::move(ids);
    return out;
}

inline GraphFormat format_from_path(const std::string& path) {
    return path.size() >= 5 && path.substr(path.size() - 5) == ".json" ? GraphFormat::json
                                                                        : GraphFormat::edge_list_tsv;
}

/// Edge list with one line per unit of multiplicity. Isolated nodes are not
/// representable; use JSON when they matter.
inline std::string graph_to_tsv(const Graph& g, const std::vector<std::string>& node_ids = {}) {
    std::string s;
    auto id = [&](NodeId u) { return node_ids.empty() ? std::to_string(u) : node_ids[u]; };
    for (const auto& e : g.edges())
        for (Weight k = 0; k < e.weight; ++k) s += id(e.u) + '\t' + id(e.v) + '\n';
    return s;
}

inline std::string graph_to_json(const Graph& g) {
    std::string s = "{\"n\": " + std::to_string(g.num_nodes()) +
                    ", \"directed\": " + (g.directed() ? "true" : "false") + ", \"edges\": [";
    bool first = true;
    for (const auto& e : g.edges()) {
        if (!first) s += ", ";
        first = false;
        s += '[' + std::to_string(e.u) + ", " + std::to_string(e.v);
        if (e.weight != 1) s += ", " + std::to_string(e.weight);
        s += ']';
    }
    return s + "]}\n";
}

inline void write_graph(const Graph& g, const std::string& path, GraphFormat format,
                        const std::vector<std::string>& node_ids = {}) {
    csv::write_file(path, format == GraphFormat::json ? graph_to_json(g) : graph_to_tsv(g, node_ids));
}

/// "index<TAB>original id" per node.
inline void write_id_map(const std::vector<std::string>& node_ids, const std::string& path) {
    std::string s = "# index\tid\n";
    for (std::size_t i = 0; i < node_ids.size(); ++i) s += std::to_string(i) + '\t' + node_ids[i] + '\n';
    csv::write_file(path, s);
}

/// Features CSV: header row, then one row per node with its id first.
inline FeatureMatrix load_features(const std::string& path, const std::vector<std::string>& node_ids,
                                   std::size_t n) {
    auto t = csv::read(path);
    if (t.header.size() < 2) throw ParseError(path + ": need a node id column and at least one feature");
    auto index = detail::index_of(node_ids, n);
    RowMatrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(t.header.size() - 1));
    std::vector<char> seen(n, 0);
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        auto it = index.find(row[0]);
        if (it == index.end()) throw ParseError(path + ": unknown node id '" + row[0] + "'", t.line_numbers[r]);
        if (seen[it->second]++) throw ParseError(path + ": duplicate node id '" + row[0] + "'", t.line_numbers[r]);
        for (std::size_t c = 1; c < row.size(); ++c) {
            auto v = csv::parse_double(row[c], t.line_numbers[r]);
            if (!v || !std::isfinite(*v)) throw ParseError(path + ": missing or non-finite feature", t.line_numbers[r]);
            x(it->second, static_cast<Eigen::Index>(c - 1)) = *v;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!seen[i])
            throw ParseError(path + ": no feature row for node '" + (node_ids.empty() ? std::to_string(i) : node_ids[i]) +
                             "'");
    return FeatureMatrix(std::move(x));
}

/// Labels CSV: "node id, label" rows; a non-numeric first row is a header.
inline LabelVector load_labels(const std::string& path, const std::vector<std::string>& node_ids, std::size_t n) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    auto index = detail::index_of(node_ids, n);
    std::vector<int> y(n, -1);
    std::string line;
    std::size_t lineno = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++lineno;
        auto s = csv::trim(line);
        if (s.empty() || s.front() == '#') continue;
        auto f = csv::split_line(s);
        if (f.size() != 2) throw ParseError(path + ": expected 'node,label'", lineno);
        long long lab;
        if (!detail::parse_int(f[1], lab)) {
            if (first) {
                first = false;
                continue;
            }
            throw ParseError(path + ": label '" + f[1] + "' is not an integer", lineno);
        }
        first = false;
        auto it = index.find(f[0]);
        if (it == index.end()) throw ParseError(path + ": unknown node id '" + f[0] + "'", lineno);
        if (lab < 0) throw ParseError(path + ": negative label", lineno);
        if (y[it->second] != -1) throw ParseError(path + ": duplicate node id '" + f[0] + "'", lineno);
        y[it->second] = static_cast<int>(lab);
    }
    for (std::size_t i = 0; i < n; ++i)
        if (y[i] < 0)
            throw ParseError(path + ": no label for node '" + (node_ids.empty() ? std::to_string(i) : node_ids[i]) + "'");
    return LabelVector::from_labels(std::move(y));
}

inline std::string features_to_csv(const RowMatrix& x, const std::vector<std::string>& node_ids = {}) {
    std::string s = "node";
    for (Eigen::Index c = 0; c < x.cols(); ++c) s += ",f" + std::to_string(c);
    s += '\n';
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
        s += node_ids.empty() ? std::to_string(r) : csv::escape(node_ids[static_cast<std::size_t>(r)]);
        for (Eigen::Index c = 0; c < x.cols(); ++c) s += ',' + csv::format(x(r, c));
        s += '\n';
    }
    return s;
}

inline std::string labels_to_csv(const LabelVector& y, const std::vector<std::string>& node_ids = {}) {
    std::string s = "node,label\n";
    for (std::size_t i = 0; i < y.size(); ++i)
        s += (node_ids.empty() ? std::to_string(i) : csv::escape(node_ids[i])) + ',' + std::to_string(y[i]) + '\n';
    return s;
}

} // namespace gmeta::io
