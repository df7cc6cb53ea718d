#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include "gmst/errors.hpp"
#include "gmst/parallel.hpp"
#include "gmst/point_cloud.hpp"

namespace gmst {

/// Neighborhood construction rule: fixed radius or k nearest neighbors.
struct EpsilonRule {
    double radius;
};
struct KnnRule {
    std::size_t k;
};
using NeighborRule = std::variant<EpsilonRule, KnnRule>;

struct GraphEdge {
    std::size_t i; // i < j
    std::size_t j;
    double weight;
};

/// Sparse undirected Euclidean neighborhood graph. Edges are stored once with
/// i < j, sorted lexicographically. mean_neighbor_dist[v] is the mean weight
/// of the edges incident to v in the symmetrized graph.
struct NeighborhoodGraph {
    std::size_t n = 0;
    std::vector<GraphEdge> edges;
    NeighborRule rule{KnnRule{0}};
    bool rescaled = false;
    std::vector<double> mean_neighbor_dist;
    std::size_t zero_weight_edges = 0; // duplicate-point diagnostics

    std::vector<std::size_t> degrees() const {
        std::vector<std::size_t> deg(n, 0);
        for (const auto& e : edges) {
            ++deg[e.i];
            ++deg[e.j];
        }
        return deg;
    }
};

namespace detail {

inline void compute_mean_neighbor_dist(NeighborhoodGraph& g) {
    std::vector<double> sum(g.n, 0.0);
    std::vector<std::size_t> deg(g.n, 0);
    for (const auto& e : g.edges) {
        sum[e.i] += e.weight;
        sum[e.j] += e.weight;
        ++deg[e.i];
        ++deg[e.j];
    }
    g.mean_neighbor_dist.assign(g.n, 0.0);
    for (std::size_t v = 0; v < g.n; ++v)
        if (deg[v] > 0)
            g.mean_neighbor_dist[v] = sum[v] / static_cast<double>(deg[v]);
}

} // namespace detail

/// Builds the Euclidean neighborhood graph.
///
/// epsilon rule: edge (i, j) iff |Y_i - Y_j| <= radius.
/// k rule: edge (i, j) iff j is among i's k nearest OR i is among j's k
/// nearest (symmetrizing union; ties broken toward the smaller point index).
/// Neighbor search is brute force O(n^2 d); desk-scale inputs make that fine.
inline NeighborhoodGraph build_graph(const PointCloud& cloud, const NeighborRule& rule,
                                     unsigned threads = 1) {
    const std::size_t n = cloud.size();
    NeighborhoodGraph g;
    g.n = n;
    g.rule = rule;

    if (const auto* eps = std::get_if<EpsilonRule>(&rule)) {
        if (!(eps->radius > 0.0))
            throw config_error("epsilon radius must be > 0");
        // Row-partitioned scan; each row r collects edges (r, j) with j > r.
        std::vector<std::vector<GraphEdge>> rows(n);
        parallel_for(n, threads, [&](std::size_t i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double w = cloud.distance(i, j);
                if (w <= eps->radius)
                    rows[i].push_back({i, j, w});
            }
        });
        for (auto& row : rows)
            g.edges.insert(g.edges.end(), row.begin(), row.end());
    } else {
        const auto& knn = std::get<KnnRule>(rule);
        if (knn.k < 1)
            throw config_error("k must be >= 1");
        if (knn.k >= n)
            throw config_error("k must be < n (got k = " + std::to_string(knn.k) +
                               ", n = " + std::to_string(n) + ")");
        const std::size_t k = knn.k;
        // Directed k-nearest lists, then union-symmetrize.
        std::vector<std::vector<std::uint32_t>> nbrs(n);
        parallel_for(n, threads, [&](std::size_t i) {
            std::vector<std::pair<double, std::uint32_t>> cand;
            cand.reserve(n - 1);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i)
                    continue;
                cand.emplace_back(cloud.distance(i, j), static_cast<std::uint32_t>(j));
            }
            std::nth_element(cand.begin(), cand.begin() + (k - 1), cand.end());
            cand.resize(k);
            std::sort(cand.begin(), cand.end());
            nbrs[i].reserve(k);
            for (const auto& [w, j] : cand)
                nbrs[i].push_back(j);
        });
        std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
        pairs.reserve(n * k);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::uint32_t j : nbrs[i]) {
                const auto a = static_cast<std::uint32_t>(std::min<std::size_t>(i, j));
                const auto b = static_cast<std::uint32_t>(std::max<std::size_t>(i, j));
                pairs.emplace_back(a, b);
            }
        }
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
        g.edges.reserve(pairs.size());
        for (const auto& [a, b] : pairs)
            g.edges.push_back({a, b, cloud.distance(a, b)});
    }

    std::sort(g.edges.begin(), g.edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    for (const auto& e : g.edges)
        if (e.weight == 0.0)
            ++g.zero_weight_edges;
    detail::compute_mean_neighbor_dist(g);
    return g;
}

/// Replaces each edge weight w(i, j) by w(i, j) / sqrt(M(i) * M(j)), where M
/// is the mean neighbor distance of the pre-rescale graph. This removes a
/// smoothly varying local scale factor so that conformally embedded data
/// behaves like isometrically embedded data downstream.
inline NeighborhoodGraph rescale_conformal(const NeighborhoodGraph& graph) {
    if (graph.rescaled)
        throw config_error("graph weights already rescaled");
    const auto deg = graph.degrees();
    for (std::size_t v = 0; v < graph.n; ++v) {
        // Isolated vertices have no M; they surface later as disconnection.
        if (deg[v] > 0 && graph.mean_neighbor_dist[v] <= 0.0)
            throw input_error("degenerate vertex " + std::to_string(v) +
                              ": all neighbors coincide with it (M = 0)");
    }
    NeighborhoodGraph out = graph;
    for (auto& e : out.edges)
        e.weight = e.weight / std::sqrt(graph.mean_neighbor_dist[e.i] * graph.mean_neighbor_dist[e.j]);
    out.rescaled = true;
    return out;
}

/// Debug dump, one "i,j,weight" row per edge.
inline void dump_edges_csv(const NeighborhoodGraph& graph, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw io_error("cannot write file: " + path);
    out << "i,j,weight\n";
    for (const auto& e : graph.edges)
        out << e.i << ',' << e.j << ',' << format_double(e.weight) << '\n';
    if (!out)
        throw io_error("write failed: " + path);
}

} // namespace gmst
