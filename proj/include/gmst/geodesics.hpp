#pragma once

#include <cstdint>
#include <fstream>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gmst/errors.hpp"
#include "gmst/neighborhood.hpp"
#include "gmst/parallel.hpp"

namespace gmst {

/// Dense symmetric matrix of shortest-path distances through a neighborhood
/// graph. Unreachable pairs hold +infinity (the one explicit marker; large
/// finite sentinels would silently corrupt downstream spanning trees).
class GeodesicEdgeMatrix {
public:
    GeodesicEdgeMatrix() = default;
    GeodesicEdgeMatrix(std::size_t n, std::vector<double> dist, bool connected,
                       std::vector<std::uint32_t> component_id)
        : n_(n), dist_(std::move(dist)), connected_(connected),
          component_(std::move(component_id)) {}

    std::size_t size() const { return n_; }
    double weight(std::size_t i, std::size_t j) const { return dist_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return weight(i, j); }
    bool connected() const { return connected_; }
    std::uint32_t component_id(std::size_t v) const { return component_[v]; }
    const std::vector<double>& data() const { return dist_; }

    std::size_t largest_component() const {
        if (n_ == 0)
            return 0;
        std::vector<std::size_t> counts;
        for (auto c : component_) {
            if (c >= counts.size())
                counts.resize(c + 1, 0);
            ++counts[c];
        }
        std::size_t best = 0;
        for (std::size_t c = 1; c < counts.size(); ++c)
            if (counts[c] > counts[best])
                best = c; // earliest label wins ties
        return best;
    }

    std::vector<std::size_t> component_members(std::uint32_t label) const {
        std::vector<std::size_t> out;
        for (std::size_t v = 0; v < n_; ++v)
            if (component_[v] == label)
                out.push_back(v);
        return out;
    }

private:
    std::size_t n_ = 0;
    std::vector<double> dist_;
    bool connected_ = false;
    std::vector<std::uint32_t> component_;
};

namespace detail {

/// Compressed adjacency for repeated single-source runs.
struct Csr {
    std::vector<std::size_t> offsets;
    std::vector<std::pair<std::uint32_t, double>> arcs; // (to, weight)

    static Csr from_graph(const NeighborhoodGraph& g) {
        Csr csr;
        std::vector<std::size_t> deg(g.n, 0);
        for (const auto& e : g.edges) {
            ++deg[e.i];
            ++deg[e.j];
        }
        csr.offsets.assign(g.n + 1, 0);
        for (std::size_t v = 0; v < g.n; ++v)
            csr.offsets[v + 1] = csr.offsets[v] + deg[v];
        csr.arcs.resize(csr.offsets.back());
        std::vector<std::size_t> cursor(csr.offsets.begin(), csr.offsets.end() - 1);
        for (const auto& e : g.edges) {
            csr.arcs[cursor[e.i]++] = {static_cast<std::uint32_t>(e.j), e.weight};
            csr.arcs[cursor[e.j]++] = {static_cast<std::uint32_t>(e.i), e.weight};
        }
        return csr;
    }
};

/// Standard binary-heap Dijkstra with lazy deletion, writing one matrix row.
inline void dijkstra_row(const Csr& csr, std::size_t n, std::uint32_t src, double* row) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j)
        row[j] = kInf;
    row[src] = 0.0;
    using Item = std::pair<double, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    heap.emplace(0.0, src);
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > row[u])
            continue; // stale entry
        for (std::size_t a = csr.offsets[u]; a < csr.offsets[u + 1]; ++a) {
            const auto [v, w] = csr.arcs[a];
            const double cand = d + w;
            if (cand < row[v]) {
                row[v] = cand;
                heap.emplace(cand, v);
            }
        }
    }
}

inline std::vector<std::uint32_t> label_components(const Csr& csr, std::size_t n) {
    constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> label(n, kUnset);
    std::vector<std::uint32_t> stack;
    std::uint32_t next = 0;
    for (std::size_t start = 0; start < n; ++start) {
        if (label[start] != kUnset)
            continue;
        label[start] = next;
        stack.push_back(static_cast<std::uint32_t>(start));
        while (!stack.empty()) {
            const std::uint32_t u = stack.back();
            stack.pop_back();
            for (std::size_t a = csr.offsets[u]; a < csr.offsets[u + 1]; ++a) {
                const std::uint32_t v = csr.arcs[a].first;
                if (label[v] == kUnset) {
                    label[v] = next;
                    stack.push_back(v);
                }
            }
        }
        ++next;
    }
    return label;
}

} // namespace detail

/// All-pairs shortest paths by running Dijkstra from every source. Rows are
/// computed independently (parallelizable), then the lower triangle is copied
/// from the upper so the result is exactly symmetric even when two opposite
/// traversals would round differently.
inline GeodesicEdgeMatrix all_pairs_geodesics(const NeighborhoodGraph& graph,
                                              unsigned threads = 1) {
    const std::size_t n = graph.n;
    const auto csr = detail::Csr::from_graph(graph);
    std::vector<double> dist(n * n);
    parallel_for(n, threads, [&](std::size_t src) {
        detail::dijkstra_row(csr, n, static_cast<std::uint32_t>(src), dist.data() + src * n);
    });
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            dist[j * n + i] = dist[i * n + j];
    auto labels = detail::label_components(csr, n);
    bool connected = true;
    for (auto l : labels)
        if (l != 0) {
            connected = false;
            break;
        }
    return GeodesicEdgeMatrix(n, std::move(dist), connected, std::move(labels));
}

/// Principal submatrix at the given vertices. Distances keep their full-graph
/// values: a shortest path may route through vertices outside the subset.
inline GeodesicEdgeMatrix restrict_to(const GeodesicEdgeMatrix& matrix,
                                      std::span<const std::size_t> indices) {
    const std::size_t n = matrix.size();
    const std::size_t p = indices.size();
    std::vector<bool> seen(n, false);
    for (std::size_t idx : indices) {
        if (idx >= n)
            throw input_error("restrict index " + std::to_string(idx) + " out of range (n = " +
                              std::to_string(n) + ")");
        if (seen[idx])
            throw input_error("restrict index " + std::to_string(idx) + " repeated");
        seen[idx] = true;
    }
    std::vector<double> dist(p * p);
    for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = 0; b < p; ++b)
            dist[a * p + b] = matrix(indices[a], indices[b]);
    // Relabel components consecutively in first-appearance order.
    std::vector<std::uint32_t> labels(p);
    std::vector<std::uint32_t> remap;
    constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
    for (std::size_t a = 0; a < p; ++a) {
        const std::uint32_t orig = matrix.component_id(indices[a]);
        if (orig >= remap.size())
            remap.resize(orig + 1, kUnset);
        if (remap[orig] == kUnset) {
            std::uint32_t next = 0;
            for (auto r : remap)
                if (r != kUnset)
                    ++next;
            remap[orig] = next;
        }
        labels[a] = remap[orig];
    }
    bool connected = true;
    for (auto l : labels)
        if (l != 0) {
            connected = false;
            break;
        }
    return GeodesicEdgeMatrix(p, std::move(dist), connected, std::move(labels));
}

inline GeodesicEdgeMatrix restrict_to(const GeodesicEdgeMatrix& matrix,
                                      const std::vector<std::size_t>& indices) {
    return restrict_to(matrix, std::span<const std::size_t>(indices));
}

/// Lightweight non-owning restriction used in hot loops; same semantics as
/// restrict_to without the copy.
struct SubsetDistanceView {
    const GeodesicEdgeMatrix* matrix;
    std::span<const std::size_t> indices;

    std::size_t size() const { return indices.size(); }
    double weight(std::size_t a, std::size_t b) const {
        return (*matrix)(indices[a], indices[b]);
    }
};

/// Row-major CSV dump; unreachable pairs are written as "inf".
inline void dump_matrix_csv(const GeodesicEdgeMatrix& matrix, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw io_error("cannot write file: " + path);
    const std::size_t n = matrix.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j)
                out << ',';
            const double v = matrix(i, j);
            if (v == std::numeric_limits<double>::infinity())
                out << "inf";
            else
                out << format_double(v);
        }
        out << '\n';
    }
    if (!out)
        throw io_error("write failed: " + path);
}

} // namespace gmst
