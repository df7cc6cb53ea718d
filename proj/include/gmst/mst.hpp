#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "gmst/errors.hpp"
#include "gmst/parallel.hpp"
#include "gmst/rng.hpp"

namespace gmst {

/// Anything that can hand out symmetric pairwise edge weights.
template <typename S>
concept EdgeWeightSource = requires(const S& s, std::size_t i, std::size_t j) {
    { s.size() } -> std::convertible_to<std::size_t>;
    { s.weight(i, j) } -> std::convertible_to<double>;
};

struct MstEdge {
    std::size_t i;
    std::size_t j;
    double weight; // pre-exponentiation edge length
};

/// Spanning tree of minimal power-weighted length: total_length is the sum of
/// weight^gamma over the p-1 tree edges.
struct MstResult {
    double total_length = 0.0;
    double gamma = 1.0;
    std::vector<MstEdge> edges;
    std::size_t vertex_count = 0;
};

enum class MstAlgo {
    kruskal, // sort all pairs by (weight, i, j), union-find
    prim,    // dense O(p^2), no edge materialization
};

namespace detail {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        if (rank_[a] < rank_[b])
            std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b])
            ++rank_[a];
        return true;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> rank_;
};

template <EdgeWeightSource Source>
MstResult mst_kruskal(const Source& src, double gamma) {
    const std::size_t p = src.size();
    struct Cand {
        double w;
        std::uint32_t i, j;
    };
    std::vector<Cand> cand;
    cand.reserve(p * (p - 1) / 2);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i + 1; j < p; ++j) {
            const double w = src.weight(i, j);
            if (std::isfinite(w))
                cand.push_back({w, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
        }
    }
    std::sort(cand.begin(), cand.end(), [](const Cand& a, const Cand& b) {
        if (a.w != b.w)
            return a.w < b.w;
        if (a.i != b.i)
            return a.i < b.i;
        return a.j < b.j;
    });

    MstResult res;
    res.gamma = gamma;
    res.vertex_count = p;
    res.edges.reserve(p - 1);
    UnionFind uf(p);
    double total = 0.0;
    for (const Cand& c : cand) {
        if (uf.unite(c.i, c.j)) {
            res.edges.push_back({c.i, c.j, c.w});
            total += std::pow(c.w, gamma);
            if (res.edges.size() == p - 1)
                break;
        }
    }
    if (res.edges.size() != p - 1)
        throw disconnected_error("edge matrix has unreachable pairs; spanning tree impossible");
    res.total_length = total;
    return res;
}

template <EdgeWeightSource Source>
MstResult mst_prim(const Source& src, double gamma) {
    const std::size_t p = src.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> best(p, inf);
    std::vector<std::uint32_t> from(p, 0);
    std::vector<char> in_tree(p, 0);

    MstResult res;
    res.gamma = gamma;
    res.vertex_count = p;
    res.edges.reserve(p - 1);

    in_tree[0] = 1;
    for (std::size_t j = 1; j < p; ++j)
        best[j] = src.weight(0, j);

    double total = 0.0;
    for (std::size_t step = 1; step < p; ++step) {
        std::size_t v = p;
        double bw = inf;
        for (std::size_t j = 0; j < p; ++j) {
            if (!in_tree[j] && best[j] < bw) {
                bw = best[j];
                v = j;
            }
        }
        if (v == p)
            throw disconnected_error("edge matrix has unreachable pairs; spanning tree impossible");
        in_tree[v] = 1;
        const std::size_t a = std::min<std::size_t>(from[v], v);
        const std::size_t b = std::max<std::size_t>(from[v], v);
        res.edges.push_back({a, b, bw});
        total += std::pow(bw, gamma);
        for (std::size_t j = 0; j < p; ++j) {
            if (!in_tree[j]) {
                const double w = src.weight(v, j);
                if (w < best[j]) {
                    best[j] = w;
                    from[j] = static_cast<std::uint32_t>(v);
                }
            }
        }
    }
    res.total_length = total;
    return res;
}

} // namespace detail

/// Minimal power-weighted spanning tree over any symmetric weight source.
/// Because x^gamma is increasing for gamma > 0, the minimizing tree is the
/// ordinary MST of the raw weights; the exponent is applied to the chosen
/// edges. Every MST of a graph carries the same multiset of edge weights, so
/// both algorithms return the same total_length.
template <EdgeWeightSource Source>
MstResult gmst_length(const Source& src, double gamma, MstAlgo algo = MstAlgo::kruskal) {
    if (gamma <= 0.0)
        throw config_error("edge exponent gamma must be > 0, got " + std::to_string(gamma));
    const std::size_t p = src.size();
    if (p < 2)
        throw config_error("spanning tree needs at least 2 vertices");
    return algo == MstAlgo::kruskal ? detail::mst_kruskal(src, gamma)
                                    : detail::mst_prim(src, gamma);
}

/// Exhaustive minimizer over all p^(p-2) spanning trees, enumerated through
/// their sequence encodings. Test oracle; refuses p > 8. Fully independent of
/// the Kruskal/Prim paths above.
template <EdgeWeightSource Source>
MstResult mst_oracle(const Source& src, double gamma) {
    if (gamma <= 0.0)
        throw config_error("edge exponent gamma must be > 0");
    const std::size_t p = src.size();
    if (p < 2)
        throw config_error("spanning tree needs at least 2 vertices");
    if (p > 8)
        throw config_error("mst_oracle refuses p > 8 (enumeration blowup), got p = " + std::to_string(p));
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j)
            if (!std::isfinite(src.weight(i, j)))
                throw disconnected_error("mst_oracle requires all finite entries");

    MstResult best;
    best.gamma = gamma;
    best.vertex_count = p;
    best.total_length = std::numeric_limits<double>::infinity();

    if (p == 2) {
        best.edges = {{0, 1, src.weight(0, 1)}};
        best.total_length = std::pow(src.weight(0, 1), gamma);
        return best;
    }

    const std::size_t seq_len = p - 2;
    std::vector<std::size_t> seq(seq_len, 0);
    std::vector<std::size_t> degree(p);
    std::vector<char> used(p);
    std::vector<MstEdge> edges;
    edges.reserve(p - 1);

    while (true) {
        // Decode the sequence into a labeled tree (degree-counting decode).
        std::fill(degree.begin(), degree.end(), std::size_t{1});
        for (std::size_t s : seq)
            ++degree[s];
        std::fill(used.begin(), used.end(), char{0});
        edges.clear();
        double total = 0.0;
        for (std::size_t k = 0; k < seq_len; ++k) {
            std::size_t leaf = p;
            for (std::size_t v = 0; v < p; ++v) {
                if (!used[v] && degree[v] == 1) {
                    leaf = v;
                    break;
                }
            }
            used[leaf] = 1;
            const std::size_t s = seq[k];
            edges.push_back({std::min(leaf, s), std::max(leaf, s), src.weight(leaf, s)});
            total += std::pow(src.weight(leaf, s), gamma);
            --degree[s];
        }
        std::size_t u = p, v = p;
        for (std::size_t x = 0; x < p; ++x) {
            if (!used[x] && degree[x] == 1) {
                if (u == p)
                    u = x;
                else
                    v = x;
            }
        }
        edges.push_back({std::min(u, v), std::max(u, v), src.weight(u, v)});
        total += std::pow(src.weight(u, v), gamma);

        if (total < best.total_length) {
            best.total_length = total;
            best.edges = edges;
        }

        // Next sequence in base-p counting order.
        std::size_t pos = 0;
        while (pos < seq_len && ++seq[pos] == p) {
            seq[pos] = 0;
            ++pos;
        }
        if (pos == seq_len)
            break;
    }
    return best;
}

/// Monte Carlo estimate of the distribution-free normalization constant for
/// the MST on n uniform points in the m-dimensional unit cube:
///   beta_hat = mean over trials of L_gamma / n^((m - gamma) / m).
struct BetaEstimate {
    double beta_hat = 0.0;
    double stderr_ = 0.0;
    unsigned m = 0;
    double gamma = 1.0;
    std::size_t n = 0;
    std::size_t trials = 0;
};

namespace detail {

struct FlatPointsSource {
    const std::vector<double>& pts;
    std::size_t n;
    std::size_t dim;
    std::size_t size() const { return n; }
    double weight(std::size_t i, std::size_t j) const {
        const double* a = pts.data() + i * dim;
        const double* b = pts.data() + j * dim;
        double s = 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
            const double t = a[c] - b[c];
            s += t * t;
        }
        return std::sqrt(s);
    }
};

} // namespace detail

inline BetaEstimate estimate_beta(unsigned m, double gamma, std::size_t n, std::size_t trials,
                                  std::uint64_t seed, unsigned threads = 1) {
    if (m < 2)
        throw config_error("beta calibration requires m >= 2");
    if (gamma <= 0.0 || gamma >= static_cast<double>(m))
        throw config_error("beta calibration requires 0 < gamma < m");
    if (n < 2)
        throw config_error("beta calibration requires n >= 2");
    if (trials < 2)
        throw config_error("beta calibration requires at least 2 trials");

    std::vector<double> values(trials);
    const double norm = std::pow(static_cast<double>(n),
                                 (static_cast<double>(m) - gamma) / static_cast<double>(m));
    parallel_for(trials, threads, [&](std::size_t t) {
        rng::Stream stream(rng::substream_seed(seed, t));
        std::vector<double> pts(n * m);
        for (double& v : pts)
            v = stream.next_unit();
        detail::FlatPointsSource src{pts, n, m};
        const MstResult r = detail::mst_prim(src, gamma);
        values[t] = r.total_length / norm;
    });

    double mean = 0.0;
    for (double v : values)
        mean += v;
    mean /= static_cast<double>(trials);
    double ss = 0.0;
    for (double v : values)
        ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(trials - 1));

    BetaEstimate est;
    est.beta_hat = mean;
    est.stderr_ = sd / std::sqrt(static_cast<double>(trials));
    est.m = m;
    est.gamma = gamma;
    est.n = n;
    est.trials = trials;
    return est;
}

} // namespace gmst
