#pragma once

// Shared test utilities: independent oracles and scratch-file plumbing.

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "gmst/gmst.hpp"

namespace testutil {

/// Dense symmetric matrix with the edge-source interface.
struct DenseMatrix {
    std::size_t n = 0;
    std::vector<double> d;

    explicit DenseMatrix(std::size_t n_) : n(n_), d(n_ * n_, 0.0) {}
    std::size_t size() const { return n; }
    double weight(std::size_t i, std::size_t j) const { return d[i * n + j]; }
    void set(std::size_t i, std::size_t j, double w) {
        d[i * n + j] = w;
        d[j * n + i] = w;
    }
};

/// Random complete matrix. Dyadic weights (integers scaled by 2^-8) make
/// every path sum exact in double arithmetic, so oracle comparisons can
/// demand bitwise equality.
inline DenseMatrix random_complete_matrix(gmst::rng::Stream& stream, std::size_t n,
                                          bool dyadic = true) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double w = dyadic
                ? static_cast<double>(stream.next_below(1000) + 1) * 0x1.0p-8
                : stream.next_unit() + 1e-6;
            m.set(i, j, w);
        }
    return m;
}

/// Random sparse graph with dyadic weights; connectivity not guaranteed.
inline gmst::NeighborhoodGraph random_sparse_graph(gmst::rng::Stream& stream, std::size_t n,
                                                   double edge_prob) {
    gmst::NeighborhoodGraph g;
    g.n = n;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (stream.next_unit() < edge_prob) {
                const double w = static_cast<double>(stream.next_below(1000) + 1) * 0x1.0p-8;
                g.edges.push_back({i, j, w});
            }
    gmst::detail::compute_mean_neighbor_dist(g);
    return g;
}

/// O(n^3) dynamic-programming all-pairs oracle, independent of the library's
/// per-source search. Returns row-major n*n distances.
inline std::vector<double> floyd_warshall(const gmst::NeighborhoodGraph& g) {
    const std::size_t n = g.n;
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> d(n * n, kInf);
    for (std::size_t i = 0; i < n; ++i)
        d[i * n + i] = 0.0;
    for (const auto& e : g.edges) {
        if (e.weight < d[e.i * n + e.j]) {
            d[e.i * n + e.j] = e.weight;
            d[e.j * n + e.i] = e.weight;
        }
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            const double dik = d[i * n + k];
            if (dik == kInf)
                continue;
            for (std::size_t j = 0; j < n; ++j) {
                const double cand = dik + d[k * n + j];
                if (cand < d[i * n + j])
                    d[i * n + j] = cand;
            }
        }
    return d;
}

/// Closed-form two-variable OLS (slope, intercept) via raw product sums.
inline std::pair<double, double> ols_closed_form(const std::vector<double>& x,
                                                 const std::vector<double>& y) {
    const auto q = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double slope = (q * sxy - sx * sy) / (q * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / q;
    return {slope, intercept};
}

/// Composite Simpson quadrature.
template <typename F>
double simpson(F f, double a, double b, int intervals) {
    if (intervals % 2 != 0)
        ++intervals;
    const double h = (b - a) / intervals;
    double sum = f(a) + f(b);
    for (int i = 1; i < intervals; ++i)
        sum += f(a + h * i) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

/// Fresh scratch path under the system temp dir; caller owns cleanup (or
/// leaves it to the OS, these are tiny).
inline std::string temp_path(const std::string& name) {
    static const std::filesystem::path dir = [] {
        auto d = std::filesystem::temp_directory_path() /
                 ("gmst_tests_" + std::to_string(::getpid()));
        std::filesystem::create_directories(d);
        return d;
    }();
    return (dir / name).string();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    return content;
}

} // namespace testutil
