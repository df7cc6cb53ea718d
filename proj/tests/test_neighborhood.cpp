#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>

#include "gmst/neighborhood.hpp"
#include "gmst/rng.hpp"
#include "gmst/synthetic.hpp"
#include "helpers.hpp"

using namespace gmst;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

PointCloud line_013() { return PointCloud({0.0, 1.0, 3.0}, 3, 1); }

PointCloud unit_square_corners() {
    return PointCloud({0, 0, 1, 0, 0, 1, 1, 1}, 4, 2);
}

bool has_edge(const NeighborhoodGraph& g, std::size_t i, std::size_t j) {
    for (const auto& e : g.edges)
        if (e.i == std::min(i, j) && e.j == std::max(i, j))
            return true;
    return false;
}

} // namespace

TEST_CASE("knn(1) on a 0,1,3 line symmetrizes to a path") {
    const auto g = build_graph(line_013(), KnnRule{1});
    REQUIRE(g.edges.size() == 2);
    CHECK(g.edges[0].i == 0);
    CHECK(g.edges[0].j == 1);
    CHECK(g.edges[0].weight == 1.0);
    CHECK(g.edges[1].i == 1);
    CHECK(g.edges[1].j == 2);
    CHECK(g.edges[1].weight == 2.0);
}

TEST_CASE("epsilon(1.5) on the line keeps only the near pair") {
    const auto g = build_graph(line_013(), EpsilonRule{1.5});
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0].weight == 1.0);
    const auto deg = g.degrees();
    CHECK(deg[2] == 0); // vertex 2 isolated: the graph is disconnected
}

TEST_CASE("epsilon rule includes the boundary distance") {
    const auto g = build_graph(line_013(), EpsilonRule{1.0});
    REQUIRE(g.edges.size() == 1); // |0-1| = 1.0 <= 1.0 kept
}

TEST_CASE("unit square knn(2) keeps sides, drops diagonals") {
    const auto g = build_graph(unit_square_corners(), KnnRule{2});
    REQUIRE(g.edges.size() == 4);
    for (const auto& e : g.edges)
        CHECK(e.weight == 1.0);
    CHECK_FALSE(has_edge(g, 0, 3));
    CHECK_FALSE(has_edge(g, 1, 2));
}

TEST_CASE("rule validation") {
    CHECK_THROWS_AS(build_graph(line_013(), KnnRule{3}), config_error);  // k >= n
    CHECK_THROWS_AS(build_graph(line_013(), KnnRule{0}), config_error);
    CHECK_THROWS_AS(build_graph(line_013(), EpsilonRule{0.0}), config_error);
    CHECK_THROWS_AS(build_graph(line_013(), EpsilonRule{-2.0}), config_error);
}

TEST_CASE("mean neighbor distance per vertex") {
    const auto g = build_graph(line_013(), KnnRule{1});
    REQUIRE(g.mean_neighbor_dist.size() == 3);
    CHECK(g.mean_neighbor_dist[0] == 1.0);
    CHECK(g.mean_neighbor_dist[1] == 1.5);
    CHECK(g.mean_neighbor_dist[2] == 2.0);
}

TEST_CASE("conformal rescale divides by the geometric mean of local scales") {
    const auto g = build_graph(line_013(), KnnRule{1});
    const auto r = rescale_conformal(g);
    REQUIRE(r.edges.size() == 2);
    CHECK(r.rescaled);
    CHECK(r.edges[0].weight == 1.0 / std::sqrt(1.5));
    CHECK(r.edges[1].weight == 2.0 / std::sqrt(1.5 * 2.0));
    CHECK_THAT(r.edges[0].weight, WithinAbs(0.8165, 1e-4));
    CHECK_THAT(r.edges[1].weight, WithinAbs(1.1547, 1e-4));
    // the pre-rescale M values are preserved for reference
    CHECK(r.mean_neighbor_dist[1] == 1.5);
}

TEST_CASE("uniform graph rescales to unit weights") {
    const auto g = build_graph(unit_square_corners(), KnnRule{2});
    const auto r = rescale_conformal(g);
    for (const auto& e : r.edges)
        CHECK(e.weight == 1.0);
}

TEST_CASE("double rescale is rejected") {
    const auto g = build_graph(line_013(), KnnRule{1});
    const auto r = rescale_conformal(g);
    CHECK_THROWS_AS(rescale_conformal(r), config_error);
}

TEST_CASE("coincident points flag zero-weight edges and break rescaling") {
    const PointCloud cloud({0, 0, 0, 0, 5, 0}, 3, 2); // points 0 and 1 coincide
    const auto g = build_graph(cloud, KnnRule{1});
    CHECK(g.zero_weight_edges == 1);
    // vertex 0 also picks up vertex 2 through symmetrization, so vertex 1 is
    // the one whose every neighbor coincides with it
    CHECK_THROWS_AS(rescale_conformal(g), input_error);
    CHECK_THROWS_WITH(rescale_conformal(g), Catch::Matchers::ContainsSubstring("vertex 1"));
}

TEST_CASE("knn edge set contains every directed k-nearest pair") {
    const auto sc = generate([] {
        SyntheticSpec s;
        s.kind = ManifoldKind::hypercube;
        s.intrinsic_dim = 2;
        s.ambient_dim = 2;
        s.n = 40;
        s.seed = 12;
        return s;
    }());
    const std::size_t k = 4;
    const auto g = build_graph(sc.cloud, KnnRule{k});
    for (std::size_t i = 0; i < 40; ++i) {
        // brute force i's k nearest
        std::vector<std::pair<double, std::size_t>> dists;
        for (std::size_t j = 0; j < 40; ++j)
            if (j != i)
                dists.emplace_back(sc.cloud.distance(i, j), j);
        std::sort(dists.begin(), dists.end());
        for (std::size_t r = 0; r < k; ++r)
            CHECK(has_edge(g, i, dists[r].second));
        const auto deg = g.degrees();
        CHECK(deg[i] >= k);
    }
}

TEST_CASE("epsilon graphs grow monotonically with the radius") {
    const auto sc = generate([] {
        SyntheticSpec s;
        s.kind = ManifoldKind::hypercube;
        s.intrinsic_dim = 2;
        s.ambient_dim = 2;
        s.n = 50;
        s.seed = 8;
        return s;
    }());
    const auto small = build_graph(sc.cloud, EpsilonRule{0.15});
    const auto large = build_graph(sc.cloud, EpsilonRule{0.3});
    CHECK(small.edges.size() < large.edges.size());
    for (const auto& e : small.edges)
        CHECK(has_edge(large, e.i, e.j));
}

TEST_CASE("ties in neighbor selection resolve toward the smaller index") {
    // four evenly spaced collinear points; middle vertices see two
    // equidistant neighbors
    const PointCloud cloud({0.0, 1.0, 2.0, 3.0}, 4, 1);
    const auto g = build_graph(cloud, KnnRule{1});
    REQUIRE(g.edges.size() == 3); // 1 picks 0, 2 picks 1, 3 picks 2, symmetrized
    CHECK(has_edge(g, 0, 1));
    CHECK(has_edge(g, 1, 2));
    CHECK(has_edge(g, 2, 3));
}

TEST_CASE("rescaled weights are invariant to rotation plus translation") {
    const auto sc = generate([] {
        SyntheticSpec s;
        s.kind = ManifoldKind::hypercube;
        s.intrinsic_dim = 2;
        s.ambient_dim = 2;
        s.n = 60;
        s.seed = 44;
        return s;
    }());
    const double angle = 0.7;
    const double c = std::cos(angle), sn = std::sin(angle);
    std::vector<double> moved;
    for (std::size_t i = 0; i < 60; ++i) {
        const double x = sc.cloud.coord(i, 0);
        const double y = sc.cloud.coord(i, 1);
        moved.push_back(c * x - sn * y + 3.5);
        moved.push_back(sn * x + c * y - 1.25);
    }
    const PointCloud rotated(std::move(moved), 60, 2);
    const auto a = rescale_conformal(build_graph(sc.cloud, KnnRule{4}));
    const auto b = rescale_conformal(build_graph(rotated, KnnRule{4}));
    REQUIRE(a.edges.size() == b.edges.size());
    for (std::size_t e = 0; e < a.edges.size(); ++e) {
        CHECK(a.edges[e].i == b.edges[e].i);
        CHECK(a.edges[e].j == b.edges[e].j);
        CHECK_THAT(a.edges[e].weight, WithinRel(b.edges[e].weight, 1e-9));
    }
}

TEST_CASE("global scaling moves raw weights and cancels in rescaled ones") {
    const auto base = generate([] {
        SyntheticSpec s;
        s.kind = ManifoldKind::conformal_fishbowl;
        s.intrinsic_dim = 2;
        s.ambient_dim = 3;
        s.n = 80;
        s.seed = 19;
        return s;
    }());
    std::vector<double> scaled_coords(base.cloud.raw().begin(), base.cloud.raw().end());
    for (double& v : scaled_coords)
        v *= 4.0; // power of two: exact in floating point
    const PointCloud scaled(std::move(scaled_coords), 80, 3);

    const auto g1 = build_graph(base.cloud, KnnRule{5});
    const auto g2 = build_graph(scaled, KnnRule{5});
    REQUIRE(g1.edges.size() == g2.edges.size());
    for (std::size_t e = 0; e < g1.edges.size(); ++e)
        CHECK(g2.edges[e].weight == 4.0 * g1.edges[e].weight);

    const auto r1 = rescale_conformal(g1);
    const auto r2 = rescale_conformal(g2);
    for (std::size_t e = 0; e < r1.edges.size(); ++e)
        CHECK(r2.edges[e].weight == r1.edges[e].weight); // bit-identical
}

TEST_CASE("edge dump is a parseable csv") {
    const auto g = build_graph(line_013(), KnnRule{1});
    const auto path = testutil::temp_path("edges.csv");
    dump_edges_csv(g, path);
    const auto content = testutil::read_file(path);
    CHECK(content.rfind("i,j,weight\n", 0) == 0);
    CHECK(content.find("0,1,1\n") != std::string::npos);
    CHECK(content.find("1,2,2\n") != std::string::npos);
}

TEST_CASE("parallel build matches serial build") {
    const auto sc = generate([] {
        SyntheticSpec s;
        s.kind = ManifoldKind::hypercube;
        s.intrinsic_dim = 2;
        s.ambient_dim = 2;
        s.n = 70;
        s.seed = 33;
        return s;
    }());
    const auto serial = build_graph(sc.cloud, KnnRule{5}, 1);
    const auto parallel = build_graph(sc.cloud, KnnRule{5}, 4);
    REQUIRE(serial.edges.size() == parallel.edges.size());
    for (std::size_t e = 0; e < serial.edges.size(); ++e) {
        CHECK(serial.edges[e].i == parallel.edges[e].i);
        CHECK(serial.edges[e].j == parallel.edges[e].j);
        CHECK(serial.edges[e].weight == parallel.edges[e].weight);
    }
}
