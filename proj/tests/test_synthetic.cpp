#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "gmst/synthetic.hpp"
#include "helpers.hpp"

using namespace gmst;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SyntheticSpec make(ManifoldKind kind, std::size_t m, std::size_t d, std::size_t n,
                   std::uint64_t seed = 0, double scale = 1.0) {
    SyntheticSpec spec;
    spec.kind = kind;
    spec.intrinsic_dim = m;
    spec.ambient_dim = d;
    spec.n = n;
    spec.seed = seed;
    spec.scale_factor = scale;
    return spec;
}

} // namespace

TEST_CASE("generation is bit-reproducible") {
    const auto spec = make(ManifoldKind::swiss_roll, 2, 3, 200, 77);
    const auto a = generate(spec);
    const auto b = generate(spec);
    REQUIRE(a.cloud.size() == b.cloud.size());
    for (std::size_t i = 0; i < a.cloud.size(); ++i)
        for (std::size_t c = 0; c < 3; ++c)
            CHECK(a.cloud.coord(i, c) == b.cloud.coord(i, c));
    const auto c = generate(make(ManifoldKind::swiss_roll, 2, 3, 200, 78));
    CHECK(a.cloud.coord(0, 0) != c.cloud.coord(0, 0));
}

TEST_CASE("hypercube samples the unit cube with zero entropy") {
    const auto sc = generate(make(ManifoldKind::hypercube, 2, 2, 4, 7));
    REQUIRE(sc.cloud.size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t c = 0; c < 2; ++c) {
            CHECK(sc.cloud.coord(i, c) >= 0.0);
            CHECK(sc.cloud.coord(i, c) < 1.0);
        }
    REQUIRE(sc.ground_truth_entropy_nats.has_value());
    CHECK(*sc.ground_truth_entropy_nats == 0.0);
    CHECK(sc.isometric);
}

TEST_CASE("hyperplane embedding preserves pairwise distances") {
    const auto sc = generate(make(ManifoldKind::hyperplane, 2, 3, 150, 3));
    REQUIRE(sc.cloud.ambient_dim() == 3);
    rng::Stream pick(11);
    for (int rep = 0; rep < 200; ++rep) {
        const auto i = static_cast<std::size_t>(pick.next_below(150));
        const auto j = static_cast<std::size_t>(pick.next_below(150));
        if (i == j)
            continue;
        const double ambient = sc.cloud.distance(i, j);
        const double param = analytic_geodesic(sc, i, j);
        CHECK_THAT(ambient, WithinRel(param, 1e-9));
    }
}

TEST_CASE("hyperplane scales to very wide ambient dimension") {
    const auto sc = generate(make(ManifoldKind::hyperplane, 6, 4096, 20, 5));
    CHECK(sc.cloud.ambient_dim() == 4096);
    const double ambient = sc.cloud.distance(0, 1);
    const double param = analytic_geodesic(sc, 0, 1);
    CHECK_THAT(ambient, WithinRel(param, 1e-9));
}

TEST_CASE("swiss roll arc length matches quadrature") {
    const double oracle = testutil::simpson(
        [](double t) { return std::sqrt(1.0 + t * t); }, detail::kRollT0, detail::kRollT1,
        200000);
    CHECK_THAT(detail::roll_arc_total(), WithinRel(oracle, 1e-12));
}

TEST_CASE("swiss roll arc inversion is a left inverse") {
    for (double frac : {0.0, 0.1, 0.37, 0.5, 0.82, 1.0}) {
        const double t = detail::kRollT0 + frac * (detail::kRollT1 - detail::kRollT0);
        const double s = detail::roll_arc(t) - detail::roll_arc(detail::kRollT0);
        CHECK_THAT(detail::roll_invert_arc(s), WithinRel(t, 1e-12));
    }
}

TEST_CASE("swiss roll points sit on the spiral with bounded height") {
    const auto sc = generate(make(ManifoldKind::swiss_roll, 2, 3, 400, 9));
    for (std::size_t i = 0; i < sc.cloud.size(); ++i) {
        const double x = sc.cloud.coord(i, 0);
        const double h = sc.cloud.coord(i, 1);
        const double z = sc.cloud.coord(i, 2);
        const double radius = std::hypot(x, z);
        CHECK(radius >= detail::kRollT0 - 1e-9);
        CHECK(radius <= detail::kRollT1 + 1e-9);
        CHECK(h >= 0.0);
        CHECK(h <= detail::kRollHeight);
    }
    REQUIRE(sc.ground_truth_entropy_nats.has_value());
    const double expected = std::log(detail::roll_arc_total() * detail::kRollHeight);
    CHECK_THAT(*sc.ground_truth_entropy_nats, WithinRel(expected, 1e-12));
}

TEST_CASE("swiss roll chords are dominated by and converge to geodesics") {
    const auto sc = generate(make(ManifoldKind::swiss_roll, 2, 3, 800, 21));
    rng::Stream pick(5);
    int close_pairs = 0;
    for (int rep = 0; rep < 4000; ++rep) {
        const auto i = static_cast<std::size_t>(pick.next_below(800));
        const auto j = static_cast<std::size_t>(pick.next_below(800));
        if (i == j)
            continue;
        const double chord = sc.cloud.distance(i, j);
        const double geo = analytic_geodesic(sc, i, j);
        CHECK(chord <= geo * (1.0 + 1e-9)); // path along the surface can't beat the chord
        if (geo < 2.5) {
            ++close_pairs;
            // chord deficit of an arc is geo^2 / (24 R^2); inner radius ~4.7
            CHECK_THAT(chord, WithinRel(geo, 2e-2));
        }
    }
    CHECK(close_pairs > 10); // sanity: the tolerance above was actually exercised
}

TEST_CASE("sphere samples lie on the sphere with log-area entropy") {
    const auto sc = generate(make(ManifoldKind::sphere, 2, 3, 300, 13));
    for (std::size_t i = 0; i < sc.cloud.size(); ++i) {
        const double norm = std::hypot(sc.cloud.coord(i, 0), sc.cloud.coord(i, 1),
                                       sc.cloud.coord(i, 2));
        CHECK_THAT(norm, WithinRel(1.0, 1e-12));
    }
    REQUIRE(sc.ground_truth_entropy_nats.has_value());
    CHECK_THAT(*sc.ground_truth_entropy_nats, WithinRel(std::log(4.0 * std::numbers::pi), 1e-12));

    // great-circle distance: orthogonal points sit a quarter turn apart
    const double geo = analytic_geodesic(sc, 0, 1);
    CHECK(geo > 0.0);
    CHECK(geo <= std::numbers::pi + 1e-12);
    CHECK(sc.cloud.distance(0, 1) <= geo + 1e-12); // chord below the arc
}

TEST_CASE("sphere embeds isometrically into wider ambient space") {
    const auto flat = generate(make(ManifoldKind::sphere, 2, 3, 100, 13));
    const auto wide = generate(make(ManifoldKind::sphere, 2, 8, 100, 13));
    for (int rep = 0; rep < 50; ++rep)
        CHECK_THAT(wide.cloud.distance(rep, rep + 40),
                   WithinRel(flat.cloud.distance(rep, rep + 40), 1e-9));
}

TEST_CASE("fishbowl sits on the unit sphere below the equator") {
    const auto sc = generate(make(ManifoldKind::conformal_fishbowl, 2, 3, 300, 4));
    for (std::size_t i = 0; i < sc.cloud.size(); ++i) {
        const double norm = std::hypot(sc.cloud.coord(i, 0), sc.cloud.coord(i, 1),
                                       sc.cloud.coord(i, 2));
        CHECK_THAT(norm, WithinRel(1.0, 1e-12));
        CHECK(sc.cloud.coord(i, 2) <= 1e-12); // disk params map below z = 0
    }
    CHECK_FALSE(sc.isometric);
    CHECK_FALSE(sc.ground_truth_entropy_nats.has_value());
    CHECK_THROWS_AS(analytic_geodesic(sc, 0, 1), config_error);
}

TEST_CASE("power-of-two scale factor rescales coordinates exactly") {
    const auto base = generate(make(ManifoldKind::swiss_roll, 2, 3, 100, 31, 1.0));
    const auto scaled = generate(make(ManifoldKind::swiss_roll, 2, 3, 100, 31, 2.0));
    for (std::size_t i = 0; i < 100; ++i)
        for (std::size_t c = 0; c < 3; ++c)
            CHECK(scaled.cloud.coord(i, c) == 2.0 * base.cloud.coord(i, c));
    REQUIRE(scaled.ground_truth_entropy_nats.has_value());
    CHECK_THAT(*scaled.ground_truth_entropy_nats,
               WithinAbs(*base.ground_truth_entropy_nats + 2.0 * std::log(2.0), 1e-12));
}

TEST_CASE("scaled hypercube entropy is m log s") {
    const auto sc = generate(make(ManifoldKind::hypercube, 3, 3, 50, 2, 4.0));
    REQUIRE(sc.ground_truth_entropy_nats.has_value());
    CHECK_THAT(*sc.ground_truth_entropy_nats, WithinRel(3.0 * std::log(4.0), 1e-12));
}

TEST_CASE("generator rejects unsupported combinations") {
    CHECK_THROWS_AS(generate(make(ManifoldKind::hypercube, 2, 3, 10)), config_error);
    CHECK_THROWS_AS(generate(make(ManifoldKind::swiss_roll, 3, 3, 10)), config_error);
    CHECK_THROWS_AS(generate(make(ManifoldKind::swiss_roll, 2, 4, 10)), config_error);
    CHECK_THROWS_AS(generate(make(ManifoldKind::sphere, 2, 2, 10)), config_error);
    CHECK_THROWS_AS(generate(make(ManifoldKind::conformal_fishbowl, 2, 4, 10)), config_error);
    CHECK_THROWS_AS(generate(make(ManifoldKind::hyperplane, 5, 3, 10)), config_error);
    CHECK_THROWS_AS(generate(make(ManifoldKind::hyperplane, 1, 3, 10)), config_error);
    CHECK_THROWS_AS(generate(make(ManifoldKind::hypercube, 2, 2, 1)), config_error);
    CHECK_THROWS_AS(generate(make(ManifoldKind::hypercube, 2, 2, 10, 0, -1.0)), config_error);
}

TEST_CASE("kind names round-trip") {
    for (auto kind : {ManifoldKind::hyperplane, ManifoldKind::hypercube,
                      ManifoldKind::swiss_roll, ManifoldKind::sphere,
                      ManifoldKind::conformal_fishbowl})
        CHECK(manifold_kind_from_string(to_string(kind)) == kind);
    CHECK_THROWS_AS(manifold_kind_from_string("torus"), config_error);
}
