#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "gmst/errors.hpp"
#include "gmst/point_cloud.hpp"
#include "gmst/rng.hpp"

namespace gmst {

enum class ManifoldKind { hyperplane, hypercube, swiss_roll, sphere, conformal_fishbowl };

inline const char* to_string(ManifoldKind k) {
    switch (k) {
    case ManifoldKind::hyperplane: return "hyperplane";
    case ManifoldKind::hypercube: return "hypercube";
    case ManifoldKind::swiss_roll: return "swiss-roll";
    case ManifoldKind::sphere: return "sphere";
    case ManifoldKind::conformal_fishbowl: return "conformal-fishbowl";
    }
    return "?";
}

inline ManifoldKind manifold_kind_from_string(const std::string& s) {
    if (s == "hyperplane") return ManifoldKind::hyperplane;
    if (s == "hypercube") return ManifoldKind::hypercube;
    if (s == "swiss-roll") return ManifoldKind::swiss_roll;
    if (s == "sphere") return ManifoldKind::sphere;
    if (s == "conformal-fishbowl") return ManifoldKind::conformal_fishbowl;
    throw config_error("unknown generator kind: " + s);
}

struct SyntheticSpec {
    ManifoldKind kind = ManifoldKind::hypercube;
    std::size_t intrinsic_dim = 2; // m
    std::size_t ambient_dim = 2;   // d
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double scale_factor = 1.0; // multiplies all output coordinates
};

/// Generated cloud plus the latent parameters that produced it, so tests can
/// compare graph geodesics against closed-form manifold distances.
struct SyntheticCloud {
    PointCloud cloud;
    SyntheticSpec spec;
    std::vector<double> params; // n x param_dim, row-major, post-scale
    std::size_t param_dim = 0;
    std::optional<double> ground_truth_entropy_nats;
    bool isometric = false; // param Euclidean distance == manifold geodesic
};

namespace detail {

// Swiss roll spiral: radius grows linearly with angle t over [kRollT0, kRollT1];
// the cross-section height spans [0, kRollHeight]. Arc length of (t cos t, t sin t)
// is integral of sqrt(1 + t^2), with antiderivative roll_arc below, so sampling
// s uniformly and inverting gives points uniform in surface area.
inline constexpr double kRollT0 = 1.5 * std::numbers::pi;
inline constexpr double kRollT1 = 4.5 * std::numbers::pi;
inline constexpr double kRollHeight = 21.0;

inline double roll_arc(double t) {
    return 0.5 * (t * std::sqrt(1.0 + t * t) + std::asinh(t));
}

inline double roll_arc_total() {
    return roll_arc(kRollT1) - roll_arc(kRollT0);
}

/// Inverts roll_arc(t) - roll_arc(kRollT0) = s by Newton iteration.
inline double roll_invert_arc(double s) {
    const double target = roll_arc(kRollT0) + s;
    double t = std::sqrt(std::max(2.0 * target, kRollT0 * kRollT0));
    for (int it = 0; it < 64; ++it) {
        const double f = roll_arc(t) - target;
        const double step = f / std::sqrt(1.0 + t * t);
        t -= step;
        if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(t)))
            break;
    }
    return t;
}

/// Deterministic orthonormal d x m frame (columns), independent of the data
/// seed so every run of a given shape embeds into the same subspace.
inline std::vector<double> orthonormal_frame(std::size_t d, std::size_t m) {
    rng::Stream stream(rng::substream_seed(0x9E3779B97F4A7C15ull,
                                           static_cast<std::uint64_t>(d) * 1000003u + m));
    std::vector<double> frame(d * m); // column-major: frame[c * d + r]
    for (std::size_t c = 0; c < m; ++c) {
        double norm = 0.0;
        while (norm < 1e-6) {
            for (std::size_t r = 0; r < d; ++r)
                frame[c * d + r] = stream.next_normal();
            // Two Gram-Schmidt passes for orthogonality near machine precision.
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t prev = 0; prev < c; ++prev) {
                    double dot = 0.0;
                    for (std::size_t r = 0; r < d; ++r)
                        dot += frame[c * d + r] * frame[prev * d + r];
                    for (std::size_t r = 0; r < d; ++r)
                        frame[c * d + r] -= dot * frame[prev * d + r];
                }
            }
            norm = 0.0;
            for (std::size_t r = 0; r < d; ++r)
                norm += frame[c * d + r] * frame[c * d + r];
            norm = std::sqrt(norm);
        }
        for (std::size_t r = 0; r < d; ++r)
            frame[c * d + r] /= norm;
    }
    return frame;
}

inline void validate_spec(const SyntheticSpec& spec) {
    if (spec.n < 2)
        throw config_error("need n >= 2 points");
    if (spec.intrinsic_dim < 2)
        throw config_error("intrinsic dimension must be >= 2");
    if (spec.intrinsic_dim > spec.ambient_dim)
        throw config_error("intrinsic dimension exceeds ambient dimension");
    if (!(spec.scale_factor > 0.0) || !std::isfinite(spec.scale_factor))
        throw config_error("scale factor must be positive and finite");
    switch (spec.kind) {
    case ManifoldKind::hypercube:
        if (spec.intrinsic_dim != spec.ambient_dim)
            throw config_error("hypercube requires m == d (use hyperplane to embed)");
        break;
    case ManifoldKind::hyperplane:
        break;
    case ManifoldKind::swiss_roll:
        if (spec.intrinsic_dim != 2 || spec.ambient_dim != 3)
            throw config_error("swiss-roll requires m = 2, d = 3");
        break;
    case ManifoldKind::sphere:
        if (spec.ambient_dim < spec.intrinsic_dim + 1)
            throw config_error("sphere requires d >= m + 1");
        break;
    case ManifoldKind::conformal_fishbowl:
        if (spec.intrinsic_dim != 2 || spec.ambient_dim != 3)
            throw config_error("conformal-fishbowl requires m = 2, d = 3");
        break;
    }
}

// Surface area of the unit m-sphere embedded in R^{m+1}.
inline double unit_sphere_area(std::size_t m) {
    const double k = static_cast<double>(m + 1);
    return 2.0 * std::pow(std::numbers::pi, 0.5 * k) / std::tgamma(0.5 * k);
}

} // namespace detail

/// Samples n points on the requested manifold. Deterministic: equal
/// SyntheticSpec values yield a bit-identical cloud. scale_factor multiplies
/// all output coordinates (and parameters, so closed-form geodesics stay in
/// step).
inline SyntheticCloud generate(const SyntheticSpec& spec) {
    detail::validate_spec(spec);
    const std::size_t n = spec.n;
    const std::size_t m = spec.intrinsic_dim;
    const std::size_t d = spec.ambient_dim;
    const double s = spec.scale_factor;
    rng::Stream stream(rng::substream_seed(spec.seed, static_cast<std::uint64_t>(spec.kind)));

    std::vector<double> coords(n * d, 0.0);
    std::vector<double> params;
    std::size_t param_dim = 0;
    std::optional<double> entropy;
    bool isometric = false;

    switch (spec.kind) {
    case ManifoldKind::hypercube: {
        param_dim = m;
        params.resize(n * m);
        for (std::size_t i = 0; i < n * m; ++i)
            params[i] = s * stream.next_unit();
        coords = params;
        entropy = static_cast<double>(m) * std::log(s);
        isometric = true;
        break;
    }
    case ManifoldKind::hyperplane: {
        param_dim = m;
        params.resize(n * m);
        for (std::size_t i = 0; i < n * m; ++i)
            params[i] = s * stream.next_unit();
        const auto frame = detail::orthonormal_frame(d, m);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t c = 0; c < m; ++c) {
                const double u = params[i * m + c];
                for (std::size_t r = 0; r < d; ++r)
                    coords[i * d + r] += u * frame[c * d + r];
            }
        entropy = static_cast<double>(m) * std::log(s);
        isometric = true;
        break;
    }
    case ManifoldKind::swiss_roll: {
        param_dim = 2;
        params.resize(n * 2);
        const double arc_total = detail::roll_arc_total();
        for (std::size_t i = 0; i < n; ++i) {
            const double arc = arc_total * stream.next_unit();
            const double h = detail::kRollHeight * stream.next_unit();
            const double t = detail::roll_invert_arc(arc);
            params[i * 2 + 0] = s * arc;
            params[i * 2 + 1] = s * h;
            coords[i * 3 + 0] = s * (t * std::cos(t));
            coords[i * 3 + 1] = s * h;
            coords[i * 3 + 2] = s * (t * std::sin(t));
        }
        entropy = std::log(arc_total * detail::kRollHeight) + 2.0 * std::log(s);
        isometric = true;
        break;
    }
    case ManifoldKind::sphere: {
        // Normalized Gaussians are uniform on the sphere. Params hold the
        // unit vector in R^{m+1}; geodesics are great-circle arcs.
        param_dim = m + 1;
        params.resize(n * param_dim);
        for (std::size_t i = 0; i < n; ++i) {
            double norm = 0.0;
            while (norm < 1e-12) {
                norm = 0.0;
                for (std::size_t c = 0; c < param_dim; ++c) {
                    const double g = stream.next_normal();
                    params[i * param_dim + c] = g;
                    norm += g * g;
                }
                norm = std::sqrt(norm);
            }
            for (std::size_t c = 0; c < param_dim; ++c)
                params[i * param_dim + c] /= norm;
        }
        if (d == param_dim) {
            for (std::size_t i = 0; i < n * d; ++i)
                coords[i] = s * params[i];
        } else {
            const auto frame = detail::orthonormal_frame(d, param_dim);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t c = 0; c < param_dim; ++c) {
                    const double u = s * params[i * param_dim + c];
                    for (std::size_t r = 0; r < d; ++r)
                        coords[i * d + r] += u * frame[c * d + r];
                }
        }
        entropy = std::log(detail::unit_sphere_area(m)) + static_cast<double>(m) * std::log(s);
        isometric = false;
        break;
    }
    case ManifoldKind::conformal_fishbowl: {
        // Uniform unit disk pushed through inverse stereographic projection
        // onto the lower hemisphere. The embedding is conformal, not
        // isometric: local lengths shrink by 2 / (1 + u^2 + v^2).
        param_dim = 2;
        params.resize(n * 2);
        for (std::size_t i = 0; i < n; ++i) {
            const double r = std::sqrt(stream.next_unit());
            const double theta = 2.0 * std::numbers::pi * stream.next_unit();
            const double u = r * std::cos(theta);
            const double v = r * std::sin(theta);
            params[i * 2 + 0] = u;
            params[i * 2 + 1] = v;
            const double q = 1.0 + u * u + v * v;
            coords[i * 3 + 0] = s * (2.0 * u / q);
            coords[i * 3 + 1] = s * (2.0 * v / q);
            coords[i * 3 + 2] = s * ((u * u + v * v - 1.0) / q);
        }
        isometric = false;
        break;
    }
    }

    SyntheticCloud out{PointCloud(std::move(coords), n, d), spec, std::move(params),
                       param_dim, entropy, isometric};
    return out;
}

/// Closed-form on-manifold distance between generated points i and j.
/// Available for every kind except the fishbowl (no elementary form there).
inline double analytic_geodesic(const SyntheticCloud& sc, std::size_t i, std::size_t j) {
    const std::size_t pd = sc.param_dim;
    const double* a = sc.params.data() + i * pd;
    const double* b = sc.params.data() + j * pd;
    switch (sc.spec.kind) {
    case ManifoldKind::hypercube:
    case ManifoldKind::hyperplane:
    case ManifoldKind::swiss_roll: {
        double sq = 0.0;
        for (std::size_t c = 0; c < pd; ++c) {
            const double diff = a[c] - b[c];
            sq += diff * diff;
        }
        return std::sqrt(sq);
    }
    case ManifoldKind::sphere: {
        double dot = 0.0;
        for (std::size_t c = 0; c < pd; ++c)
            dot += a[c] * b[c];
        dot = std::clamp(dot, -1.0, 1.0);
        return sc.spec.scale_factor * std::acos(dot);
    }
    case ManifoldKind::conformal_fishbowl:
        throw config_error("conformal-fishbowl has no closed-form geodesic");
    }
    throw config_error("unknown manifold kind");
}

} // namespace gmst
