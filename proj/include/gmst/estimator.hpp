#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gmst/errors.hpp"
#include "gmst/geodesics.hpp"
#include "gmst/mst.hpp"
#include "gmst/neighborhood.hpp"
#include "gmst/parallel.hpp"
#include "gmst/point_cloud.hpp"
#include "gmst/rng.hpp"

namespace gmst {

/// Resampling schedule: subset sizes, trials per size, and the size window
/// the regression uses (empty window = all sizes).
struct ResamplingPlan {
    std::vector<std::size_t> sizes;
    std::size_t trials_per_size = 25;
    std::uint64_t seed = 0;
    double gamma = 1.0;
    std::vector<std::size_t> fit_window;
};

inline void validate_plan(const ResamplingPlan& plan, std::size_t n) {
    if (plan.sizes.empty())
        throw config_error("resampling plan needs at least one subset size");
    for (std::size_t i = 0; i < plan.sizes.size(); ++i) {
        if (plan.sizes[i] < 2)
            throw config_error("subset sizes must be >= 2");
        if (plan.sizes[i] > n)
            throw config_error("subset size " + std::to_string(plan.sizes[i]) +
                               " exceeds available points (n = " + std::to_string(n) + ")");
        if (i > 0 && plan.sizes[i] <= plan.sizes[i - 1])
            throw config_error("subset sizes must be strictly increasing");
    }
    if (plan.trials_per_size < 1)
        throw config_error("need at least one trial per size");
    if (plan.gamma <= 0.0)
        throw config_error("gamma must be > 0");
    const auto& window = plan.fit_window.empty() ? plan.sizes : plan.fit_window;
    if (window.size() < 2)
        throw config_error("fit window needs at least two sizes to define a line");
    for (std::size_t w : window)
        if (std::find(plan.sizes.begin(), plan.sizes.end(), w) == plan.sizes.end())
            throw config_error("fit window size " + std::to_string(w) +
                               " is not in the sizes list");
}

/// Convenience: the plan's fit window restricted to the largest `fraction` of
/// the sizes list (at least two sizes).
inline std::vector<std::size_t> top_fraction_window(const std::vector<std::size_t>& sizes,
                                                    double fraction) {
    if (!(fraction > 0.0) || fraction > 1.0)
        throw config_error("fit fraction must be in (0, 1]");
    const std::size_t q = sizes.size();
    std::size_t keep = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(q)));
    keep = std::clamp<std::size_t>(keep, std::min<std::size_t>(2, q), q);
    return {sizes.end() - static_cast<std::ptrdiff_t>(keep), sizes.end()};
}

enum class SizeSpacing { linear, log };

/// count subset sizes from lo to hi inclusive, rounded to integers and
/// deduplicated (so tight ranges may yield fewer than count).
inline std::vector<std::size_t> make_sizes(std::size_t lo, std::size_t hi, std::size_t count,
                                           SizeSpacing spacing = SizeSpacing::linear) {
    if (lo < 2 || hi < lo)
        throw config_error("size range must satisfy 2 <= lo <= hi");
    if (count < 2)
        throw config_error("size range needs at least 2 sizes");
    std::vector<std::size_t> sizes;
    sizes.reserve(count);
    const double flo = static_cast<double>(lo);
    const double fhi = static_cast<double>(hi);
    for (std::size_t i = 0; i < count; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(count - 1);
        double value;
        if (spacing == SizeSpacing::linear)
            value = flo + (fhi - flo) * frac;
        else
            value = std::exp(std::log(flo) + (std::log(fhi) - std::log(flo)) * frac);
        auto rounded = static_cast<std::size_t>(std::llround(value));
        rounded = std::clamp(rounded, lo, hi);
        if (sizes.empty() || rounded > sizes.back())
            sizes.push_back(rounded);
    }
    if (sizes.size() < 2)
        throw config_error("size range collapsed to fewer than 2 distinct sizes");
    return sizes;
}

struct GrowthCurveEntry {
    std::size_t p = 0;
    double mean_length = 0.0;
    double std_length = 0.0; // sample standard deviation over trials
    std::vector<double> trial_lengths;
};

struct GrowthCurve {
    std::vector<GrowthCurveEntry> entries; // sorted by p
    double gamma = 1.0;

    const GrowthCurveEntry& at_size(std::size_t p) const {
        for (const auto& e : entries)
            if (e.p == p)
                return e;
        throw config_error("no growth-curve entry for p = " + std::to_string(p));
    }
};

/// Mean GMST length as a function of subset size. For each size p, N subsets
/// of p distinct indices are drawn without replacement (independently across
/// trials, so points recur between subsets). Trial (p, t) draws from its own
/// substream keyed by (seed, p, t): results are byte-identical no matter how
/// the trials are scheduled.
inline GrowthCurve growth_curve(const GeodesicEdgeMatrix& matrix, const ResamplingPlan& plan,
                                unsigned threads = 1) {
    const std::size_t n = matrix.size();
    validate_plan(plan, n);
    if (!matrix.connected())
        throw disconnected_error(
            "edge matrix spans multiple components; raise k/epsilon or restrict to the "
            "largest component before resampling");

    const std::size_t q = plan.sizes.size();
    const std::size_t trials = plan.trials_per_size;
    std::vector<double> lengths(q * trials);
    parallel_for(q * trials, threads, [&](std::size_t flat) {
        const std::size_t si = flat / trials;
        const std::size_t t = flat % trials;
        const std::size_t p = plan.sizes[si];
        rng::Stream stream(rng::substream_seed(plan.seed, p, t));
        const auto idx = rng::sample_without_replacement(stream, n, p);
        const SubsetDistanceView view{&matrix, idx};
        lengths[flat] = detail::mst_prim(view, plan.gamma).total_length;
    });

    GrowthCurve curve;
    curve.gamma = plan.gamma;
    curve.entries.resize(q);
    for (std::size_t si = 0; si < q; ++si) {
        auto& e = curve.entries[si];
        e.p = plan.sizes[si];
        e.trial_lengths.assign(lengths.begin() + si * trials,
                               lengths.begin() + (si + 1) * trials);
        double sum = 0.0;
        for (double v : e.trial_lengths)
            sum += v;
        e.mean_length = sum / static_cast<double>(trials);
        double ss = 0.0;
        for (double v : e.trial_lengths)
            ss += (v - e.mean_length) * (v - e.mean_length);
        e.std_length = trials > 1 ? std::sqrt(ss / static_cast<double>(trials - 1)) : 0.0;
    }
    return curve;
}

struct LinearFit {
    double a_hat = 0.0; // slope of log(mean length) against log p
    double b_hat = 0.0; // intercept
    std::vector<std::size_t> window;
    std::vector<double> residuals; // per window entry
    double r_squared = 1.0;
};

/// Ordinary least squares of log(mean_length) on log(p) over the given size
/// window (empty = every entry). Closed-form normal equations; two distinct
/// sizes minimum.
inline LinearFit fit_loglinear(const GrowthCurve& curve, std::vector<std::size_t> window = {}) {
    if (window.empty())
        for (const auto& e : curve.entries)
            window.push_back(e.p);
    if (window.size() < 2)
        throw config_error("log-linear fit needs at least two sizes");
    std::vector<double> xs, ys;
    xs.reserve(window.size());
    ys.reserve(window.size());
    for (std::size_t p : window) {
        const auto& e = curve.at_size(p);
        if (!(e.mean_length > 0.0))
            throw input_error("mean length not positive at p = " + std::to_string(p) +
                              "; log model undefined (coincident points?)");
        xs.push_back(std::log(static_cast<double>(p)));
        ys.push_back(std::log(e.mean_length));
    }
    const std::size_t q = xs.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < q; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(q);
    my /= static_cast<double>(q);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < q; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0.0)
        throw config_error("singular fit: all window sizes equal");

    LinearFit fit;
    fit.a_hat = sxy / sxx;
    fit.b_hat = my - fit.a_hat * mx;
    fit.window = std::move(window);
    double ssr = 0.0;
    for (std::size_t i = 0; i < q; ++i) {
        const double r = ys[i] - (fit.a_hat * xs[i] + fit.b_hat);
        fit.residuals.push_back(r);
        ssr += r * r;
    }
    // A constant curve is fit exactly by the flat line; call that R^2 = 1.
    fit.r_squared = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
    return fit;
}

/// Large-m closed form for the spanning-tree constant: log beta = (gamma/2) *
/// log(m / (2*pi*e)). Cheap but visibly low at small m; the Monte Carlo mode
/// exists because of that.
inline double approx_beta(unsigned m, double gamma) {
    if (m < 2)
        throw config_error("beta approximation requires m >= 2");
    if (gamma <= 0.0)
        throw config_error("gamma must be > 0");
    const double two_pi_e = 2.0 * std::numbers::pi * std::numbers::e;
    return std::exp(0.5 * gamma * std::log(static_cast<double>(m) / two_pi_e));
}

enum class BetaMode { approx, montecarlo, table };
enum class LogBase { e, two };
enum class RoundMode { nearest, floor };
enum class DisconnectPolicy { fail, largest_component };

inline const char* to_string(BetaMode m) {
    switch (m) {
    case BetaMode::approx: return "approx";
    case BetaMode::montecarlo: return "montecarlo";
    case BetaMode::table: return "table";
    }
    return "?";
}
inline const char* to_string(LogBase b) { return b == LogBase::e ? "e" : "2"; }
inline const char* to_string(RoundMode r) { return r == RoundMode::nearest ? "nearest" : "floor"; }
inline const char* to_string(DisconnectPolicy p) {
    return p == DisconnectPolicy::fail ? "fail" : "largest";
}

/// Calibration table rows, one per (m, gamma, n) Monte Carlo run.
struct BetaTableRow {
    unsigned m = 0;
    double gamma = 1.0;
    std::size_t n = 0;
    double beta_hat = 0.0;
    double stderr_ = 0.0;
};

struct BetaTable {
    std::vector<BetaTableRow> rows;

    /// Exact m, gamma within 1e-9; prefers the largest-n row.
    std::optional<BetaTableRow> lookup(unsigned m, double gamma) const {
        std::optional<BetaTableRow> best;
        for (const auto& r : rows)
            if (r.m == m && std::abs(r.gamma - gamma) <= 1e-9)
                if (!best || r.n > best->n)
                    best = r;
        return best;
    }

    void upsert(const BetaEstimate& est) {
        for (auto& r : rows)
            if (r.m == est.m && r.gamma == est.gamma && r.n == est.n) {
                r.beta_hat = est.beta_hat;
                r.stderr_ = est.stderr_;
                return;
            }
        rows.push_back({est.m, est.gamma, est.n, est.beta_hat, est.stderr_});
    }
};

inline BetaTable load_beta_table(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open file: " + path);
    BetaTable table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r")
            continue;
        const auto fields = detail::split_fields(line, ',');
        double probe;
        if (lineno == 1 && !fields.empty() && !detail::parse_double(fields[0], probe))
            continue; // header row
        if (fields.size() != 5)
            throw io_error(path + ": expected 5 fields (m,gamma,n,beta_hat,stderr) at line " +
                           std::to_string(lineno));
        double vals[5];
        for (int f = 0; f < 5; ++f)
            if (!detail::parse_double(fields[f], vals[f]))
                throw io_error(path + ": non-numeric field at line " + std::to_string(lineno));
        BetaTableRow row;
        row.m = static_cast<unsigned>(vals[0]);
        row.gamma = vals[1];
        row.n = static_cast<std::size_t>(vals[2]);
        row.beta_hat = vals[3];
        row.stderr_ = vals[4];
        table.rows.push_back(row);
    }
    return table;
}

inline void save_beta_table(const BetaTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw io_error("cannot write file: " + path);
    out << "m,gamma,n,beta_hat,stderr\n";
    for (const auto& r : table.rows)
        out << r.m << ',' << format_double(r.gamma) << ',' << r.n << ','
            << format_double(r.beta_hat) << ',' << format_double(r.stderr_) << '\n';
    if (!out)
        throw io_error("write failed: " + path);
}

// Default Monte Carlo calibration settings. Seed is a constant so that every
// run of the same build sees the same table.
inline constexpr std::size_t kBetaCalibrationN = 2048;
inline constexpr std::size_t kBetaCalibrationTrials = 32;
inline constexpr std::uint64_t kBetaCalibrationSeed = 0xB57AC0DE5EEDull;

/// Process-wide memo so repeated reports do not redo the same simulation.
inline BetaEstimate cached_estimate_beta(unsigned m, double gamma, std::size_t n,
                                         std::size_t trials, std::uint64_t seed,
                                         unsigned threads = 1) {
    using Key = std::tuple<unsigned, double, std::size_t, std::size_t, std::uint64_t>;
    static std::map<Key, BetaEstimate> cache;
    static std::mutex mutex;
    const Key key{m, gamma, n, trials, seed};
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end())
            return it->second;
    }
    BetaEstimate est = estimate_beta(m, gamma, n, trials, seed, threads);
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(key, est);
    return est;
}

struct EstimateOptions {
    double gamma = 1.0;
    BetaMode beta_mode = BetaMode::montecarlo;
    LogBase log_base = LogBase::e;
    RoundMode round_mode = RoundMode::nearest;
    const BetaTable* beta_table = nullptr; // required for BetaMode::table
    std::size_t beta_n = kBetaCalibrationN;
    std::size_t beta_trials = kBetaCalibrationTrials;
    std::uint64_t beta_seed = kBetaCalibrationSeed;
    unsigned threads = 1;
};

struct EstimateReport {
    std::size_t m_hat = 0;
    double alpha = 0.0;       // (m_hat - gamma) / m_hat
    double entropy_hat = 0.0; // in log_base units
    double gamma = 1.0;
    LogBase log_base = LogBase::e;
    BetaMode beta_mode = BetaMode::montecarlo;
    double beta_value_used = 0.0;
    double log_beta_nats = 0.0;
    LinearFit fit;
    GrowthCurve curve;
    std::vector<std::string> warnings;
    std::vector<std::pair<std::string, std::string>> config; // echo, insertion order
};

/// Method-of-moments inversion of the fitted line: the slope pins the
/// dimension through a = (m - gamma)/m, the intercept then pins the entropy
/// through b = log beta_m + (gamma/m) H.
inline EstimateReport estimate(const GrowthCurve& curve, const LinearFit& fit,
                               const EstimateOptions& options = {}) {
    const double a = fit.a_hat;
    const double gamma = options.gamma;
    if (gamma <= 0.0)
        throw config_error("gamma must be > 0");
    if (a >= 1.0)
        throw slope_error("fitted slope " + format_double(a) +
                          " >= 1: implied dimension diverges (curve grew super-linearly; "
                          "more data or a wider fit window needed)");
    if (a <= 0.0)
        throw slope_error("fitted slope " + format_double(a) +
                          " <= 0: length curve is not growing, no dimension information");

    EstimateReport report;
    report.gamma = gamma;
    report.log_base = options.log_base;
    report.beta_mode = options.beta_mode;
    report.fit = fit;
    report.curve = curve;

    const double raw = gamma / (1.0 - a);
    double rounded = options.round_mode == RoundMode::nearest ? std::floor(raw + 0.5)
                                                              : std::floor(raw);
    if (rounded < 2.0) {
        report.warnings.push_back("dimension estimate " + format_double(raw) +
                                  " clamped to the minimum 2");
        rounded = 2.0;
    }
    const auto m_hat = static_cast<std::size_t>(rounded);
    report.m_hat = m_hat;
    if (gamma >= static_cast<double>(m_hat))
        throw slope_error("estimated dimension " + std::to_string(m_hat) +
                          " does not exceed gamma = " + format_double(gamma) +
                          "; entropy order alpha degenerates");
    report.alpha = (static_cast<double>(m_hat) - gamma) / static_cast<double>(m_hat);

    double beta = 0.0;
    switch (options.beta_mode) {
    case BetaMode::approx:
        beta = approx_beta(static_cast<unsigned>(m_hat), gamma);
        break;
    case BetaMode::montecarlo: {
        // A preloaded table row with the same calibration size short-circuits
        // the simulation; callers use that to cache runs across processes.
        const BetaTableRow* cached = nullptr;
        if (options.beta_table != nullptr)
            for (const auto& r : options.beta_table->rows)
                if (r.m == m_hat && std::abs(r.gamma - gamma) <= 1e-9 && r.n == options.beta_n)
                    cached = &r;
        if (cached != nullptr) {
            beta = cached->beta_hat;
        } else {
            const auto est = cached_estimate_beta(static_cast<unsigned>(m_hat), gamma,
                                                  options.beta_n, options.beta_trials,
                                                  options.beta_seed, options.threads);
            beta = est.beta_hat;
        }
        break;
    }
    case BetaMode::table: {
        if (options.beta_table == nullptr)
            throw config_error("beta mode 'table' needs a loaded table");
        const auto row = options.beta_table->lookup(static_cast<unsigned>(m_hat), gamma);
        if (!row)
            throw config_error("beta table has no row for m = " + std::to_string(m_hat) +
                               ", gamma = " + format_double(gamma));
        beta = row->beta_hat;
        break;
    }
    }
    report.beta_value_used = beta;
    report.log_beta_nats = std::log(beta);

    const double entropy_nats = (static_cast<double>(m_hat) / gamma) *
                                (fit.b_hat - report.log_beta_nats);
    report.entropy_hat = options.log_base == LogBase::two ? entropy_nats / std::numbers::ln2
                                                          : entropy_nats;
    return report;
}

namespace detail {

inline std::string join_sizes(const std::vector<std::size_t>& sizes) {
    std::string out;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(sizes[i]);
    }
    return out;
}

inline std::string describe_rule(const NeighborRule& rule) {
    if (const auto* eps = std::get_if<EpsilonRule>(&rule))
        return "epsilon=" + format_double(eps->radius);
    return "k=" + std::to_string(std::get<KnnRule>(rule).k);
}

/// Growth curve that rebuilds the neighborhood graph and geodesics inside
/// every subset instead of restricting the full-cloud matrix. Exists for
/// comparison; small subsets disconnect easily and then this fails fast.
inline GrowthCurve growth_curve_per_subset(const PointCloud& cloud, const NeighborRule& rule,
                                           bool conformal, const ResamplingPlan& plan,
                                           unsigned threads = 1) {
    const std::size_t n = cloud.size();
    validate_plan(plan, n);
    const std::size_t q = plan.sizes.size();
    const std::size_t trials = plan.trials_per_size;
    std::vector<double> lengths(q * trials);
    std::vector<std::string> failures(q * trials);
    parallel_for(q * trials, threads, [&](std::size_t flat) {
        const std::size_t si = flat / trials;
        const std::size_t t = flat % trials;
        const std::size_t p = plan.sizes[si];
        rng::Stream stream(rng::substream_seed(plan.seed, p, t));
        const auto idx = rng::sample_without_replacement(stream, n, p);
        try {
            const PointCloud sub = cloud.subset(idx);
            NeighborhoodGraph g = build_graph(sub, rule);
            if (conformal)
                g = rescale_conformal(g);
            const auto matrix = all_pairs_geodesics(g);
            if (!matrix.connected())
                throw disconnected_error(
                    "subset graph disconnected at p = " + std::to_string(p) + ", trial " +
                    std::to_string(t) + " (per-subset graphs fragment at small sizes; "
                    "use the full-matrix mode or raise k/epsilon)");
            lengths[flat] = mst_prim(matrix, plan.gamma).total_length;
        } catch (const std::exception& ex) {
            failures[flat] = ex.what();
        }
    });
    for (std::size_t flat = 0; flat < q * trials; ++flat)
        if (!failures[flat].empty())
            throw disconnected_error(failures[flat]);

    GrowthCurve curve;
    curve.gamma = plan.gamma;
    curve.entries.resize(q);
    for (std::size_t si = 0; si < q; ++si) {
        auto& e = curve.entries[si];
        e.p = plan.sizes[si];
        e.trial_lengths.assign(lengths.begin() + si * trials,
                               lengths.begin() + (si + 1) * trials);
        double sum = 0.0;
        for (double v : e.trial_lengths)
            sum += v;
        e.mean_length = sum / static_cast<double>(trials);
        double ss = 0.0;
        for (double v : e.trial_lengths)
            ss += (v - e.mean_length) * (v - e.mean_length);
        e.std_length = trials > 1 ? std::sqrt(ss / static_cast<double>(trials - 1)) : 0.0;
    }
    return curve;
}

} // namespace detail

struct PipelineOptions {
    bool conformal = false;
    DisconnectPolicy disconnect = DisconnectPolicy::fail;
    bool per_subset_graph = false;
    unsigned threads = 1;
};

/// Full estimator: neighborhood graph, optional conformal rescale, geodesic
/// matrix, resampled growth curve, log-log fit, moment inversion. The report
/// echoes every effective setting so a result can be re-derived from it.
inline EstimateReport run_pipeline(const PointCloud& cloud, const NeighborRule& rule,
                                   const ResamplingPlan& plan,
                                   const EstimateOptions& est_options = {},
                                   const PipelineOptions& pipe_options = {}) {
    std::vector<std::string> warnings;
    GrowthCurve curve;

    if (pipe_options.per_subset_graph) {
        curve = detail::growth_curve_per_subset(cloud, rule, pipe_options.conformal, plan,
                                                pipe_options.threads);
    } else {
        NeighborhoodGraph graph = build_graph(cloud, rule, pipe_options.threads);
        if (graph.zero_weight_edges > 0)
            warnings.push_back(std::to_string(graph.zero_weight_edges) +
                               " zero-length edges (duplicate points) in the graph");
        if (pipe_options.conformal)
            graph = rescale_conformal(graph);
        GeodesicEdgeMatrix matrix = all_pairs_geodesics(graph, pipe_options.threads);
        ResamplingPlan effective_plan = plan;
        if (!matrix.connected()) {
            if (pipe_options.disconnect == DisconnectPolicy::fail)
                throw disconnected_error(
                    "neighborhood graph is disconnected; raise k/epsilon or rerun with the "
                    "largest-component policy");
            const auto members = matrix.component_members(
                static_cast<std::uint32_t>(matrix.largest_component()));
            if (members.size() < 2)
                throw disconnected_error("largest component has fewer than 2 vertices");
            const double fraction = static_cast<double>(members.size()) /
                                    static_cast<double>(cloud.size());
            warnings.push_back("graph disconnected: kept largest component, " +
                               std::to_string(members.size()) + " of " +
                               std::to_string(cloud.size()) + " points (" +
                               format_double(fraction) + " of the sample)");
            matrix = restrict_to(matrix, members);
        }
        curve = growth_curve(matrix, effective_plan, pipe_options.threads);
    }

    const auto window = plan.fit_window.empty() ? std::vector<std::size_t>{} : plan.fit_window;
    const LinearFit fit = fit_loglinear(curve, window);

    EstimateOptions eo = est_options;
    eo.gamma = plan.gamma;
    EstimateReport report = estimate(curve, fit, eo);
    report.warnings.insert(report.warnings.begin(), warnings.begin(), warnings.end());
    if (cloud.size() < 100)
        report.warnings.push_back("sample of " + std::to_string(cloud.size()) +
                                  " points is small for an asymptotic length model; "
                                  "estimates are indicative only");
    if (pipe_options.conformal)
        report.warnings.push_back(
            "conformal rescaling active: entropy is reported up to an additive constant");

    report.config.emplace_back("n", std::to_string(cloud.size()));
    report.config.emplace_back("ambient_dim", std::to_string(cloud.ambient_dim()));
    report.config.emplace_back("rule", detail::describe_rule(rule));
    report.config.emplace_back("conformal", pipe_options.conformal ? "true" : "false");
    report.config.emplace_back("gamma", format_double(plan.gamma));
    report.config.emplace_back("sizes", detail::join_sizes(plan.sizes));
    report.config.emplace_back("trials_per_size", std::to_string(plan.trials_per_size));
    report.config.emplace_back("seed", std::to_string(plan.seed));
    report.config.emplace_back("fit_window", detail::join_sizes(fit.window));
    report.config.emplace_back("beta_mode", to_string(est_options.beta_mode));
    if (est_options.beta_mode == BetaMode::montecarlo) {
        report.config.emplace_back("beta_n", std::to_string(est_options.beta_n));
        report.config.emplace_back("beta_trials", std::to_string(est_options.beta_trials));
        report.config.emplace_back("beta_seed", std::to_string(est_options.beta_seed));
    }
    report.config.emplace_back("log_base", to_string(est_options.log_base));
    report.config.emplace_back("round_mode", to_string(est_options.round_mode));
    report.config.emplace_back("disconnect", to_string(pipe_options.disconnect));
    report.config.emplace_back("per_subset_graph",
                               pipe_options.per_subset_graph ? "true" : "false");
    return report;
}

} // namespace gmst
