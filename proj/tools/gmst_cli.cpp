// Command-line front end: generate synthetic clouds, estimate intrinsic
// dimension and entropy, calibrate spanning-tree constants, dump graph
// diagnostics. Exit codes: 0 ok, 1 usage, 2 I/O, 3 disconnected graph,
// 4 ill-posed slope, 5 internal.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gmst/gmst.hpp"

namespace {

using nlohmann::ordered_json;

struct InputOpts {
    std::string input_path;
    std::string gen_kind;
    std::size_t m = 2;
    std::size_t d = 0; // 0 = kind default
    std::size_t n = 1000;
    std::uint64_t gen_seed = 0;
    double scale = 1.0;
    std::string delimiter = ",";
};

void add_input_options(CLI::App* cmd, InputOpts& in, bool generator_flag) {
    cmd->add_option("--input", in.input_path, "CSV file, one point per row");
    if (generator_flag)
        cmd->add_option("--generate", in.gen_kind,
                        "synthetic manifold kind: hyperplane|hypercube|swiss-roll|sphere|"
                        "conformal-fishbowl");
    cmd->add_option("--m", in.m, "intrinsic dimension for the generator (default 2)");
    cmd->add_option("--d", in.d, "ambient dimension for the generator (default per kind)");
    cmd->add_option("--n", in.n, "sample count for the generator (default 1000)");
    cmd->add_option("--gen-seed", in.gen_seed, "generator seed (default 0)");
    cmd->add_option("--scale", in.scale, "generator coordinate scale factor (default 1)");
    cmd->add_option("--delimiter", in.delimiter, "CSV field delimiter (default ,)");
}

gmst::SyntheticSpec make_spec(const InputOpts& in) {
    gmst::SyntheticSpec spec;
    spec.kind = gmst::manifold_kind_from_string(in.gen_kind);
    spec.intrinsic_dim = in.m;
    spec.n = in.n;
    spec.seed = in.gen_seed;
    spec.scale_factor = in.scale;
    if (in.d != 0) {
        spec.ambient_dim = in.d;
    } else {
        switch (spec.kind) {
        case gmst::ManifoldKind::hypercube: spec.ambient_dim = in.m; break;
        case gmst::ManifoldKind::hyperplane: spec.ambient_dim = in.m + 1; break;
        case gmst::ManifoldKind::sphere: spec.ambient_dim = in.m + 1; break;
        case gmst::ManifoldKind::swiss_roll:
        case gmst::ManifoldKind::conformal_fishbowl: spec.ambient_dim = 3; break;
        }
    }
    return spec;
}

char resolve_delimiter(const std::string& s) {
    if (s.size() != 1)
        throw gmst::config_error("--delimiter must be a single character");
    return s[0];
}

/// Loads or generates the cloud and records where it came from.
gmst::PointCloud resolve_input(const InputOpts& in,
                               std::vector<std::pair<std::string, std::string>>& echo) {
    const bool has_file = !in.input_path.empty();
    const bool has_gen = !in.gen_kind.empty();
    if (has_file == has_gen)
        throw gmst::config_error("pass exactly one of --input or --generate");
    if (has_file) {
        echo.emplace_back("input", in.input_path);
        return gmst::load_csv(in.input_path, resolve_delimiter(in.delimiter));
    }
    const auto spec = make_spec(in);
    auto sc = gmst::generate(spec);
    echo.emplace_back("generator", in.gen_kind);
    echo.emplace_back("generator_m", std::to_string(spec.intrinsic_dim));
    echo.emplace_back("generator_d", std::to_string(spec.ambient_dim));
    echo.emplace_back("generator_n", std::to_string(spec.n));
    echo.emplace_back("generator_seed", std::to_string(spec.seed));
    echo.emplace_back("generator_scale", gmst::format_double(spec.scale_factor));
    if (sc.ground_truth_entropy_nats)
        echo.emplace_back("generator_entropy_nats",
                          gmst::format_double(*sc.ground_truth_entropy_nats));
    return std::move(sc.cloud);
}

struct RuleOpts {
    std::int64_t k = -1;
    double epsilon = 0.0;
    bool epsilon_set = false;
};

void add_rule_options(CLI::App* cmd, RuleOpts& r) {
    cmd->add_option("--k", r.k, "k-nearest-neighbor rule (default k=7 when neither given)");
    cmd->add_option("--epsilon", r.epsilon, "fixed-radius rule")
        ->each([&r](const std::string&) { r.epsilon_set = true; });
}

gmst::NeighborRule resolve_rule(const RuleOpts& r) {
    if (r.k >= 0 && r.epsilon_set)
        throw gmst::config_error("--k and --epsilon are mutually exclusive");
    if (r.epsilon_set)
        return gmst::EpsilonRule{r.epsilon};
    if (r.k >= 0) {
        if (r.k < 1)
            throw gmst::config_error("--k must be >= 1");
        return gmst::KnnRule{static_cast<std::size_t>(r.k)};
    }
    return gmst::KnnRule{7};
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
    std::vector<std::size_t> sizes;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t pos = text.find(',', start);
        const std::string tok = text.substr(start, pos == std::string::npos ? pos : pos - start);
        if (tok.empty())
            throw gmst::config_error("empty size in --sizes list");
        try {
            sizes.push_back(static_cast<std::size_t>(std::stoull(tok)));
        } catch (const std::exception&) {
            throw gmst::config_error("bad size value '" + tok + "'");
        }
        if (pos == std::string::npos)
            break;
        start = pos + 1;
    }
    return sizes;
}

std::vector<std::size_t> parse_size_range(const std::string& text, gmst::SizeSpacing spacing) {
    const std::size_t c1 = text.find(':');
    const std::size_t c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw gmst::config_error("size range must be min:max:count, got '" + text + "'");
    try {
        const auto lo = static_cast<std::size_t>(std::stoull(text.substr(0, c1)));
        const auto hi = static_cast<std::size_t>(std::stoull(text.substr(c1 + 1, c2 - c1 - 1)));
        const auto count = static_cast<std::size_t>(std::stoull(text.substr(c2 + 1)));
        return gmst::make_sizes(lo, hi, count, spacing);
    } catch (const gmst::config_error&) {
        throw;
    } catch (const std::exception&) {
        throw gmst::config_error("bad size range '" + text + "'");
    }
}

/// --sizes takes either an explicit comma list or a min:max:count range.
std::vector<std::size_t> resolve_sizes(const std::string& sizes_arg,
                                       const std::string& range_arg,
                                       const std::string& spacing_arg) {
    gmst::SizeSpacing spacing;
    if (spacing_arg == "linear")
        spacing = gmst::SizeSpacing::linear;
    else if (spacing_arg == "log")
        spacing = gmst::SizeSpacing::log;
    else
        throw gmst::config_error("--size-spacing must be linear or log");
    if (!sizes_arg.empty() && !range_arg.empty())
        throw gmst::config_error("--sizes and --size-range are mutually exclusive");
    if (sizes_arg.empty() && range_arg.empty())
        throw gmst::config_error("subset sizes required: --sizes p1,p2,... or "
                                 "--size-range min:max:count");
    if (!range_arg.empty())
        return parse_size_range(range_arg, spacing);
    if (sizes_arg.find(':') != std::string::npos)
        return parse_size_range(sizes_arg, spacing);
    return parse_size_list(sizes_arg);
}

ordered_json report_to_json(const gmst::EstimateReport& report) {
    ordered_json j;
    j["m_hat"] = report.m_hat;
    j["alpha"] = report.alpha;
    j["entropy"] = report.entropy_hat;
    j["entropy_units"] = report.log_base == gmst::LogBase::two ? "bits" : "nats";
    j["gamma"] = report.gamma;
    j["beta"] = {{"mode", gmst::to_string(report.beta_mode)},
                 {"value", report.beta_value_used},
                 {"log_beta_nats", report.log_beta_nats}};
    ordered_json fit;
    fit["a_hat"] = report.fit.a_hat;
    fit["b_hat"] = report.fit.b_hat;
    fit["r_squared"] = report.fit.r_squared;
    fit["window"] = report.fit.window;
    fit["residuals"] = report.fit.residuals;
    j["fit"] = std::move(fit);
    ordered_json curve = ordered_json::array();
    for (const auto& e : report.curve.entries) {
        ordered_json entry;
        entry["p"] = e.p;
        entry["mean"] = e.mean_length;
        entry["std"] = e.std_length;
        entry["trials"] = e.trial_lengths;
        curve.push_back(std::move(entry));
    }
    j["curve"] = std::move(curve);
    ordered_json config;
    for (const auto& [k, v] : report.config)
        config[k] = v;
    j["config"] = std::move(config);
    j["warnings"] = report.warnings;
    return j;
}

void write_text_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw gmst::io_error("cannot write file: " + path);
    out << text;
    if (!out)
        throw gmst::io_error("write failed: " + path);
}

int cmd_generate(const InputOpts& in, const std::string& out_path,
                 const std::string& params_path) {
    if (in.gen_kind.empty())
        throw gmst::config_error("--kind is required");
    if (!in.input_path.empty())
        throw gmst::config_error("generate does not take --input");
    const auto spec = make_spec(in);
    const auto sc = gmst::generate(spec);
    gmst::save_csv(sc.cloud, out_path, resolve_delimiter(in.delimiter));
    if (!params_path.empty()) {
        const gmst::PointCloud params(std::vector<double>(sc.params), sc.cloud.size(),
                                      sc.param_dim);
        gmst::save_csv(params, params_path, resolve_delimiter(in.delimiter));
    }
    std::cout << "wrote " << sc.cloud.size() << " points (d=" << sc.cloud.ambient_dim()
              << ") to " << out_path;
    if (sc.ground_truth_entropy_nats)
        std::cout << "; ground-truth entropy " << gmst::format_double(*sc.ground_truth_entropy_nats)
                  << " nats";
    std::cout << "\n";
    return 0;
}

struct EstimateOpts {
    InputOpts in;
    RuleOpts rule;
    bool conformal = false;
    double gamma = 1.0;
    std::string sizes_arg;
    std::string range_arg;
    std::string spacing_arg = "linear";
    std::size_t trials = 25;
    double fit_top_fraction = 0.5;
    std::string beta_mode_arg = "montecarlo";
    std::string beta_table_path;
    std::size_t beta_n = gmst::kBetaCalibrationN;
    std::size_t beta_trials = gmst::kBetaCalibrationTrials;
    std::uint64_t seed = 0;
    std::string log_base_arg = "e";
    std::string disconnect_arg = "fail";
    std::string round_arg = "nearest";
    bool per_subset_graph = false;
    unsigned threads = 1;
    std::string out_path;
    std::string dump_curve_path;
    std::string dump_summary_path;
    bool json = false;
};

int cmd_estimate(const EstimateOpts& opt) {
    std::vector<std::pair<std::string, std::string>> echo;
    echo.emplace_back("command", "estimate");
    const gmst::PointCloud cloud = resolve_input(opt.in, echo);
    const gmst::NeighborRule rule = resolve_rule(opt.rule);

    gmst::ResamplingPlan plan;
    plan.sizes = resolve_sizes(opt.sizes_arg, opt.range_arg, opt.spacing_arg);
    plan.trials_per_size = opt.trials;
    plan.seed = opt.seed;
    plan.gamma = opt.gamma;
    plan.fit_window = gmst::top_fraction_window(plan.sizes, opt.fit_top_fraction);

    gmst::EstimateOptions eo;
    eo.gamma = opt.gamma;
    if (opt.beta_mode_arg == "approx")
        eo.beta_mode = gmst::BetaMode::approx;
    else if (opt.beta_mode_arg == "montecarlo")
        eo.beta_mode = gmst::BetaMode::montecarlo;
    else if (opt.beta_mode_arg == "table")
        eo.beta_mode = gmst::BetaMode::table;
    else
        throw gmst::config_error("--beta-mode must be approx, montecarlo, or table");
    if (opt.log_base_arg == "e")
        eo.log_base = gmst::LogBase::e;
    else if (opt.log_base_arg == "2")
        eo.log_base = gmst::LogBase::two;
    else
        throw gmst::config_error("--log-base must be e or 2");
    if (opt.round_arg == "nearest")
        eo.round_mode = gmst::RoundMode::nearest;
    else if (opt.round_arg == "floor")
        eo.round_mode = gmst::RoundMode::floor;
    else
        throw gmst::config_error("--round-mode must be nearest or floor");
    eo.beta_n = opt.beta_n;
    eo.beta_trials = opt.beta_trials;
    eo.threads = opt.threads;

    gmst::BetaTable table;
    const bool have_table_file =
        !opt.beta_table_path.empty() && std::filesystem::exists(opt.beta_table_path);
    if (have_table_file)
        table = gmst::load_beta_table(opt.beta_table_path);
    if (eo.beta_mode == gmst::BetaMode::table && opt.beta_table_path.empty())
        throw gmst::config_error("--beta-mode table requires --beta-table PATH");
    if (eo.beta_mode == gmst::BetaMode::table && !have_table_file)
        throw gmst::io_error("beta table not found: " + opt.beta_table_path);
    if (!opt.beta_table_path.empty())
        eo.beta_table = &table;

    gmst::PipelineOptions po;
    po.conformal = opt.conformal;
    if (opt.disconnect_arg == "fail")
        po.disconnect = gmst::DisconnectPolicy::fail;
    else if (opt.disconnect_arg == "largest")
        po.disconnect = gmst::DisconnectPolicy::largest_component;
    else
        throw gmst::config_error("--disconnect must be fail or largest");
    po.per_subset_graph = opt.per_subset_graph;
    po.threads = opt.threads;

    gmst::EstimateReport report = gmst::run_pipeline(cloud, rule, plan, eo, po);
    report.config.insert(report.config.begin(), echo.begin(), echo.end());

    // Cache a fresh Monte Carlo calibration back into the table file.
    if (eo.beta_mode == gmst::BetaMode::montecarlo && !opt.beta_table_path.empty() &&
        !table.lookup(static_cast<unsigned>(report.m_hat), opt.gamma)) {
        const auto est = gmst::cached_estimate_beta(static_cast<unsigned>(report.m_hat),
                                                    opt.gamma, eo.beta_n, eo.beta_trials,
                                                    eo.beta_seed, opt.threads);
        table.upsert(est);
        gmst::save_beta_table(table, opt.beta_table_path);
    }

    if (opt.json)
        write_text_output(report_to_json(report).dump(2) + "\n", opt.out_path);
    else
        write_text_output(gmst::serialize_report(report), opt.out_path);
    if (!opt.dump_curve_path.empty())
        gmst::write_growth_curve_trials(report.curve, opt.dump_curve_path);
    if (!opt.dump_summary_path.empty())
        gmst::write_growth_curve_summary(report.curve, opt.dump_summary_path);
    return 0;
}

struct BetaOpts {
    unsigned m = 2;
    double gamma = 1.0;
    std::size_t n = gmst::kBetaCalibrationN;
    std::size_t trials = gmst::kBetaCalibrationTrials;
    std::uint64_t seed = gmst::kBetaCalibrationSeed;
    unsigned threads = 1;
    std::string out_path;
};

int cmd_beta(const BetaOpts& opt) {
    const auto est = gmst::estimate_beta(opt.m, opt.gamma, opt.n, opt.trials, opt.seed,
                                         opt.threads);
    if (!opt.out_path.empty()) {
        gmst::BetaTable table;
        if (std::filesystem::exists(opt.out_path))
            table = gmst::load_beta_table(opt.out_path);
        table.upsert(est);
        gmst::save_beta_table(table, opt.out_path);
    }
    std::cout << "m=" << est.m << " gamma=" << gmst::format_double(est.gamma)
              << " n=" << est.n << " beta_hat=" << gmst::format_double(est.beta_hat)
              << " stderr=" << gmst::format_double(est.stderr_) << "\n";
    return 0;
}

struct GraphDumpOpts {
    InputOpts in;
    RuleOpts rule;
    bool conformal = false;
    unsigned threads = 1;
    std::string out_path;
    std::string matrix_path;
};

int cmd_graph_dump(const GraphDumpOpts& opt) {
    std::vector<std::pair<std::string, std::string>> echo;
    const gmst::PointCloud cloud = resolve_input(opt.in, echo);
    const gmst::NeighborRule rule = resolve_rule(opt.rule);
    gmst::NeighborhoodGraph graph = gmst::build_graph(cloud, rule, opt.threads);
    if (opt.conformal)
        graph = gmst::rescale_conformal(graph);
    if (opt.out_path.empty()) {
        std::cout << "i,j,weight\n";
        for (const auto& e : graph.edges)
            std::cout << e.i << ',' << e.j << ',' << gmst::format_double(e.weight) << '\n';
    } else {
        gmst::dump_edges_csv(graph, opt.out_path);
    }
    if (!opt.matrix_path.empty()) {
        const auto matrix = gmst::all_pairs_geodesics(graph, opt.threads);
        gmst::dump_matrix_csv(matrix, opt.matrix_path);
        if (!matrix.connected())
            std::cerr << "note: graph is disconnected; matrix holds inf for cross-component "
                         "pairs\n";
    }
    return 0;
}

int exit_code_for(const std::exception& ex) {
    if (dynamic_cast<const gmst::config_error*>(&ex) != nullptr)
        return 1;
    if (dynamic_cast<const gmst::input_error*>(&ex) != nullptr)
        return 1;
    if (dynamic_cast<const gmst::io_error*>(&ex) != nullptr)
        return 2;
    if (dynamic_cast<const gmst::disconnected_error*>(&ex) != nullptr)
        return 3;
    if (dynamic_cast<const gmst::slope_error*>(&ex) != nullptr)
        return 4;
    return 5;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Intrinsic dimension and entropy estimation from geodesic "
                 "minimal-spanning-tree growth rates"};
    app.require_subcommand(1);

    InputOpts gen_in;
    std::string gen_out, gen_params_out;
    auto* gen = app.add_subcommand("generate", "sample a synthetic manifold to CSV");
    gen->add_option("--kind", gen_in.gen_kind,
                    "hyperplane|hypercube|swiss-roll|sphere|conformal-fishbowl")
        ->required();
    gen->add_option("--m", gen_in.m, "intrinsic dimension (default 2)");
    gen->add_option("--d", gen_in.d, "ambient dimension (default per kind)");
    gen->add_option("--n", gen_in.n, "sample count")->required();
    gen->add_option("--seed", gen_in.gen_seed, "generator seed (default 0)");
    gen->add_option("--scale", gen_in.scale, "coordinate scale factor (default 1)");
    gen->add_option("--delimiter", gen_in.delimiter, "CSV delimiter (default ,)");
    gen->add_option("--out", gen_out, "output CSV path")->required();
    gen->add_option("--params-out", gen_params_out, "also write latent parameters CSV");

    EstimateOpts est;
    auto* estc = app.add_subcommand("estimate", "estimate intrinsic dimension and entropy");
    add_input_options(estc, est.in, true);
    add_rule_options(estc, est.rule);
    estc->add_flag("--conformal", est.conformal, "rescale edges by local mean neighbor "
                                                 "distance before shortest paths");
    estc->add_option("--gamma", est.gamma, "edge length exponent (default 1)");
    estc->add_option("--sizes", est.sizes_arg, "subset sizes: p1,p2,... or min:max:count");
    estc->add_option("--size-range", est.range_arg, "subset sizes as min:max:count");
    estc->add_option("--size-spacing", est.spacing_arg, "range spacing: linear|log "
                                                        "(default linear)");
    estc->add_option("--trials", est.trials, "resampling trials per size (default 25)");
    estc->add_option("--fit-top-fraction", est.fit_top_fraction,
                     "fraction of largest sizes used in the fit (default 0.5)");
    estc->add_option("--beta-mode", est.beta_mode_arg,
                     "approx|montecarlo|table (default montecarlo)");
    estc->add_option("--beta-table", est.beta_table_path,
                     "calibration table CSV (cache for montecarlo, source for table mode)");
    estc->add_option("--beta-n", est.beta_n, "Monte Carlo calibration sample size");
    estc->add_option("--beta-trials", est.beta_trials, "Monte Carlo calibration trials");
    estc->add_option("--seed", est.seed, "resampling seed (default 0)");
    estc->add_option("--log-base", est.log_base_arg, "entropy units: e (nats) | 2 (bits)");
    estc->add_option("--disconnect", est.disconnect_arg,
                     "disconnected-graph policy: fail|largest (default fail)");
    estc->add_option("--round-mode", est.round_arg,
                     "dimension rounding: nearest|floor (default nearest)");
    estc->add_flag("--per-subset-graph", est.per_subset_graph,
                   "rebuild graph and geodesics inside each subset (comparison mode)");
    estc->add_option("--threads", est.threads, "worker threads, 0 = all cores (default 1)");
    estc->add_option("--out", est.out_path, "report path (default stdout)");
    estc->add_option("--dump-curve", est.dump_curve_path, "write per-trial lengths CSV");
    estc->add_option("--dump-curve-summary", est.dump_summary_path,
                     "write per-size mean/std CSV");
    estc->add_flag("--json", est.json, "emit the report as JSON");

    BetaOpts beta;
    auto* betac = app.add_subcommand("beta", "Monte Carlo spanning-tree constant");
    betac->add_option("--m", beta.m, "dimension")->required();
    betac->add_option("--gamma", beta.gamma, "edge exponent (default 1)");
    betac->add_option("--n", beta.n, "points per trial (default 2048)");
    betac->add_option("--trials", beta.trials, "trial count (default 32)");
    betac->add_option("--seed", beta.seed, "simulation seed");
    betac->add_option("--threads", beta.threads, "worker threads (default 1)");
    betac->add_option("--out", beta.out_path, "upsert result into this table CSV");

    GraphDumpOpts gd;
    auto* gdc = app.add_subcommand("graph-dump", "dump the neighborhood graph / geodesics");
    add_input_options(gdc, gd.in, true);
    add_rule_options(gdc, gd.rule);
    gdc->add_flag("--conformal", gd.conformal, "apply conformal rescaling first");
    gdc->add_option("--threads", gd.threads, "worker threads (default 1)");
    gdc->add_option("--out", gd.out_path, "edge list CSV (default stdout)");
    gdc->add_option("--matrix-out", gd.matrix_path, "also write the geodesic matrix CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (gen->parsed())
            return cmd_generate(gen_in, gen_out, gen_params_out);
        if (estc->parsed())
            return cmd_estimate(est);
        if (betac->parsed())
            return cmd_beta(beta);
        if (gdc->parsed())
            return cmd_graph_dump(gd);
        return 1;
    } catch (const std::exception& ex) {
        const int code = exit_code_for(ex);
        std::cerr << "error: " << ex.what() << "\n";
        return code;
    }
}
