#pragma once

#include <fstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gmst/errors.hpp"
#include "gmst/estimator.hpp"
#include "gmst/point_cloud.hpp"

namespace gmst {

/// Key-value text form of a report. Line order is fixed, values use exact
/// round-trip formatting, so identical runs serialize byte-identically.
inline std::string serialize_report(const EstimateReport& report) {
    std::string out;
    auto line = [&out](std::string_view key, const std::string& value) {
        out += key;
        out += ": ";
        out += value;
        out += '\n';
    };
    line("format", "gmst-report 1");
    line("m_hat", std::to_string(report.m_hat));
    line("alpha", format_double(report.alpha));
    line("entropy", format_double(report.entropy_hat));
    line("entropy_units", report.log_base == LogBase::two ? "bits" : "nats");
    line("gamma", format_double(report.gamma));
    line("beta_mode", to_string(report.beta_mode));
    line("beta_value", format_double(report.beta_value_used));
    line("log_beta_nats", format_double(report.log_beta_nats));
    line("a_hat", format_double(report.fit.a_hat));
    line("b_hat", format_double(report.fit.b_hat));
    line("r_squared", format_double(report.fit.r_squared));
    line("fit_window", detail::join_sizes(report.fit.window));
    {
        std::string residuals;
        for (std::size_t i = 0; i < report.fit.residuals.size(); ++i) {
            if (i)
                residuals += ',';
            residuals += format_double(report.fit.residuals[i]);
        }
        line("fit_residuals", residuals);
    }
    for (const auto& e : report.curve.entries)
        line("curve_" + std::to_string(e.p),
             format_double(e.mean_length) + "," + format_double(e.std_length) + "," +
                 std::to_string(e.trial_lengths.size()));
    for (const auto& [key, value] : report.config)
        line("config_" + key, value);
    for (const auto& w : report.warnings)
        line("warning", w);
    return out;
}

inline void write_report(const EstimateReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw io_error("cannot write file: " + path);
    out << serialize_report(report);
    if (!out)
        throw io_error("write failed: " + path);
}

/// Reads "key: value" lines back; repeated keys (warnings) all appear.
inline std::vector<std::pair<std::string, std::string>> parse_report_kv(std::string_view text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        const std::string_view lineview = text.substr(start, end - start);
        start = end + 1;
        if (lineview.empty())
            continue;
        const std::size_t sep = lineview.find(": ");
        if (sep == std::string_view::npos)
            continue;
        out.emplace_back(std::string(lineview.substr(0, sep)),
                         std::string(lineview.substr(sep + 2)));
    }
    return out;
}

inline std::string growth_curve_trials_csv(const GrowthCurve& curve) {
    std::string out = "p,trial,length\n";
    for (const auto& e : curve.entries)
        for (std::size_t t = 0; t < e.trial_lengths.size(); ++t)
            out += std::to_string(e.p) + "," + std::to_string(t) + "," +
                   format_double(e.trial_lengths[t]) + "\n";
    return out;
}

inline std::string growth_curve_summary_csv(const GrowthCurve& curve) {
    std::string out = "p,mean,std\n";
    for (const auto& e : curve.entries)
        out += std::to_string(e.p) + "," + format_double(e.mean_length) + "," +
               format_double(e.std_length) + "\n";
    return out;
}

inline void write_growth_curve_trials(const GrowthCurve& curve, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw io_error("cannot write file: " + path);
    out << growth_curve_trials_csv(curve);
    if (!out)
        throw io_error("write failed: " + path);
}

inline void write_growth_curve_summary(const GrowthCurve& curve, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw io_error("cannot write file: " + path);
    out << growth_curve_summary_csv(curve);
    if (!out)
        throw io_error("write failed: " + path);
}

} // namespace gmst
