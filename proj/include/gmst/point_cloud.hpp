#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gmst/errors.hpp"

namespace gmst {

/// n observations in d-dimensional ambient space, stored row-major.
/// Immutable after construction; safe for shared concurrent reads.
class PointCloud {
public:
    PointCloud(std::vector<double> data, std::size_t n, std::size_t d)
        : data_(std::move(data)), n_(n), d_(d) {
        if (n_ < 2)
            throw input_error("point cloud needs at least 2 points, got " + std::to_string(n_));
        if (d_ < 1)
            throw input_error("point cloud needs ambient dimension >= 1");
        if (data_.size() != n_ * d_)
            throw input_error("point cloud storage size does not match n*d");
        for (double v : data_) {
            if (!std::isfinite(v))
                throw input_error("point cloud contains a non-finite coordinate");
        }
    }

    std::size_t size() const { return n_; }
    std::size_t ambient_dim() const { return d_; }

    std::span<const double> point(std::size_t i) const {
        return {data_.data() + i * d_, d_};
    }
    double coord(std::size_t i, std::size_t c) const { return data_[i * d_ + c]; }
    std::span<const double> raw() const { return data_; }

    double distance(std::size_t i, std::size_t j) const {
        const double* a = data_.data() + i * d_;
        const double* b = data_.data() + j * d_;
        double s = 0.0;
        for (std::size_t c = 0; c < d_; ++c) {
            const double t = a[c] - b[c];
            s += t * t;
        }
        return std::sqrt(s);
    }

    /// New cloud holding the given rows, in the given order.
    PointCloud subset(std::span<const std::size_t> indices) const {
        std::vector<double> out;
        out.reserve(indices.size() * d_);
        for (std::size_t i : indices) {
            if (i >= n_)
                throw input_error("subset index out of range: " + std::to_string(i));
            out.insert(out.end(), data_.begin() + i * d_, data_.begin() + (i + 1) * d_);
        }
        return PointCloud(std::move(out), indices.size(), d_);
    }

private:
    std::vector<double> data_;
    std::size_t n_;
    std::size_t d_;
};

namespace detail {

inline bool parse_double(std::string_view field, double& out) {
    // Trim surrounding spaces; from_chars is locale-independent.
    std::size_t b = 0, e = field.size();
    while (b < e && (field[b] == ' ' || field[b] == '\t'))
        ++b;
    while (e > b && (field[e - 1] == ' ' || field[e - 1] == '\t' || field[e - 1] == '\r'))
        --e;
    if (b == e)
        return false;
    const char* first = field.data() + b;
    const char* last = field.data() + e;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

inline std::vector<std::string_view> split_fields(std::string_view line, char delimiter) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delimiter, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

} // namespace detail

/// Reads one point per row. A single leading header row is skipped when its
/// first field is not numeric. Throws io_error naming the offending line on
/// ragged or non-numeric rows.
inline PointCloud load_csv(const std::string& path, char delimiter = ',') {
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open file: " + path);

    std::vector<double> data;
    std::size_t d = 0;
    std::size_t rows = 0;
    std::size_t line_no = 0;
    std::string line;
    bool allow_header = true;

    while (std::getline(in, line)) {
        ++line_no;
        // Skip blank lines (common trailing newline case).
        std::string_view sv(line);
        if (!sv.empty() && sv.back() == '\r')
            sv.remove_suffix(1);
        bool blank = true;
        for (char ch : sv)
            if (ch != ' ' && ch != '\t') {
                blank = false;
                break;
            }
        if (blank)
            continue;

        const auto fields = detail::split_fields(sv, delimiter);
        if (allow_header) {
            allow_header = false;
            double probe;
            if (!detail::parse_double(fields[0], probe))
                continue; // header row
        }
        if (d == 0) {
            d = fields.size();
        } else if (fields.size() != d) {
            throw io_error("ragged row at line " + std::to_string(line_no) + " in " + path +
                           " (expected " + std::to_string(d) + " fields, got " +
                           std::to_string(fields.size()) + ")");
        }
        for (const auto& f : fields) {
            double v;
            if (!detail::parse_double(f, v))
                throw io_error("non-numeric field '" + std::string(f) + "' at line " +
                               std::to_string(line_no) + " in " + path);
            if (!std::isfinite(v))
                throw io_error("non-finite value at line " + std::to_string(line_no) + " in " + path);
            data.push_back(v);
        }
        ++rows;
    }
    if (rows < 2)
        throw io_error("need at least 2 data rows, got " + std::to_string(rows) + " in " + path);
    return PointCloud(std::move(data), rows, d);
}

/// Shortest decimal form that parses back to the same double, so save
/// followed by load preserves coordinates bit for bit.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline void save_csv(const PointCloud& cloud, const std::string& path, char delimiter = ',') {
    std::ofstream out(path);
    if (!out)
        throw io_error("cannot write file: " + path);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        for (std::size_t c = 0; c < cloud.ambient_dim(); ++c) {
            if (c)
                out << delimiter;
            out << format_double(cloud.coord(i, c));
        }
        out << '\n';
    }
    if (!out)
        throw io_error("write failed: " + path);
}

} // namespace gmst
