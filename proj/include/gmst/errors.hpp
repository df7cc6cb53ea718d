#pragma once

#include <stdexcept>
#include <string>

namespace gmst {

// Error taxonomy. Each class maps to a distinct CLI exit code:
//   config_error / input_error -> 1, io_error -> 2,
//   disconnected_error -> 3, slope_error -> 4, anything else -> 5.

/// Invalid parameter combination (bad k, gamma <= 0, ...).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed caller input (out-of-range index, repeated index, ...).
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// File access or parse failure.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Operation requires a connected graph / edge matrix.
class disconnected_error : public std::runtime_error {
public:
    explicit disconnected_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Fitted slope outside the invertible range of the growth-rate model.
class slope_error : public std::runtime_error {
public:
    explicit slope_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace gmst
