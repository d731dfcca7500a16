#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gapfill {

struct SizeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ScaleError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct TypeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ModelError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed binary or text input. offset is a byte offset for binary files
// and a 1-based line number for text formats.
struct FormatError : std::runtime_error {
    FormatError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (at " + std::to_string(offset) + ")"), offset(offset) {}
    std::size_t offset;
};

struct ConfigError : std::runtime_error {
    ConfigError(const std::string& key, const std::string& what)
        : std::runtime_error("config key '" + key + "': " + what), key(key) {}
    std::string key;
};

}  // namespace gapfill
