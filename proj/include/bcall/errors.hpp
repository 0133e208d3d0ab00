#pragma once

#include <stdexcept>
#include <string>

namespace bcall {

// Malformed or inconsistent input data (bad CSV rows, unknown ids, ...).
// CLI maps this to exit code 1.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid configuration (bad flags, impossible parameter combinations).
// CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace bcall
